//! Word-sized prime field arithmetic and the multi-modular discriminant.
//!
//! The exact subresultant route is quadratic in coefficient size and too
//! slow once the weight polynomial has a few hundred terms. Here `D(s, z)`
//! is reduced modulo 61–62 bit primes, specialised at enough points `z`,
//! the resultant in `s` taken by the Euclidean algorithm over `F_p`, then
//! interpolated and lifted by Chinese remaindering. The number of primes is
//! chosen from a Hadamard-type bound, so the lift is exact, not heuristic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::spoly::SPoly;

type ZPoly = Poly<BigInt>;

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

fn inv(a: u64, m: u64) -> u64 {
    powmod(a, m - 2, m)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, descending.
pub fn primes_below_2_62() -> impl Iterator<Item = u64> {
    ((1u64 << 61) + 1..(1u64 << 62)).rev().step_by(2).filter(|&n| is_prime_u64(n))
}

pub(crate) fn reduce(v: &BigInt, m: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `a mod b` over `F_m`; `b` must be trimmed and nonzero.
fn rem_mod(mut a: Vec<u64>, b: &[u64], m: u64) -> Vec<u64> {
    let li = inv(*b.last().unwrap(), m);
    while a.len() >= b.len() {
        let f = mulmod(*a.last().unwrap(), li, m);
        let off = a.len() - b.len();
        for (k, &x) in b.iter().enumerate() {
            a[off + k] = (a[off + k] + m - mulmod(f, x, m)) % m;
        }
        trim(&mut a);
    }
    a
}

/// Resultant over `F_m` of two trimmed, nonzero polynomials, by the
/// Euclidean algorithm.
pub fn resultant_mod(a: &[u64], b: &[u64], m: u64) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut acc = 1u64;
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return mulmod(acc, powmod(b[0], da as u64, m), m);
        }
        let r = rem_mod(a.clone(), &b, m);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        acc = mulmod(acc, powmod(*b.last().unwrap(), (da - dr) as u64, m), m);
        if da % 2 == 1 && db % 2 == 1 {
            acc = (m - acc) % m;
        }
        a = b;
        b = r;
    }
}

/// Newton interpolation over `F_m`; the points must be distinct mod `m`.
fn interpolate_mod(xs: &[u64], ys: &[u64], m: u64) -> Vec<u64> {
    let n = ys.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let step = inv((xs[i] + m - xs[i - j] % m) % m, m);
            dd[i] = mulmod((dd[i] + m - dd[i - 1]) % m, step, m);
        }
    }
    // Horner in the Newton basis: acc = acc * (z - x_i) + dd[i]
    let mut acc: Vec<u64> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let mut next = vec![0u64; acc.len() + 1];
        for (k, &c) in acc.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % m;
            next[k] = (next[k] + m - mulmod(c, xs[i] % m, m)) % m;
        }
        next[0] = (next[0] + dd[i]) % m;
        acc = next;
    }
    acc
}

fn l1_bits(p: &ZPoly) -> u64 {
    let s: BigInt = p.coeffs().iter().map(|c| c.abs()).sum();
    s.bits()
}

/// `Res_s(D, ∂D/∂s)` as a polynomial in `z`, by evaluation, interpolation
/// and Chinese remaindering.
pub fn resultant_with_derivative_modular(d: &SPoly) -> ZPoly {
    let p = &d.coeffs;
    let dp = p.derivative();
    let n = p.degree().expect("nonzero");
    let dz = d.degree_z();
    let npts = (2 * n - 1) * dz + 1;

    // every Sylvester row is a shift of p or p'; the 1-norm of the
    // determinant is at most the product of the rows' 1-norms
    let row = |q: &Poly<ZPoly>| -> u64 { l1_bits(&q.coeffs().iter().fold(ZPoly::zero(), |acc, c| &acc + &c.map(|v| v.abs()))) };
    let bound_bits = (n as u64 - 1) * row(p) + n as u64 * row(&dp) + 2;

    let lc = p.lc();
    let lc_d = dp.lc();
    // positive integers where the leading coefficient survives over Z
    let xs: Vec<u64> = (1u64..).filter(|&z| !lc.eval(&BigInt::from(z)).is_zero()).take(npts).collect();
    let mut modulus = BigInt::one();
    let mut lifted: Vec<BigInt> = vec![BigInt::zero(); npts];
    for m in primes_below_2_62() {
        if modulus.bits() > bound_bits {
            break;
        }
        // the specialisation must keep both degrees in s
        let ok = xs.iter().all(|&z| {
            let zb = BigInt::from(z);
            reduce(&lc.eval(&zb), m) != 0 && reduce(&lc_d.eval(&zb), m) != 0
        });
        if !ok {
            continue;
        }
        let reduced: Vec<Vec<u64>> = p.coeffs().iter().map(|c| c.coeffs().iter().map(|v| reduce(v, m)).collect()).collect();
        let reduced_d: Vec<Vec<u64>> = dp.coeffs().iter().map(|c| c.coeffs().iter().map(|v| reduce(v, m)).collect()).collect();
        let eval = |cs: &[u64], z: u64| cs.iter().rev().fold(0u64, |acc, &c| (mulmod(acc, z, m) + c) % m);
        let ys: Vec<u64> = xs
            .iter()
            .map(|&z| {
                let a: Vec<u64> = reduced.iter().map(|c| eval(c, z)).collect();
                let b: Vec<u64> = reduced_d.iter().map(|c| eval(c, z)).collect();
                resultant_mod(&a, &b, m)
            })
            .collect();
        let coeffs = interpolate_mod(&xs, &ys, m);
        // CRT: x ≡ lifted (mod modulus), x ≡ c (mod m)
        let mb = BigInt::from(m);
        let minv = BigInt::from(inv(reduce(&modulus, m), m));
        for (k, c) in coeffs.iter().enumerate() {
            let cur = reduce(&lifted[k], m);
            let t = ((BigInt::from(*c) - BigInt::from(cur)) * &minv).mod_floor(&mb);
            lifted[k] = &lifted[k] + t * &modulus;
        }
        modulus *= mb;
    }
    let half = &modulus >> 1u32;
    Poly::new(lifted.into_iter().map(|c| if c > half { c - &modulus } else { c }).collect())
}

fn gcd_mod(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem_mod(a, &b, m);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let li = inv(l, m);
        for c in a.iter_mut() {
            *c = mulmod(*c, li, m);
        }
    }
    a
}

/// Greatest common divisor over `Z`, primitive with positive leading
/// coefficient, by modular images and Chinese remaindering. Each candidate
/// is accepted only after exact trial division of both inputs, so the
/// result never depends on a lucky choice of primes.
pub fn gcd_modular(p: &ZPoly, q: &ZPoly) -> ZPoly {
    let (Some(_), Some(_)) = (p.degree(), q.degree()) else {
        let r = if p.is_zero() { q.primitive_part() } else { p.primitive_part() };
        return if r.is_zero() || !r.lc().is_negative() { r } else { -r };
    };
    let p = p.primitive_part();
    let q = q.primitive_part();
    let lc_g = p.lc().gcd(&q.lc());
    let mut best: Option<usize> = None;
    let mut modulus = BigInt::one();
    let mut lifted: Vec<BigInt> = Vec::new();
    for m in primes_below_2_62() {
        let l = reduce(&lc_g, m);
        if l == 0 || reduce(&p.lc(), m) == 0 || reduce(&q.lc(), m) == 0 {
            continue;
        }
        let pm: Vec<u64> = p.coeffs().iter().map(|c| reduce(c, m)).collect();
        let qm: Vec<u64> = q.coeffs().iter().map(|c| reduce(c, m)).collect();
        let g: Vec<u64> = gcd_mod(&pm, &qm, m).into_iter().map(|c| mulmod(c, l, m)).collect();
        let dg = g.len() - 1;
        if dg == 0 {
            return ZPoly::constant(BigInt::one());
        }
        match best {
            Some(d) if dg > d => continue, // unlucky prime
            Some(d) if dg == d => {}
            _ => {
                best = Some(dg);
                modulus = BigInt::one();
                lifted = vec![BigInt::zero(); dg + 1];
            }
        }
        let mb = BigInt::from(m);
        let minv = BigInt::from(inv(reduce(&modulus, m), m));
        for (k, c) in g.iter().enumerate() {
            let cur = reduce(&lifted[k], m);
            let t = ((BigInt::from(*c) - BigInt::from(cur)) * &minv).mod_floor(&mb);
            lifted[k] = &lifted[k] + t * &modulus;
        }
        modulus *= mb;
        let half = &modulus >> 1u32;
        let cand = Poly::new(lifted.iter().map(|c| if c > &half { c - &modulus } else { c.clone() }).collect::<Vec<_>>());
        let cand = cand.primitive_part();
        if cand.degree() == best && divides(&cand, &p) && divides(&cand, &q) {
            return if cand.lc().is_negative() { -cand } else { cand };
        }
    }
    unreachable!("prime supply exhausted")
}

fn divides(d: &ZPoly, p: &ZPoly) -> bool {
    // cheap leading and trailing coefficient screens before the full division
    if !(p.lc() % d.lc()).is_zero() {
        return false;
    }
    let (d0, p0) = (d.coeff(0), p.coeff(0));
    if !d0.is_zero() && !(p0 % &d0).is_zero() {
        return false;
    }
    let (_, r) = p.div_rem_integral(d);
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::spoly::resultant;

    #[test]
    fn primes() {
        assert!(is_prime_u64(2305843009213693951));
        assert!(!is_prime_u64(2305843009213693953));
        assert!(is_prime_u64(97) && !is_prime_u64(91) && !is_prime_u64(1));
        let first: Vec<u64> = primes_below_2_62().take(3).collect();
        assert!(first.windows(2).all(|w| w[0] > w[1]));
        assert!(first.iter().all(|&p| p > 1 << 61));
    }

    #[test]
    fn resultant_mod_matches_exact() {
        let a = ZPoly::from_i64s(&[3, -1, 4, 1, -5]);
        let b = ZPoly::from_i64s(&[9, 2, -6]);
        let m = 1_000_000_007;
        let r = |p: &ZPoly| p.coeffs().iter().map(|c| reduce(c, m)).collect::<Vec<_>>();
        assert_eq!(resultant_mod(&r(&a), &r(&b), m), reduce(&resultant(&a, &b), m));
        assert_eq!(resultant_mod(&r(&b), &r(&a), m), reduce(&resultant(&b, &a), m));
    }

    #[test]
    fn modular_gcd() {
        let f = ZPoly::from_i64s(&[-3, 0, 2]);
        let g = ZPoly::from_i64s(&[5, 7, -1, 3]);
        let h = ZPoly::from_i64s(&[1, 1]);
        let a = &(&f * &f) * &h;
        let b = &(&f * &g) * &ZPoly::from_i64s(&[6]);
        assert_eq!(gcd_modular(&a, &b), f);
        assert_eq!(gcd_modular(&g, &h).degree(), Some(0));
        assert_eq!(gcd_modular(&a, &a.derivative()), f);
    }

    #[test]
    fn interpolation_round_trip() {
        let m = 1_000_000_007;
        let want = [5u64, 0, 7, 1];
        let xs = [1u64, 2, 4, 9];
        let ys: Vec<u64> = xs.iter().map(|&z| want.iter().rev().fold(0, |a, &c| (a * z + c) % m)).collect();
        assert_eq!(interpolate_mod(&xs, &ys, m), want);
    }
}
