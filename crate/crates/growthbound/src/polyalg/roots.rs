//! Real-root isolation for integer polynomials: square-free reduction,
//! Descartes' rule of signs with bisection (Vincent–Collins–Akritas), then
//! exact dyadic bisection down to the requested width.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::{gcd_modular, mulmod, powmod};
use super::poly::Poly;
use super::AlgError;

type ZPoly = Poly<BigInt>;

/// Isolating interval `[lo, hi]` for one real root. Either `lo == hi` (an
/// exact rational root) or the polynomial changes sign strictly between the
/// endpoints and has exactly one root there.
#[derive(Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Debug for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", to_decimal(&self.lo, 15), to_decimal(&self.hi, 15))
    }
}

/// Fixed-point rendering, rounded half away from zero.
pub fn to_decimal(q: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10).pow(places as u32);
    let scaled = q * BigRational::from_integer(scale.clone());
    let r = scaled.round().to_integer();
    let neg = r.is_negative();
    let digits = r.abs().to_string();
    let digits = if digits.len() <= places { format!("{}{}", "0".repeat(places + 1 - digits.len()), digits) } else { digits };
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    // scale through a 64-bit window to dodge overflow
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits() as i64 - d.bits() as i64 - 60;
    let v = if shift > 0 {
        (n / (d << shift as u64)).to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    } else {
        ((n << (-shift) as u64) / d).to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    };
    v
}

/// `p / gcd(p, p')`. A modular gcd decides the common case (already
/// square-free) cheaply; otherwise a verified modular gcd is divided out.
pub fn square_free_part(p: &ZPoly) -> ZPoly {
    if p.degree().unwrap_or(0) < 2 {
        return p.clone();
    }
    let dp = p.derivative();
    for &m in &MODULI {
        if modular_coprime(p, &dp, m) == Some(true) {
            return p.clone();
        }
    }
    let g = gcd_modular(p, &dp);
    if g.degree().unwrap_or(0) == 0 {
        p.clone()
    } else {
        p.div_exact(&g)
    }
}

const MODULI: [u64; 3] = [2305843009213693951, 4611686018427387847, 9223372036854775783];

fn reduce(p: &ZPoly, m: u64) -> Vec<u64> {
    let mb = BigInt::from(m);
    let mut v: Vec<u64> = p
        .coeffs()
        .iter()
        .map(|c| {
            let r = c % &mb;
            let r = if r.is_negative() { r + &mb } else { r };
            r.to_u64().unwrap()
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `Some(true)` if `gcd(p, q) = 1` mod `m` and reduction kept both degrees
/// (which then proves coprimality over `Q`). `None` when inconclusive.
fn modular_coprime(p: &ZPoly, q: &ZPoly, m: u64) -> Option<bool> {
    let mut a = reduce(p, m);
    let mut b = reduce(q, m);
    if a.len() != p.coeffs().len() || b.len() != q.coeffs().len() {
        return None;
    }
    while !b.is_empty() {
        // a mod b
        let inv = powmod(*b.last().unwrap(), m - 2, m);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv, m);
            let off = a.len() - b.len();
            for (k, &x) in b.iter().enumerate() {
                a[off + k] = (a[off + k] + m - mulmod(f, x, m)) % m;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.len() == 1 {
        Some(true)
    } else {
        None
    }
}

/// All real roots, ascending, each refined until its width is below
/// `10^-digits`. Multiple roots are reported once.
pub fn real_roots(p: &ZPoly, digits: u32) -> Result<Vec<RootInterval>, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    let mut q = square_free_part(&p.primitive_part());
    let mut out = Vec::new();
    if q.coeff(0).is_zero() {
        out.push(RootInterval { lo: BigRational::zero(), hi: BigRational::zero() });
        q = Poly::new(q.coeffs()[1..].to_vec());
    }
    let mut neg: Vec<RootInterval> = positive_roots(&q.reflect())
        .into_iter()
        .map(|r| RootInterval { lo: -r.hi, hi: -r.lo })
        .collect();
    neg.reverse();
    let pos = positive_roots(&q);
    let mut all: Vec<RootInterval> = neg;
    all.extend(out);
    all.extend(pos);
    // width target 10^-digits, as a power of two
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 1;
    // exact roots can sit on the endpoints of neighbouring intervals; divide
    // them out so that every endpoint of an open interval is a non-root
    let mut deflated = q.clone();
    for r in all.iter().filter(|r| r.is_exact() && !r.lo.is_zero()) {
        let lin = Poly::new(vec![-r.lo.numer().clone(), r.lo.denom().clone()]);
        deflated = deflated.div_exact(&lin);
    }
    Ok(all.into_iter().map(|r| refine(&deflated, r, bits)).collect())
}

/// Largest real root, if any.
pub fn max_real_root(p: &ZPoly, digits: u32) -> Result<Option<RootInterval>, AlgError> {
    Ok(real_roots(p, digits)?.pop())
}

/// Roots in `(0, ∞)` of a square-free `q` with `q(0) != 0`.
fn positive_roots(q: &ZPoly) -> Vec<RootInterval> {
    let Some(n) = q.degree() else { return vec![] };
    if n == 0 || q.sign_variations() == 0 {
        return vec![];
    }
    // all roots have |x| < 2^k (Cauchy)
    let lc = q.lc().abs();
    let mx = q.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let ratio_bits = mx.bits() as i64 - lc.bits() as i64 + 2;
    let k = ratio_bits.max(1) as u64;
    let scaled = q.scale_arg_pow2_up(k);
    let mut found = Vec::new();
    vca(&scaled, BigInt::zero(), 0, &mut found);
    let s = BigRational::from_integer(BigInt::one() << k);
    let mut v: Vec<RootInterval> = found.into_iter().map(|r| RootInterval { lo: &r.lo * &s, hi: &r.hi * &s }).collect();
    v.sort_by(|a, b| a.lo.cmp(&b.lo));
    v
}

/// Roots of `p` in `(0, 1)`, where `p(x)` stands for the original on the
/// interval `((a + x) / 2^l)`.
fn vca(p: &ZPoly, a: BigInt, l: u64, out: &mut Vec<RootInterval>) {
    let v = p.reverse().taylor_shift_one().sign_variations();
    if v == 0 {
        return;
    }
    let den = BigRational::from_integer(BigInt::one() << l);
    if v == 1 {
        out.push(RootInterval {
            lo: BigRational::from_integer(a.clone()) / &den,
            hi: BigRational::from_integer(&a + 1) / &den,
        });
        return;
    }
    let left = p.scale_arg_pow2_down(1);
    let right = left.taylor_shift_one();
    if right.coeff(0).is_zero() {
        let m = BigRational::from_integer(2 * &a + 1) / BigRational::from_integer(BigInt::one() << (l + 1));
        out.push(RootInterval { lo: m.clone(), hi: m });
    }
    vca(&left, 2 * &a, l + 1, out);
    let right = if right.coeff(0).is_zero() { Poly::new(right.coeffs()[1..].to_vec()) } else { right };
    vca(&right, 2 * &a + 1, l + 1, out);
}

fn sign_at(p: &ZPoly, x: &BigRational) -> i8 {
    let v = p.eval_rational(x);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn refine(p: &ZPoly, mut r: RootInterval, bits: u64) -> RootInterval {
    if r.is_exact() {
        return r;
    }
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut slo = sign_at(p, &r.lo);
    if slo == 0 {
        return RootInterval { lo: r.lo.clone(), hi: r.lo };
    }
    if sign_at(p, &r.hi) == 0 {
        return RootInterval { lo: r.hi.clone(), hi: r.hi };
    }
    while r.width() >= target {
        let m = r.midpoint();
        let sm = dyadic_sign(p, &m).unwrap_or_else(|| sign_at(p, &m));
        if sm == 0 {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if sm == slo {
            r.lo = m;
            slo = sm;
        } else {
            r.hi = m;
        }
    }
    r
}

/// Fast sign for dyadic rationals, avoiding rational arithmetic.
fn dyadic_sign(p: &ZPoly, x: &BigRational) -> Option<i8> {
    let d = x.denom();
    if d.is_zero() || (d & (d - BigInt::one())) != BigInt::zero() {
        return None;
    }
    let k = d.bits() - 1;
    Some(p.sign_at_dyadic(x.numer(), k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn quadratic() {
        let p = ZPoly::from_i64s(&[1, -4, -4]);
        let r = real_roots(&p, 20).unwrap();
        assert_eq!(r.len(), 2);
        let top = rational_to_f64(&r[1].midpoint());
        assert!((top - (2f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        let bot = rational_to_f64(&r[0].midpoint());
        assert!((bot + (1.0 + 2f64.sqrt()) / 2.0).abs() < 1e-15);
        for ri in &r {
            assert!(sign_at(&p, &ri.lo) * sign_at(&p, &ri.hi) < 0);
        }
    }

    #[test]
    fn no_and_double_roots() {
        assert!(real_roots(&ZPoly::from_i64s(&[1, 0, 1]), 10).unwrap().is_empty());
        let r = real_roots(&ZPoly::from_i64s(&[1, -2, 1]), 10).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].lo <= q(1, 1) && q(1, 1) <= r[0].hi);
        assert!(real_roots(&ZPoly::zero(), 10).is_err());
    }

    #[test]
    fn exact_and_clustered() {
        // (x)(2x - 1)(x + 3)(x - 1/1024)
        let p = &(&ZPoly::from_i64s(&[0, 1]) * &ZPoly::from_i64s(&[-1, 2])) * &(&ZPoly::from_i64s(&[3, 1]) * &ZPoly::from_i64s(&[-1, 1024]));
        let r = real_roots(&p, 12).unwrap();
        assert_eq!(r.len(), 4, "{r:?}");
        assert!(r[0].lo <= q(-3, 1) && q(-3, 1) <= r[0].hi);
        assert!(r[1].is_exact() && r[1].lo.is_zero());
        assert!(r[2].lo <= q(1, 1024) && q(1, 1024) <= r[2].hi, "{r:?}");
        assert!(r[3].lo <= q(1, 2) && q(1, 2) <= r[3].hi);
    }

    #[test]
    fn decimal_render() {
        assert_eq!(to_decimal(&q(27, 4), 9), "6.750000000");
        assert_eq!(to_decimal(&q(-1, 3), 3), "-0.333");
        assert_eq!(to_decimal(&q(2, 3), 0), "1");
        assert_eq!(to_decimal(&q(1, 200), 2), "0.01");
    }
}
