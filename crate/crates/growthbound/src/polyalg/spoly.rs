//! Polynomials in `s` over `Z[z]`, resultants and discriminants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::bipoly::BiPoly;
use super::modular::resultant_with_derivative_modular;
use super::poly::{ExactDiv, Poly, Ring};
use super::AlgError;

pub type ZPoly = Poly<BigInt>;

/// `Σ_k coeffs[k](z) s^k`, stored primitive; `content` is the integer
/// factor that was divided out.
#[derive(Clone, Debug, PartialEq)]
pub struct SPoly {
    pub coeffs: Poly<ZPoly>,
    pub content: BigInt,
}

impl SPoly {
    pub fn degree_s(&self) -> usize {
        self.coeffs.degree().unwrap_or(0)
    }

    pub fn degree_z(&self) -> usize {
        self.coeffs.coeffs().iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    /// Specialise `z`.
    pub fn at(&self, z: &BigInt) -> ZPoly {
        Poly::new(self.coeffs.coeffs().iter().map(|c| c.eval(z)).collect())
    }
}

/// `D(s, z) = s (1 − W(s, z/s)) = s − Σ c_{a,b} z^b s^{a−b+1}`.
pub fn clear_denominator(w: &BiPoly) -> Result<SPoly, AlgError> {
    let mut dense: Vec<Vec<BigInt>> = vec![vec![BigInt::zero()]; 2];
    dense[1][0] = BigInt::one();
    for (a, b, c) in w.terms() {
        if a + 1 < b {
            return Err(AlgError::MalformedWeight { a, b });
        }
        let k = (a + 1 - b) as usize;
        if dense.len() <= k {
            dense.resize(k + 1, vec![BigInt::zero()]);
        }
        let row = &mut dense[k];
        if row.len() <= b as usize {
            row.resize(b as usize + 1, BigInt::zero());
        }
        row[b as usize] -= c;
    }
    let coeffs: Poly<ZPoly> = Poly::new(dense.into_iter().map(Poly::new).collect());
    let content = coeffs.coeffs().iter().flat_map(|c| c.coeffs().iter()).fold(BigInt::zero(), |g, x| g.gcd(x));
    let content = if content.is_zero() { BigInt::one() } else { content };
    let coeffs = if content.is_one() { coeffs } else { coeffs.map(|c| c.div_scalar(&content)) };
    if coeffs.degree().unwrap_or(0) < 1 {
        return Err(AlgError::Degenerate);
    }
    Ok(SPoly { coeffs, content })
}

fn pow<T: Ring>(x: &T, e: usize) -> T {
    let mut r = T::one();
    for _ in 0..e {
        r = r * x.clone();
    }
    r
}

/// Resultant by the subresultant PRS (fraction-free; every division is
/// exact).
pub fn resultant<T: ExactDiv>(a: &Poly<T>, b: &Poly<T>) -> T {
    let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else { return T::zero() };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut neg = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        neg = da % 2 == 1 && db % 2 == 1;
    }
    if db == 0 {
        let r = pow(&b.lc(), da);
        return if neg { -r } else { r };
    }
    let mut g = T::one();
    let mut h = T::one();
    loop {
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            neg = !neg;
        }
        let r = a.prem(&b);
        let Some(dr) = r.degree() else { return T::zero() };
        let div = g.clone() * pow(&h, delta);
        a = b;
        b = r.map(|c| c.exact_div(&div));
        g = a.lc();
        h = if delta == 0 { h } else { pow(&g, delta).exact_div(&pow(&h, delta - 1)) };
        da = db;
        db = dr;
        if db == 0 {
            break;
        }
    }
    let r = if da == 1 { b.lc() } else { pow(&b.lc(), da).exact_div(&pow(&h, da - 1)) };
    if neg {
        -r
    } else {
        r
    }
}

/// `(−1)^{n(n−1)/2} Res(p, p') / lc(p)`.
pub fn discriminant<T: ExactDiv>(p: &Poly<T>) -> T {
    let n = p.degree().expect("discriminant of zero");
    let r = resultant(p, &p.derivative()).exact_div(&p.lc());
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Discriminant of `D(s, z)` with respect to `s`, as a primitive integer
/// polynomial in `z` with positive leading coefficient. Only the zero set
/// matters downstream, so the content is dropped. Computed multi-modularly.
pub fn discriminant_in_s(d: &SPoly) -> Result<ZPoly, AlgError> {
    if d.degree_s() < 2 {
        return Err(AlgError::Degenerate);
    }
    let res = resultant_with_derivative_modular(d);
    Ok(normalise(res.div_exact(&d.coeffs.lc())))
}

/// Same as [`discriminant_in_s`] by the subresultant PRS over `Z[z]`.
/// Exact and independent, but slow for large inputs.
pub fn discriminant_in_s_prs(d: &SPoly) -> Result<ZPoly, AlgError> {
    if d.degree_s() < 2 {
        return Err(AlgError::Degenerate);
    }
    Ok(normalise(discriminant(&d.coeffs)))
}

fn normalise(p: ZPoly) -> ZPoly {
    if p.is_zero() {
        return p;
    }
    let p = p.primitive_part();
    if p.lc().is_negative() {
        -p
    } else {
        p
    }
}

/// Sylvester matrix of `a` (degree m) and `b` (degree n), size m+n.
pub fn sylvester<T: Ring>(a: &Poly<T>, b: &Poly<T>) -> Vec<Vec<T>> {
    let m = a.degree().expect("nonzero");
    let n = b.degree().expect("nonzero");
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, deg, copies) in [(a, m, n), (b, n, m)] {
        for r in 0..copies {
            let mut row = vec![T::zero(); size];
            for k in 0..=deg {
                row[r + k] = p.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    rows
}

/// Fraction-free Gaussian elimination (Bareiss) determinant.
pub fn det_bareiss<T: ExactDiv>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else { return T::zero() };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Second, independent route to `discriminant_in_s`: specialise `z` at
/// integer points, take Sylvester determinants over `Z`, interpolate.
pub fn discriminant_in_s_interpolated(d: &SPoly) -> Result<ZPoly, AlgError> {
    let n = d.degree_s();
    if n < 2 {
        return Err(AlgError::Degenerate);
    }
    let bound = (2 * n - 1) * d.degree_z();
    let lc = d.coeffs.lc();
    let sign_flip = (n * (n - 1) / 2) % 2 == 1;
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while xs.len() <= bound {
        // 0, 1, -1, 2, -2, ...
        let z = BigInt::from(if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 });
        k += 1;
        let l = lc.eval(&z);
        if l.is_zero() {
            continue;
        }
        let p = d.at(&z);
        let r = det_bareiss(sylvester(&p, &p.derivative()));
        let v = r.exact_div(&l);
        ys.push(if sign_flip { -v } else { v });
        xs.push(z);
    }
    Ok(normalise(interpolate(&xs, &ys)?))
}

/// Newton interpolation over `Q`; fails if the result is not integral.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Result<ZPoly, AlgError> {
    let q = |v: &BigInt| BigRational::from_integer(v.clone());
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(q).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / q(&(&xs[i] - &xs[i - j]));
        }
    }
    let mut acc: Poly<BigRational> = Poly::zero();
    for i in (0..n).rev() {
        acc = &acc * &Poly::new(vec![-q(&xs[i]), BigRational::one()]) + Poly::constant(dd[i].clone());
    }
    let mut out = Vec::with_capacity(n);
    for c in acc.into_coeffs() {
        if !c.is_integer() {
            return Err(AlgError::NonIntegral);
        }
        out.push(c.to_integer());
    }
    Ok(Poly::new(out))
}
