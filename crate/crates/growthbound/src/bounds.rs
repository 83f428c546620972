//! Numeric bounds on the growth constant λ_d.
//!
//! Values are exact rationals where the bound is rational, and rational
//! approximations good to well past 30 digits otherwise, unless the method is
//! an estimate computed in floating point (ratio and lower-bound utilities).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::polyalg::{
    clear_denominator, discriminant_in_s, max_real_root, real_roots, series_diagonal, to_decimal, AlgError, BiPoly,
    RootInterval, ZPoly,
};

/// Digits carried internally by the irrational closed forms.
pub const INTERNAL_DIGITS: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Upper,
    Lower,
    Estimate,
}

impl Direction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
            Direction::Estimate => "estimate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Eden,
    Closed2d,
    MultinomialB,
    GeneralD,
    DiagonalRadius,
    RatioEstimate,
    LowerCount,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Eden => "eden",
            Method::Closed2d => "closed2d",
            Method::MultinomialB => "multinomial_b",
            Method::GeneralD => "general_d",
            Method::DiagonalRadius => "diagonal_radius",
            Method::RatioEstimate => "ratio_estimate",
            Method::LowerCount => "lower_count",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// The value is the exact rational itself.
    Exact,
    /// The value is the root of `poly` inside `root`.
    Algebraic { poly: ZPoly, root: RootInterval },
    /// `1 / z*` where `z*` is the largest real root of `disc`.
    Discriminant { disc: ZPoly, root: RootInterval },
    /// Minimiser `b₀` and minimum `f(b₀)` of the reweighted series.
    Minimizer { b0: BigRational, f_b0: BigRational },
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundResult {
    pub value: BigRational,
    pub direction: Direction,
    pub method: Method,
    pub d: usize,
    /// Level `i` (diagonal bound) or size `n` (lower bound, ratio estimate).
    pub param: Option<usize>,
    pub certificate: Certificate,
}

impl BoundResult {
    pub fn to_f64(&self) -> f64 {
        crate::polyalg::roots::rational_to_f64(&self.value)
    }

    /// Fixed-point rendering (9 places is what the tables use).
    pub fn render(&self, places: usize) -> String {
        to_decimal(&self.value, places)
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {}, d={})", self.render(9), self.method.as_str(), self.direction.as_str(), self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("dimension {0} out of range for this method")]
    Dimension(usize),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("discriminant has no positive real root")]
    NoRealRoot,
    #[error("{0}")]
    Precondition(&'static str),
}

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn binom(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for j in 0..k {
        r = r * (n - j) / (j + 1);
    }
    r
}

/// `(2d−1)^{2d−1} / (2d−2)^{2d−2}`, exact.
pub fn eden_bound(d: usize) -> Result<BoundResult, BoundError> {
    if d < 2 {
        return Err(BoundError::Dimension(d));
    }
    let m = 2 * d as u32;
    let value = BigRational::new(BigInt::from(m - 1).pow(m - 1), BigInt::from(m - 2).pow(m - 2));
    Ok(BoundResult { value, direction: Direction::Upper, method: Method::Eden, d, param: None, certificate: Certificate::Exact })
}

/// `2 (1 + √2)`, the positive root of `x² − 4x − 4`.
pub fn closed_form_2d() -> BoundResult {
    let poly = ZPoly::from_i64s(&[-4, -4, 1]);
    let root = real_roots(&poly, INTERNAL_DIGITS).expect("nonzero").pop().expect("two real roots");
    BoundResult {
        value: root.midpoint(),
        direction: Direction::Upper,
        method: Method::Closed2d,
        d: 2,
        param: None,
        certificate: Certificate::Algebraic { poly, root },
    }
}

/// `y ((x + 1)^{2(d−1)} + x²)`.
pub fn general_weight_formula(d: usize) -> Result<BiPoly, BoundError> {
    if d < 2 {
        return Err(BoundError::Dimension(d));
    }
    let a = 2 * (d as u64 - 1);
    let mut w = BiPoly::zero();
    for k in 0..=a {
        w.add_term(k as u32, 1, binom(a, k));
    }
    w.add_term(2, 1, BigInt::one());
    Ok(w)
}

/// Coefficients `k_j` (`j = 2..=a`) of the reweighted series
/// `f_d(b) = 1/b + 1 + Σ_j k_j b^{j−1}`, with `a = 2(d−1)`.
fn multinomial_coeffs(d: usize) -> Vec<(u32, BigRational)> {
    let a = 2 * (d as u64 - 1);
    let aa = BigInt::from(a);
    (2..=a)
        .map(|j| {
            let mut num = binom(a, j);
            if j == 2 {
                num += 1; // the extra x² twig
            }
            (j as u32, BigRational::new(num, aa.pow(j as u32)))
        })
        .collect()
}

/// `f_d(b)` evaluated exactly.
pub fn multinomial_f(d: usize, b: &BigRational) -> BigRational {
    let mut f = b.recip() + BigRational::one();
    for (j, k) in multinomial_coeffs(d) {
        f += k * b.pow(j as i32 - 1);
    }
    f
}

/// `f_d(b)` in any float type, for quick looks and plotting.
pub fn multinomial_f_float<T: Float>(d: usize, b: T) -> T {
    let mut f = T::one() / b + T::one();
    for (j, k) in multinomial_coeffs(d) {
        let k = T::from(crate::polyalg::roots::rational_to_f64(&k)).unwrap();
        f = f + k * b.powi(j as i32 - 1);
    }
    f
}

/// `a · min_{b>0} f_d(b)`, `a = 2(d−1)`. `f_d` is strictly convex on
/// `b > 0`; the minimiser is the unique positive root of
/// `b² f_d'(b) = −1 + Σ (j−1) k_j b^j`, isolated exactly.
pub fn multinomial_bound(d: usize) -> Result<BoundResult, BoundError> {
    if d < 3 {
        return Err(BoundError::Dimension(d));
    }
    let a = 2 * (d as u32 - 1);
    let scale = BigInt::from(a).pow(a);
    let coeffs = multinomial_coeffs(d);
    let mut dense = vec![BigInt::zero(); a as usize + 1];
    dense[0] = -scale.clone();
    for (j, k) in &coeffs {
        let c = k * q(scale.clone()) * q(*j as i64 - 1);
        debug_assert!(c.is_integer());
        dense[*j as usize] = c.to_integer();
    }
    let deriv = ZPoly::new(dense);
    let root = max_real_root(&deriv, INTERNAL_DIGITS)?.ok_or(BoundError::NoRealRoot)?;
    if !root.lo.is_positive() {
        return Err(BoundError::NoRealRoot);
    }
    let b0 = root.midpoint();
    let f_b0 = multinomial_f(d, &b0);
    Ok(BoundResult {
        value: &f_b0 * q(a),
        direction: Direction::Upper,
        method: Method::MultinomialB,
        d,
        param: None,
        certificate: Certificate::Minimizer { b0, f_b0 },
    })
}

/// `e` to well beyond `INTERNAL_DIGITS`, as a rational partial sum.
pub fn e_approx() -> BigRational {
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 1..60u32 {
        sum += &term;
        term /= q(k);
    }
    sum
}

/// `(2d−2) e + 1/(2d−2)`.
pub fn general_bound(d: usize) -> Result<BoundResult, BoundError> {
    if d < 2 {
        return Err(BoundError::Dimension(d));
    }
    let m = q(2 * d as i64 - 2);
    let value = e_approx() * &m + m.recip();
    Ok(BoundResult { value, direction: Direction::Upper, method: Method::GeneralD, d, param: None, certificate: Certificate::None })
}

/// `1/σ`: the reciprocal of the largest real root of the discriminant in
/// `s` of the cleared denominator of `x / (1 − W)`.
pub fn diagonal_radius_bound(w: &BiPoly, d: usize, i: Option<usize>, digits: u32) -> Result<BoundResult, BoundError> {
    if !w.all_positive() {
        return Err(BoundError::Precondition("weight polynomial must have positive coefficients"));
    }
    let cleared = clear_denominator(w)?;
    let disc = discriminant_in_s(&cleared)?;
    let root = max_real_root(&disc, digits.max(12) + 6)?.ok_or(BoundError::NoRealRoot)?;
    if !root.lo.is_positive() {
        return Err(BoundError::NoRealRoot);
    }
    Ok(BoundResult {
        value: root.midpoint().recip(),
        direction: Direction::Upper,
        method: Method::DiagonalRadius,
        d,
        param: i,
        certificate: Certificate::Discriminant { disc, root },
    })
}

fn ln_big(v: &BigInt) -> f64 {
    let bits = v.bits();
    let shift = bits.saturating_sub(60);
    let top = (v >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `c(N, N)^{1/N}` from the diagonal series. An estimate, not a bound.
pub fn ratio_estimate(w: &BiPoly, d: usize, n: usize) -> Result<BoundResult, BoundError> {
    if n < 10 {
        return Err(BoundError::Precondition("ratio estimate needs N >= 10"));
    }
    let diag = series_diagonal(w, n)?;
    let c = &diag[n];
    if !c.is_positive() {
        return Err(BoundError::Precondition("diagonal coefficient vanishes"));
    }
    let v = (ln_big(c) / n as f64).exp();
    Ok(BoundResult {
        value: BigRational::from_float(v).unwrap(),
        direction: Direction::Estimate,
        method: Method::RatioEstimate,
        d,
        param: Some(n),
        certificate: Certificate::None,
    })
}

/// `(d · A)^{1/n}` for a count `A = A_d(n)`.
pub fn lower_bound_from_count(d: usize, n: usize, count: &BigInt) -> Result<BoundResult, BoundError> {
    if n < 1 || !count.is_positive() || d < 1 {
        return Err(BoundError::Precondition("lower bound needs d, n, A > 0"));
    }
    let v = (ln_big(&(count * BigInt::from(d))) / n as f64).exp();
    Ok(BoundResult {
        value: BigRational::from_float(v).unwrap(),
        direction: Direction::Lower,
        method: Method::LowerCount,
        d,
        param: Some(n),
        certificate: Certificate::None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eden() {
        assert_eq!(eden_bound(2).unwrap().value, BigRational::new(27.into(), 4.into()));
        assert_eq!(eden_bound(3).unwrap().value, BigRational::new(3125.into(), 256.into()));
        assert!(eden_bound(1).is_err());
    }

    #[test]
    fn closed2d_is_root_of_quadratic() {
        let v = closed_form_2d();
        assert_eq!(v.render(9), "4.828427125");
        let x = &v.value;
        let r = x * x - q(4) * x - q(4);
        assert!(r.abs() < BigRational::new(1.into(), BigInt::from(10).pow(35)));
    }

    #[test]
    fn weight_formula() {
        assert_eq!(general_weight_formula(2).unwrap().to_string(), "2*x^2*y + 2*x*y + y");
        assert_eq!(general_weight_formula(3).unwrap().to_string(), "x^4*y + 4*x^3*y + 7*x^2*y + 4*x*y + y");
        for d in 2..8 {
            assert_eq!(general_weight_formula(d).unwrap().eval_one(), BigInt::from((1u64 << (2 * (d - 1))) + 1));
        }
    }

    #[test]
    fn multinomial_at_one() {
        assert_eq!(multinomial_f(3, &BigRational::one()) * q(4), BigRational::new(641.into(), 64.into()));
        let fl = multinomial_f_float(3, 1.0f64) * 4.0;
        assert!((fl - 641.0 / 64.0).abs() < 1e-12);
        assert!((multinomial_f_float(3, 1.0f32) * 4.0 - 10.015625).abs() < 1e-5);
    }

    #[test]
    fn general() {
        assert!((general_bound(3).unwrap().to_f64() - (4.0 * std::f64::consts::E + 0.25)).abs() < 1e-12);
        for d in 2..=10 {
            let g = general_bound(d).unwrap().to_f64();
            assert!(g < (2 * d - 1) as f64 * std::f64::consts::E);
        }
    }
}
