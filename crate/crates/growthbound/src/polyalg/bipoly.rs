//! Sparse bivariate integer polynomials in `x, y` and the diagonal of
//! `x / (1 − W(x, y))`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::AlgError;

/// `Σ c · x^a y^b`; keys are `(b, a)` so iteration runs by `y`-degree first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    /// `c x^a y^b`
    pub fn monomial(a: u32, b: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c.into());
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (u32, u32, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (a, b, c) in it {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((b, a)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(b, a));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^a y^b`.
    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.terms.get(&(b, a)).cloned().unwrap_or_default()
    }

    /// `(a, b, c)` in canonical order: by `y`-degree, then `x`-degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(b, a), c)| (a, b, c))
    }

    pub fn max_deg_x(&self) -> u32 {
        self.terms().map(|t| t.0).max().unwrap_or(0)
    }

    pub fn max_deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Drop terms with `deg_x > nx` or `deg_y > ny`.
    pub fn truncate(&self, nx: u32, ny: u32) -> Self {
        BiPoly { terms: self.terms.iter().filter(|(k, _)| k.1 <= nx && k.0 <= ny).map(|(k, c)| (*k, c.clone())).collect() }
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms().map(|(a, b, c)| c * x.pow(a) * y.pow(b)).sum()
    }

    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// The part of degree exactly `b` in `y`, as dense coefficients in `x`.
    pub fn y_slice(&self, b: u32) -> Vec<(u32, BigInt)> {
        self.terms.range((b, 0)..=(b, u32::MAX)).map(|(&(_, a), c)| (a, c.clone())).collect()
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (a, b, c) in o.terms() {
            r.add_term(a, b, c.clone());
        }
        r
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in o.terms() {
                r.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        r
    }
}

pub fn bipoly_add(p: &BiPoly, q: &BiPoly) -> BiPoly {
    p + q
}

pub fn bipoly_mul(p: &BiPoly, q: &BiPoly) -> BiPoly {
    p * q
}

pub fn bipoly_truncate(p: &BiPoly, nx: u32, ny: u32) -> BiPoly {
    p.truncate(nx, ny)
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest terms first, the way these are usually written down
        let mut first = true;
        for (&(b, a), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let m = c.abs();
            let mut parts = Vec::new();
            if !m.is_one() || (a == 0 && b == 0) {
                parts.push(m.to_string());
            }
            match a {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{a}")),
            }
            match b {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{b}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Diagonal coefficients `c(n, n)` of `x / (1 − W)` for `n = 0..=N`.
///
/// With `W = Σ_j y^j W_j(x)` and `G = 1/(1 − W) = Σ_n y^n G_n(x)`,
/// `G_0 = 1`, `G_n = Σ_{j=1..n} W_j G_{n−j}`, and `c(n, n) = [x^{n−1}] G_n`.
/// Everything is truncated at `x^{N−1}`.
pub fn series_diagonal(w: &BiPoly, n: usize) -> Result<Vec<BigInt>, AlgError> {
    if w.terms().any(|(_, b, _)| b == 0) {
        return Err(AlgError::ConstantTerm);
    }
    let mut out = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return Ok(out);
    }
    let xmax = n - 1;
    let slices: Vec<Vec<(usize, BigInt)>> = (0..=n as u32)
        .map(|j| w.y_slice(j).into_iter().filter(|(a, _)| (*a as usize) <= xmax).map(|(a, c)| (a as usize, c)).collect())
        .collect();
    let mut g: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    let mut g0 = vec![BigInt::zero(); xmax + 1];
    g0[0] = BigInt::one();
    g.push(g0);
    for m in 1..=n {
        let mut gm = vec![BigInt::zero(); xmax + 1];
        for j in 1..=m {
            let prev = &g[m - j];
            for (a, c) in &slices[j] {
                for (k, v) in prev.iter().enumerate().take(xmax + 1 - a) {
                    if !v.is_zero() {
                        gm[a + k] += c * v;
                    }
                }
            }
        }
        out[m] = gm[m - 1].clone();
        g.push(gm);
    }
    Ok(out)
}
