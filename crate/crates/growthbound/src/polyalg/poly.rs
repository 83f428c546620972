//! Dense univariate polynomials over a commutative ring.
//!
//! The ring is a type parameter so the same code serves `Z[z]`
//! (`Poly<BigInt>`), `Q[z]`, floating point, and `Z[z][s]`
//! (`Poly<Poly<BigInt>>`), which is where the discriminants live.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with unity. `from_i64` supplies the integer embedding
/// (derivatives need it).
pub trait Ring:
    Clone + PartialEq + fmt::Debug + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

/// Rings in which `a / b` is defined whenever `b` divides `a`.
/// Fraction-free elimination only ever divides exactly.
pub trait ExactDiv: Ring {
    /// Panics if the division is not exact.
    fn exact_div(&self, d: &Self) -> Self;
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl ExactDiv for BigInt {
    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact integer division");
        q
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
}

macro_rules! float_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
        }
        impl ExactDiv for $t {
            fn exact_div(&self, d: &Self) -> Self {
                self / d
            }
        }
    };
}
float_ring!(f64);
float_ring!(f32);

/// `Σ c[k] t^k`, no trailing zeros; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    c: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn constant(v: T) -> Self {
        Self::new(vec![v])
    }

    /// `v t^k`
    pub fn monomial(v: T, k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = v;
        Self::new(c)
    }

    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.c
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> T {
        self.c.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.c.iter().map(|x| x.clone() * k.clone()).collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![T::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn eval(&self, t: &T) -> T {
        let mut acc = T::zero();
        for x in self.c.iter().rev() {
            acc = acc * t.clone() + x.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(k, x)| x.clone() * T::from_i64(k as i64)).collect())
    }

    /// Apply `f` to every coefficient (e.g. evaluate an inner variable).
    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.c.iter().map(f).collect())
    }

    /// `t^n p(1/t)` with `n = deg p`.
    pub fn reverse(&self) -> Self {
        Self::new(self.c.iter().rev().cloned().collect())
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.c.iter().take(n + 1).cloned().collect())
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("prem by zero");
        let Some(da) = self.degree() else { return self.clone() };
        if da < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut steps = 0;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let t = Self::monomial(r.lc(), dr - db);
            r = r.scale(&lb) - &t * b;
            steps += 1;
        }
        let mut m = T::one();
        for _ in steps..(da - db + 1) {
            m = m * lb.clone();
        }
        r.scale(&m)
    }
}

impl<T: ExactDiv> Poly<T> {
    /// Divide every coefficient exactly by `k`.
    pub fn div_scalar(&self, k: &T) -> Self {
        Self::new(self.c.iter().map(|x| x.exact_div(k)).collect())
    }

    /// Exact polynomial division; panics on a nonzero remainder.
    pub fn div_exact(&self, b: &Self) -> Self {
        let (q, r) = self.div_rem_exact(b);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Long division assuming every step's leading division is exact
    /// (true over a field, or over an integral domain when `b` divides
    /// `self`).
    pub fn div_rem_exact(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lc();
        let mut r = self.clone();
        let mut q = vec![T::zero(); self.c.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let k = r.lc().exact_div(&lb);
            let t = Self::monomial(k.clone(), dr - db);
            q[dr - db] = k;
            r = r - &t * b;
            // guard against ring elements that never cancel exactly (floats)
            if r.degree() == Some(dr) {
                let mut c = r.c;
                c.pop();
                r = Self::new(c);
            }
        }
        (Self::new(q), r)
    }
}

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Ring> Add<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Ring> Sub<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Ring> Mul<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + x.clone() * y.clone();
            }
        }
        Poly::new(c)
    }
}

impl<T: Ring> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { c: self.c.iter().map(|x| -x.clone()).collect() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl<T: Ring> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: Poly<T>) -> Poly<T> {
                (&self).$m(&o)
            }
        }
        impl<T: Ring> $tr<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, o: &Poly<T>) -> Poly<T> {
                (&self).$m(o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Ring> Ring for Poly<T> {
    fn from_i64(v: i64) -> Self {
        Self::constant(T::from_i64(v))
    }
}

impl<T: ExactDiv> ExactDiv for Poly<T> {
    fn exact_div(&self, d: &Self) -> Self {
        if d.degree() == Some(0) {
            return self.div_scalar(&d.c[0]);
        }
        self.div_exact(d)
    }
}

impl<T: Ring> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({x})")?,
                1 => write!(f, "({x})*t")?,
                _ => write!(f, "({x})*t^{k}")?,
            }
        }
        Ok(())
    }
}

// ---- integer-coefficient specifics ----

impl Poly<BigInt> {
    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// gcd of the coefficients, sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            -g
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.div_scalar(&self.content())
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for x in self.c.iter().rev() {
            acc = acc * t + BigRational::from_integer(x.clone());
        }
        acc
    }

    /// `p(t + 1)` by repeated synthetic division (Taylor shift).
    pub fn taylor_shift_one(&self) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// `2^(k n) p(t / 2^k)`, still integral.
    pub fn scale_arg_pow2_down(&self, k: u64) -> Self {
        let n = self.c.len().saturating_sub(1) as u64;
        Self::new(self.c.iter().enumerate().map(|(i, x)| x << ((n - i as u64) * k)).collect())
    }

    /// `p(2^k t)`
    pub fn scale_arg_pow2_up(&self, k: u64) -> Self {
        Self::new(self.c.iter().enumerate().map(|(i, x)| x << (i as u64 * k)).collect())
    }

    /// `p(-t)`
    pub fn reflect(&self) -> Self {
        Self::new(self.c.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect())
    }

    /// Sign changes in the coefficient sequence (zeros skipped).
    pub fn sign_variations(&self) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for x in &self.c {
            let s = if x.is_positive() {
                1
            } else if x.is_negative() {
                -1
            } else {
                continue;
            };
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Sign of `p(m / 2^k)` without leaving the integers.
    pub fn sign_at_dyadic(&self, m: &BigInt, k: u64) -> i8 {
        let Some(n) = self.degree() else { return 0 };
        let mut acc = self.c[n].clone();
        for i in (0..n).rev() {
            acc = acc * m + (&self.c[i] << ((n - i) as u64 * k));
        }
        if acc.is_positive() {
            1
        } else if acc.is_negative() {
            -1
        } else {
            0
        }
    }

    /// gcd over `Z[t]` by the primitive PRS, normalised with positive
    /// leading coefficient.
    /// Division over `Z`. Stops as soon as a leading coefficient is not
    /// divisible by `lc(b)`; the remainder is then nonzero, so `b | self`
    /// iff the returned remainder is zero.
    pub fn div_rem_integral(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lc();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.c.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let (k, rest) = r.lc().div_rem(&lb);
            if !rest.is_zero() {
                break;
            }
            r = r - &Self::monomial(k.clone(), dr - db) * b;
            q[dr - db] = k;
        }
        (Self::new(q), r)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_part_pos();
        }
        if o.is_zero() {
            return self.primitive_part_pos();
        }
        let cg = self.content().abs().gcd(&o.content().abs());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        if a.degree() == Some(0) {
            return Self::constant(cg);
        }
        a.primitive_part_pos().scale(&cg)
    }

    fn primitive_part_pos(&self) -> Self {
        let p = self.primitive_part();
        if p.lc().is_negative() {
            -p
        } else {
            p
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Z = Poly<BigInt>;

    #[test]
    fn arithmetic() {
        let p = Z::from_i64s(&[1, 1]);
        assert_eq!(&p * &p, Z::from_i64s(&[1, 2, 1]));
        assert_eq!(&p + &Z::zero(), p);
        assert_eq!(Z::from_i64s(&[1, 2, 1]).div_exact(&p), p);
        assert_eq!(Z::from_i64s(&[0, 0, 3]).derivative(), Z::from_i64s(&[0, 6]));
    }

    #[test]
    fn prem_matches_definition() {
        let a = Z::from_i64s(&[1, 0, 3, 2]);
        let b = Z::from_i64s(&[5, 3]);
        // lc(b)^3 a = q b + r with deg r < 1
        let r = a.prem(&b);
        assert!(r.degree().unwrap_or(0) < 1);
        let lhs = a.scale(&BigInt::from(27));
        let (q, rr) = Poly::<BigRational>::new(lhs.coeffs().iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .div_rem_exact(&Poly::new(b.coeffs().iter().map(|x| BigRational::from_integer(x.clone())).collect()));
        assert!(!q.is_zero());
        assert_eq!(rr.coeff(0), BigRational::from_integer(r.coeff(0)));
    }

    #[test]
    fn gcd_and_shift() {
        let a = Z::from_i64s(&[-1, 0, 1]); // (t-1)(t+1)
        let b = Z::from_i64s(&[-2, 1, 1]); // (t-1)(t+2)
        assert_eq!(a.gcd(&b), Z::from_i64s(&[-1, 1]));
        assert_eq!(Z::from_i64s(&[0, 0, 1]).taylor_shift_one(), Z::from_i64s(&[1, 2, 1]));
        let p = Z::from_i64s(&[-1, 0, 2]);
        assert_eq!(p.sign_at_dyadic(&BigInt::from(1), 1), -1);
        assert_eq!(p.sign_at_dyadic(&BigInt::from(1), 0), 1);
    }

    #[test]
    fn nested_ring() {
        // (s + z)(s - z) = s^2 - z^2 over Z[z][s]
        let z = Z::var();
        let p: Poly<Z> = Poly::new(vec![z.clone(), Z::one()]);
        let q: Poly<Z> = Poly::new(vec![-z.clone(), Z::one()]);
        let r = &p * &q;
        assert_eq!(r.coeff(0), -(&z * &z));
        assert_eq!(r.div_exact(&p), q);
    }
}
