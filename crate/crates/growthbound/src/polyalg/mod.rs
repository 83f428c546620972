//! Exact polynomial algebra: bivariate weight polynomials, their diagonal,
//! the cleared denominator `D(s, z)`, its discriminant in `s`, and real
//! roots of the result.

pub mod bipoly;
pub mod modular;
pub mod poly;
pub mod roots;
pub mod spoly;

pub use bipoly::{bipoly_add, bipoly_mul, bipoly_truncate, series_diagonal, BiPoly};
pub use poly::{ExactDiv, Poly, Ring};
pub use roots::{max_real_root, real_roots, square_free_part, to_decimal, RootInterval};
pub use spoly::{
    clear_denominator, det_bareiss, discriminant, discriminant_in_s, discriminant_in_s_interpolated, discriminant_in_s_prs, resultant, sylvester,
    SPoly, ZPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("weight polynomial has a term free of y")]
    ConstantTerm,
    #[error("term x^{a} y^{b} has a - b < -1")]
    MalformedWeight { a: u32, b: u32 },
    #[error("polynomial degree in s is below 2")]
    Degenerate,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("interpolated discriminant is not integral")]
    NonIntegral,
}
