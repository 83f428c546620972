//! Upper bounds on the growth constants of polyominoes and polycubes via
//! twig sets.
//!
//! The pipeline: a twig set ([`twigs2d`], [`twigs3d`]) is grown level by
//! level ([`enumerator`]) into a weight polynomial `W_i(x, y)`; the diagonal
//! of `x / (1 − W_i)` has a radius of convergence located exactly by a
//! discriminant ([`polyalg`]); its reciprocal bounds λ_d ([`bounds`]).
//! [`oracle`] supplies brute-force animal counts for cross-checks.
//!
//! Scalars: [`polyalg::Poly`] is generic over its coefficient ring; the
//! aliases below name the instantiations used in practice.

pub mod bounds;
pub mod enumerator;
pub mod formats;
pub mod geom;
pub mod oracle;
pub mod polyalg;
pub mod twig;
pub mod twigs2d;
pub mod twigs3d;
pub mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Integer polynomials, e.g. discriminants in `z`.
pub type ZPoly = polyalg::Poly<BigInt>;
/// Rational polynomials.
pub type QPoly = polyalg::Poly<BigRational>;
/// Double-precision polynomials.
pub type FPoly = polyalg::Poly<f64>;
/// Single-precision polynomials.
pub type F32Poly = polyalg::Poly<f32>;
/// Polynomials in `s` over `Z[z]`.
pub type ZZPoly = polyalg::Poly<ZPoly>;

pub use bounds::BoundResult;
pub use enumerator::{build_weight_sum, RunOptions, WeightSum};
pub use geom::{Animal, Cell, Orientation, Polycube, Polyomino};
pub use polyalg::BiPoly;
pub use twig::{Twig, TwigSequence, TwigSet};
