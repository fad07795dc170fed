//! Exact scalars, dense linear algebra, univariate polynomials and a small exact LP.

pub mod lp;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod subspace;

pub use lp::{lp_feasible_max, LpOutcome};
pub use matrix::{Matrix, Rref};
pub use poly::UniPoly;
pub use scalar::{binomial, factorial, parse_rational, Field, Scalar};
pub use subspace::Subspace;
