//! Exact rational and high-precision scalar arithmetic, determinants,
//! interpolation and limits at infinity.

mod limit;
mod matrix;
mod poly;
mod roots;
mod scalar;

pub use limit::{limit_at_infinity, limit_at_infinity_from};
pub use matrix::{det, solve, vandermonde};
pub use poly::{interpolate, Polynomial};
pub use roots::real_roots;
pub use scalar::{Scalar, DEFAULT_PRECISION};
