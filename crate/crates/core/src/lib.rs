//! Exact partition functions of rational and trigonometric A_n vertex
//! models: domain-wall partition functions, scalar products, their
//! determinant evaluations, Bethe roots, and the b → ∞ degenerations of
//! A_2 scalar products.

pub mod a2;
pub mod algebra;
pub mod bethe;
pub mod dwpf;
pub mod error;
pub mod lattice;
pub mod model;
pub mod scalar_product;
pub mod verify;

pub use algebra::Scalar;
pub use error::{Error, Result};
