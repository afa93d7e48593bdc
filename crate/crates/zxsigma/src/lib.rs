//! Exact computation with Z[x]-lattices and binomial difference ideals.
//!
//! The support of a Laurent binomial `Y^f - c` is a vector `f` in Z[x]^n,
//! where `x` acts on exponents as the difference operator. Ideals are
//! handled through their support lattices plus constants.

pub mod binomial;
pub mod constants;
pub mod error;
pub mod lattice;
pub mod laurent;
pub mod pid;
pub mod poly;
pub mod saturation;
pub mod text;

pub use error::{Error, Result};
