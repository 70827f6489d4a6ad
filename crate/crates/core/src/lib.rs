//! Exact symplectic Hodge theory on finite-dimensional form complexes.

pub mod complex;
pub mod error;
pub mod exterior;
pub mod foliated;
pub mod invariant;
pub mod lefschetz;
pub mod linalg;
pub mod model;
pub mod scalar;
pub mod symplectic;

pub use error::{Result, ShlError};
