//! Finite-field linear algebra, finite group representation theory and quantum
//! Fourier sampling statistics for hidden shift instances built from
//! McEliece-type public keys.

pub mod algebra;
pub mod error;
pub mod gl2rep;
pub mod goppa;
pub mod groups;
pub mod hsp;
pub mod qfs;
pub mod rep;
pub mod symrep;
pub mod wreathrep;

pub use algebra::{Field, MatrixFq};
pub use error::{Error, Result};
