//! Arithmetic in F_q and linear algebra over it: rank, inverses, row spaces,
//! enumeration of GL_k(F_q) and the stabilizer Fix(M) of a matrix under left
//! multiplication.

mod field;
mod glk;
mod matrix;
pub mod poly;

pub use field::{field_make, Embedding, Field, FieldId, MAX_FIELD_ORDER};
pub use glk::{
    enumerate_glk, fix_group_elements, fix_size_formula, glk_order, orbit_size, random_invertible, DEFAULT_GLK_CAP,
};
pub use matrix::{MatrixFq, MatrixJson};
