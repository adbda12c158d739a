//! Finite groups: symmetric groups, GL_k(F_q), direct products and wreath
//! products with Z_2, plus enumeration, conjugacy classes and subgroups.

mod element;
mod handle;
mod indexed;
mod perm;

pub use element::Element;
pub use handle::GroupHandle;
pub use indexed::{ConjugacyClasses, IndexedGroup, Subgroup, DEFAULT_INDEX_CAP};
pub use perm::Perm;
