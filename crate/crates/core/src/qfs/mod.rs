//! Weak and strong Fourier sampling on coset states: exact distributions,
//! distinguishability, and the identities and inequalities used to bound it.

mod lemmas;
mod model;
mod sampling;
mod suite;

pub use lemmas::*;
pub use model::{Caps, GroupModel, ModelKind};
pub use sampling::*;
pub use suite::*;
