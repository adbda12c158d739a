//! Shared representation-theoretic types: character tables over enumerated
//! groups, realized unitary irreps, and realization by projection from the
//! regular representation.

mod projection;
mod realized;
mod table;

pub use projection::{extend_from_generators, realize_by_projection, DEFAULT_REALIZE_CAP};
pub use realized::{kron, max_abs, CMat, RealizedIrrep};
pub use table::{format_complex, CharacterTable};
