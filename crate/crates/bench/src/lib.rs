//! Shared fixtures for the criterion benchmarks.

use hsp_core::groups::{GroupHandle, Perm, Subgroup};
use hsp_core::qfs::{Caps, GroupModel};
use hsp_core::rep::RealizedIrrep;
use hsp_core::{Field, MatrixFq};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded random matrix over F_q.
pub fn random_matrix(rows: usize, cols: usize, q: u32, seed: u64) -> (Field, MatrixFq) {
    let f = Field::with_order(q).expect("prime power");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = MatrixFq::random(rows, cols, &f, &mut rng);
    (f, m)
}

/// Model, realizations and a subgroup given by cycle-notation generators.
pub fn sampling_fixture(group: &str, gens: &[&str]) -> (GroupModel, Vec<RealizedIrrep>, Subgroup) {
    let handle = GroupHandle::parse(group).expect("group name");
    let model = GroupModel::build(&handle, Caps::default()).expect("model");
    let realized = model.realize_all(0).expect("realizations");
    let GroupHandle::Symmetric(n) = handle else { panic!("fixture expects a symmetric group") };
    let idx: Vec<usize> = gens
        .iter()
        .map(|g| model.group.index_of(&hsp_core::groups::Element::Perm(Perm::from_cycles(g, n).unwrap())).unwrap())
        .collect();
    let h = model.group.closure(&idx);
    (model, realized, h)
}
