//! GL_2(F_q): closed-form conjugacy classes, the complete character table,
//! multiplicities of linear characters in rho tensor rho*, scalar-free
//! subgroups and the resulting distinguishability bound.

mod characters;
mod classes;
mod induced;

pub use characters::{char_table, char_table_for, CyclicCharacter, Gl2Char, Gl2Family, Gl2Table};
pub use classes::{Gl2Class, Gl2ClassTag, Gl2Context, MAX_GL2_Q};
pub use induced::induced_principal_series;

use crate::algebra::MatrixFq;
use crate::error::{Error, Result};

/// True iff no scalar matrix other than the identity lies in `h`.
pub fn scalar_free_check(h: &[MatrixFq]) -> bool {
    !h.iter().any(|m| {
        m.rows() == 2 && m.get(0, 1) == 0 && m.get(1, 0) == 0 && m.get(0, 0) == m.get(1, 1) && m.get(0, 0) != 1
    })
}

/// 28 |H|^2 / q for scalar-free H.
pub fn corollary_bound(h: &[MatrixFq], q: u32) -> Result<f64> {
    if !scalar_free_check(h) {
        return Err(Error::Precondition("subgroup contains a non-identity scalar matrix".into()));
    }
    let n = h.len().max(1) as f64;
    Ok(28.0 * n * n / q as f64)
}

/// The unipotent subgroup generated by T(b) = [[1, b], [0, 1]].
pub fn unipotent_subgroup(b: u32, field: &crate::algebra::Field) -> Vec<MatrixFq> {
    let mut out = vec![MatrixFq::identity(2)];
    let t = MatrixFq::from_vec(2, 2, vec![1, b, 0, 1]);
    let mut cur = t.clone();
    while cur != MatrixFq::identity(2) {
        out.push(cur.clone());
        cur = cur.mul(&t, field).unwrap();
    }
    out
}
