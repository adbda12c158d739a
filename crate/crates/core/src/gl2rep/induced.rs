use super::classes::Gl2Context;
use crate::algebra::MatrixFq;
use crate::error::{Error, Result};
use crate::groups::IndexedGroup;
use crate::rep::{CMat, RealizedIrrep};
use num_complex::Complex64;

/// Induced representation from the upper-triangular Borel subgroup of the
/// character [[a, b], [0, d]] -> alpha(a) beta(d), realized by monomial
/// matrices on the q+1 lines of F_q^2. Irreducible (and equal to W) when
/// alpha != beta; equal to U_alpha + V_alpha when alpha = beta.
pub fn induced_principal_series(
    ctx: &Gl2Context,
    alpha: u64,
    beta: u64,
    group: &IndexedGroup,
) -> Result<RealizedIrrep> {
    let f = &*ctx.field;
    let q = f.q();
    // Line L_y = span(1, y) for y in F_q, and L_inf = span(0, 1) at index q.
    let section = |l: u32| -> MatrixFq {
        if l < q {
            MatrixFq::from_vec(2, 2, vec![1, 0, l, 1])
        } else {
            MatrixFq::from_vec(2, 2, vec![0, 1, 1, 0])
        }
    };
    let line_of = |v0: u32, v1: u32| -> u32 {
        if v0 == 0 {
            q
        } else {
            f.div(v1, v0).unwrap()
        }
    };
    let sections: Vec<MatrixFq> = (0..=q).map(section).collect();
    let inverses: Vec<MatrixFq> = sections.iter().map(|t| t.inverse(f)).collect::<Result<_>>()?;
    let mut mats = Vec::with_capacity(group.order());
    for e in group.elements() {
        let g = e.as_mat().ok_or_else(|| Error::GroupMismatch("induced model needs GL_2".into()))?;
        let mut m = CMat::zeros(q as usize + 1, q as usize + 1);
        for l in 0..=q {
            let v = sections[l as usize].mul(&MatrixFq::from_vec(2, 1, vec![1, 0]), f)?;
            let gv = g.mul(&v, f)?;
            let target = line_of(gv.get(0, 0), gv.get(1, 0));
            let b = inverses[target as usize].mul(g, f)?.mul(&sections[l as usize], f)?;
            debug_assert_eq!(b.get(1, 0), 0);
            let val: Complex64 = ctx.alpha(alpha, b.get(0, 0)) * ctx.alpha(beta, b.get(1, 1));
            m[(target as usize, l as usize)] = val;
        }
        mats.push(m);
    }
    Ok(RealizedIrrep::new(format!("W({alpha},{beta})"), "induced-from-borel".into(), mats))
}
