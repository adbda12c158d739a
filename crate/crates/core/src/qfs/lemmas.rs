use super::model::GroupModel;
use super::sampling::{pairwise_sum, per_element, projector, weak_distribution, ZERO_TRACE};
use crate::error::{Error, Result};
use crate::groups::Subgroup;
use crate::rep::{CMat, RealizedIrrep};
use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

/// Tolerance for integrality of multiplicities read off inner products.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// Pi_sigma on V_rho tensor V_rho^*, as a full d^2 x d^2 matrix.
pub fn isotypic_projection(model: &GroupModel, rep: &RealizedIrrep, sigma: usize) -> CMat {
    let n = rep.dim * rep.dim;
    let mut out = CMat::zeros(n, n);
    for g in 0..model.order() {
        let c = model.chi(sigma, g).conj();
        if c.norm() == 0.0 {
            continue;
        }
        let m = rep.matrix(g);
        out += m.kronecker(&m.map(|z| z.conj())) * c;
    }
    out * Complex64::new(model.table.dims[sigma] as f64 / model.order() as f64, 0.0)
}

/// Pi_sigma (b tensor b^*) for every sigma, built from class sums of rho(g) b.
pub fn isotypic_components(model: &GroupModel, rep: &RealizedIrrep, b: usize) -> Vec<DVector<Complex64>> {
    let d = rep.dim;
    let class_sums: Vec<DVector<Complex64>> = model
        .classes
        .members
        .iter()
        .map(|members| {
            let mut w = DVector::zeros(d * d);
            for &g in members {
                let col = rep.matrix(g).column(b);
                for i in 0..d {
                    for j in 0..d {
                        w[i * d + j] += col[i] * col[j].conj();
                    }
                }
            }
            w
        })
        .collect();
    (0..model.num_irreps())
        .map(|s| {
            let mut v = DVector::zeros(d * d);
            for (c, w) in class_sums.iter().enumerate() {
                v += w * model.table.values[s][c].conj();
            }
            v * Complex64::new(model.table.dims[s] as f64 / model.order() as f64, 0.0)
        })
        .collect()
}

/// ||Pi_sigma (b tensor b^*)||^2 for every sigma; these sum to 1.
pub fn isotypic_weights(model: &GroupModel, rep: &RealizedIrrep, b: usize) -> Vec<f64> {
    isotypic_components(model, rep, b).iter().map(|v| v.norm_squared()).collect()
}

/// max over h in H, h != 1, of |chi_sigma(h)| / d_sigma; zero for trivial H.
pub fn max_normalized_char(model: &GroupModel, h: &Subgroup, sigma: usize) -> f64 {
    let d = model.table.dims[sigma] as f64;
    h.non_identity(&model.group).map(|x| model.chi(sigma, x).norm() / d).fold(0.0, f64::max)
}

/// max of `max_normalized_char` over a set of irreps; zero for an empty set.
pub fn max_normalized_char_over(model: &GroupModel, h: &Subgroup, set: &[usize]) -> f64 {
    set.iter().map(|&s| max_normalized_char(model, h, s)).fold(0.0, f64::max)
}

/// Both sides of an identity or inequality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sides {
    pub lhs: f64,
    pub rhs: f64,
}

impl Sides {
    pub fn error(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
    /// rhs - lhs; negative means the inequality lhs <= rhs fails.
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// E_g |<b, rho(g^-1 h g) b>|^2 against sum_sigma (chi_sigma(h)/d_sigma) ||Pi_sigma(b tensor b^*)||^2.
pub fn second_moment_check(model: &GroupModel, rep: &RealizedIrrep, h: usize, b: usize) -> Sides {
    let vals = per_element(model.order(), |g| rep.matrix(model.group.conj(h, g))[(b, b)].norm_sqr());
    let lhs = pairwise_sum(&vals) / model.order() as f64;
    let weights = isotypic_weights(model, rep, b);
    Sides { lhs, rhs: second_moment_rhs(model, h, &weights) }
}

/// ||Pi_{H^g} b||^2 for every g, in element order.
fn projected_norms(model: &GroupModel, rep: &RealizedIrrep, h: &Subgroup, b: usize) -> Vec<f64> {
    per_element(model.order(), |g| projector(model, rep, h, g).matrix.column(b).norm_squared())
}

/// ||Pi_{H^g} b||^2 for every g and every basis vector b, plus tr Pi_H.
#[derive(Clone, Debug)]
pub struct NormTable {
    /// Indexed [g][b].
    pub norms: Vec<Vec<f64>>,
    pub trace: f64,
}

impl NormTable {
    pub fn new(model: &GroupModel, rep: &RealizedIrrep, h: &Subgroup) -> NormTable {
        let norms = per_element(model.order(), |g| projector(model, rep, h, g).column_weights());
        NormTable { norms, trace: projector(model, rep, h, model.group.identity()).trace }
    }

    fn column(&self, b: usize) -> Vec<f64> {
        self.norms.iter().map(|row| row[b]).collect()
    }

    /// E_g ||Pi_{H^g} b||^2 against tr(Pi_H) / d.
    pub fn schur(&self, b: usize) -> Sides {
        let xs = self.column(b);
        let d = self.norms[0].len() as f64;
        Sides { lhs: pairwise_sum(&xs) / xs.len() as f64, rhs: self.trace / d }
    }

    /// Var_g ||Pi_{H^g} b||^2.
    pub fn variance(&self, b: usize) -> f64 {
        let xs = self.column(b);
        let n = xs.len() as f64;
        let mean = pairwise_sum(&xs) / n;
        pairwise_sum(&xs.iter().map(|x| (x - mean).powi(2)).collect::<Vec<_>>()) / n
    }

    /// max over b of |(1/|G|) sum_g P_{H^g}(b|rho) - 1/d|; `None` when tr Pi_H = 0.
    pub fn basis_average_error(&self) -> Option<f64> {
        if self.trace <= ZERO_TRACE {
            return None;
        }
        let d = self.norms[0].len();
        Some((0..d).map(|b| (self.schur(b).lhs / self.trace - 1.0 / d as f64).abs()).fold(0.0, f64::max))
    }

    /// E_g ||P_{H^g}(.|rho) - U||_1^2; zero when tr Pi_H = 0.
    pub fn expected_l1_sq(&self) -> f64 {
        if self.trace <= ZERO_TRACE {
            return 0.0;
        }
        let u = 1.0 / self.norms[0].len() as f64;
        let vals: Vec<f64> = self
            .norms
            .iter()
            .map(|row| {
                let l1: f64 = row.iter().map(|x| (x / self.trace - u).abs()).sum();
                l1 * l1
            })
            .collect();
        pairwise_sum(&vals) / vals.len() as f64
    }
}

/// Var_g ||Pi_{H^g} b||^2 against sum over sigma in I(rho tensor rho^*) of chi_bar_sigma(H) ||Pi_sigma(b tensor b^*)||^2.
pub fn variance_bound_check(
    model: &GroupModel,
    rep_index: usize,
    rep: &RealizedIrrep,
    h: &Subgroup,
    b: usize,
) -> Result<Sides> {
    let xs = projected_norms(model, rep, h, b);
    let n = xs.len() as f64;
    let mean = pairwise_sum(&xs) / n;
    let lhs = pairwise_sum(&xs.iter().map(|x| (x - mean).powi(2)).collect::<Vec<_>>()) / n;
    let weights = isotypic_weights(model, rep, b);
    Ok(Sides { lhs, rhs: variance_rhs(model, rep_index, h, &weights)? })
}

/// sum over sigma in I(rho tensor rho^*) of chi_bar_sigma(H) w_sigma.
pub fn variance_rhs(model: &GroupModel, rep_index: usize, h: &Subgroup, weights: &[f64]) -> Result<f64> {
    let constituents = model.table.constituents_of_tensor_dual(rep_index, INTEGRALITY_TOL)?;
    Ok(constituents.iter().map(|&s| max_normalized_char(model, h, s) * weights[s]).sum())
}

/// sum_sigma (chi_sigma(h)/d_sigma) w_sigma, real part.
pub fn second_moment_rhs(model: &GroupModel, h: usize, weights: &[f64]) -> f64 {
    let rhs: Complex64 =
        weights.iter().enumerate().map(|(s, w)| model.chi(s, h) / model.table.dims[s] as f64 * *w).sum();
    rhs.re
}

/// sum_b ||Pi_sigma(b tensor b^*)||^2 against d_sigma^2.
pub fn largesmall_check(model: &GroupModel, rep: &RealizedIrrep, sigma: usize) -> Sides {
    largesmall_all(model, rep).swap_remove(sigma)
}

/// `largesmall_check` for every sigma at once.
pub fn largesmall_all(model: &GroupModel, rep: &RealizedIrrep) -> Vec<Sides> {
    let mut sums = vec![0.0; model.num_irreps()];
    for b in 0..rep.dim {
        for (acc, w) in sums.iter_mut().zip(isotypic_weights(model, rep, b)) {
            *acc += w;
        }
    }
    sums.into_iter().zip(&model.table.dims).map(|(lhs, &d)| Sides { lhs, rhs: (d * d) as f64 }).collect()
}

/// E_g ||Pi_{H^g} b||^2 against tr(Pi_H) / d_rho.
pub fn schur_expectation_check(model: &GroupModel, rep: &RealizedIrrep, h: &Subgroup, b: usize) -> Sides {
    let xs = projected_norms(model, rep, h, b);
    let lhs = pairwise_sum(&xs) / xs.len() as f64;
    let rhs = projector(model, rep, h, model.group.identity()).trace / rep.dim as f64;
    Sides { lhs, rhs }
}

/// max over g of |P_{H^g}(rho) - P_H(rho)|, with P_{H^g} computed from realized traces.
pub fn conjugation_invariance_error(model: &GroupModel, rep_index: usize, rep: &RealizedIrrep, h: &Subgroup) -> f64 {
    let p = weak_distribution(model, h)[rep_index];
    let scale = rep.dim as f64 * h.order() as f64 / model.order() as f64;
    per_element(model.order(), |g| (scale * projector(model, rep, h, g).trace - p).abs())
        .into_iter()
        .fold(0.0, f64::max)
}

/// max over b of |(1/|G|) sum_g P_{H^g}(b|rho) - 1/d_rho|; `None` when tr Pi_H = 0.
pub fn basis_average_error(model: &GroupModel, rep: &RealizedIrrep, h: &Subgroup) -> Option<f64> {
    let base = projector(model, rep, h, model.group.identity()).trace;
    if base <= ZERO_TRACE {
        return None;
    }
    let u = 1.0 / rep.dim as f64;
    Some(
        (0..rep.dim)
            .map(|b| {
                let xs = projected_norms(model, rep, h, b);
                (pairwise_sum(&xs) / xs.len() as f64 / base - u).abs()
            })
            .fold(0.0, f64::max),
    )
}

/// Largest dimension in a set of irreps; zero for an empty set.
pub fn max_dim(model: &GroupModel, set: &[usize]) -> usize {
    set.iter().map(|&s| model.table.dims[s]).max().unwrap_or(0)
}

fn complement(model: &GroupModel, set: &[usize]) -> Vec<usize> {
    (0..model.num_irreps()).filter(|r| !set.contains(r)).collect()
}

fn validate_set(model: &GroupModel, set: &[usize]) -> Result<()> {
    match set.iter().find(|&&s| s >= model.num_irreps()) {
        Some(s) => Err(Error::InvalidParameter(format!("irrep index {s} out of range"))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralMethodReport {
    pub irrep: String,
    pub sides: Sides,
    /// rho does not occur in the coset state; its term is zero.
    pub zero_weight: bool,
    pub chi_bar_complement: f64,
    pub overlap: usize,
    pub d_s: usize,
}

/// E_g ||P_{H^g}(.|rho) - U||_1^2 against 4|H|^2 (chi_bar_{S complement}(H) + |S n I(rho tensor rho^*)| d_S^2 / d_rho).
pub fn general_method_check(
    model: &GroupModel,
    rep_index: usize,
    rep: &RealizedIrrep,
    h: &Subgroup,
    s: &[usize],
) -> Result<GeneralMethodReport> {
    general_method_from_table(model, rep_index, rep, h, s, &NormTable::new(model, rep, h))
}

/// `general_method_check` with the projected norms already computed.
pub fn general_method_from_table(
    model: &GroupModel,
    rep_index: usize,
    rep: &RealizedIrrep,
    h: &Subgroup,
    s: &[usize],
    table: &NormTable,
) -> Result<GeneralMethodReport> {
    validate_set(model, s)?;
    if s.contains(&rep_index) {
        return Err(Error::Precondition(format!("{} belongs to S", rep.label)));
    }
    let zero_weight = table.trace <= ZERO_TRACE;
    let lhs = table.expected_l1_sq();
    let chi_bar = max_normalized_char_over(model, h, &complement(model, s));
    let constituents = model.table.constituents_of_tensor_dual(rep_index, INTEGRALITY_TOL)?;
    let overlap = s.iter().filter(|x| constituents.contains(x)).count();
    let d_s = max_dim(model, s);
    let hh = h.order() as f64;
    let rhs = 4.0 * hh * hh * (chi_bar + overlap as f64 * (d_s * d_s) as f64 / rep.dim as f64);
    Ok(GeneralMethodReport {
        irrep: rep.label.clone(),
        sides: Sides { lhs, rhs },
        zero_weight,
        chi_bar_complement: chi_bar,
        overlap,
        d_s,
    })
}

/// Components of the distinguishability bound
/// 4|H|^2 (chi_bar_{S complement}(H) + Delta d_S^2 / D + |L complement| D^2 / |G|).
#[derive(Clone, Debug, Serialize)]
pub struct BoundComponents {
    pub s: Vec<String>,
    pub d_threshold: f64,
    pub h_order: usize,
    pub chi_bar_complement: f64,
    pub d_s: usize,
    /// max over rho with d_rho >= D of |S n I(rho tensor rho^*)|.
    pub delta: usize,
    /// Irreps with d_rho >= D.
    pub large: usize,
    /// Irreps with d_rho < D.
    pub small: usize,
    pub terms: [f64; 3],
    pub bound: f64,
}

/// Requires D > d_S^2.
pub fn theorem1_bound(model: &GroupModel, h: &Subgroup, s: &[usize], d_threshold: f64) -> Result<BoundComponents> {
    validate_set(model, s)?;
    let d_s = max_dim(model, s);
    if d_threshold <= (d_s * d_s) as f64 {
        return Err(Error::Precondition(format!("D = {d_threshold} must exceed d_S^2 = {}", d_s * d_s)));
    }
    let chi_bar = max_normalized_char_over(model, h, &complement(model, s));
    let large: Vec<usize> = (0..model.num_irreps()).filter(|&r| model.table.dims[r] as f64 >= d_threshold).collect();
    let mut delta = 0;
    for &r in &large {
        let constituents = model.table.constituents_of_tensor_dual(r, INTEGRALITY_TOL)?;
        delta = delta.max(s.iter().filter(|x| constituents.contains(x)).count());
    }
    let small = model.num_irreps() - large.len();
    let hh = h.order() as f64;
    let terms = [
        chi_bar,
        delta as f64 * (d_s * d_s) as f64 / d_threshold,
        small as f64 * d_threshold * d_threshold / model.order() as f64,
    ];
    Ok(BoundComponents {
        s: s.iter().map(|&x| model.table.labels[x].clone()).collect(),
        d_threshold,
        h_order: h.order(),
        chi_bar_complement: chi_bar,
        d_s,
        delta,
        large: large.len(),
        small,
        terms,
        bound: 4.0 * hh * hh * terms.iter().sum::<f64>(),
    })
}
