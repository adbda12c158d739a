use super::model::GroupModel;
use crate::error::{Error, Result};
use crate::groups::Subgroup;
use crate::rep::{max_abs, CMat, RealizedIrrep};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Traces below this are treated as zero when forming conditionals.
pub const ZERO_TRACE: f64 = 1e-12;

/// Pairwise summation in index order; the result does not depend on thread count.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Exhaustive map over all group elements, collected in element order.
pub(crate) fn per_element<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}

/// P_H(rho) = (d/|G|) * sum_{h in H} chi(h) for every irrep. Needs characters only.
pub fn weak_distribution(model: &GroupModel, h: &Subgroup) -> Vec<f64> {
    let g = model.order() as f64;
    (0..model.num_irreps())
        .map(|r| {
            let s: Complex64 = h.members().iter().map(|&x| model.chi(r, x)).sum();
            model.table.dims[r] as f64 * s.re / g
        })
        .collect()
}

/// Pi_X = (1/|X|) sum_{x in X} rho(x).
#[derive(Clone, Debug)]
pub struct ProjectionBundle {
    pub matrix: CMat,
    pub trace: f64,
}

impl ProjectionBundle {
    /// Max entrywise error of Pi^2 - Pi.
    pub fn idempotence_error(&self) -> f64 {
        max_abs(&(&self.matrix * &self.matrix - &self.matrix))
    }

    /// Max entrywise error of Pi^dagger - Pi.
    pub fn self_adjoint_error(&self) -> f64 {
        max_abs(&(self.matrix.adjoint() - &self.matrix))
    }

    /// ||Pi b||^2 for each basis column b.
    pub fn column_weights(&self) -> Vec<f64> {
        self.matrix.column_iter().map(|c| c.norm_squared()).collect()
    }
}

/// Projector onto the H^g-invariant vectors, built from rho(g^-1 h g).
pub fn projector(model: &GroupModel, rep: &RealizedIrrep, h: &Subgroup, g: usize) -> ProjectionBundle {
    let d = rep.dim;
    let mut m = CMat::zeros(d, d);
    for &x in h.members() {
        m += rep.matrix(model.group.conj(x, g));
    }
    m /= Complex64::new(h.order() as f64, 0.0);
    let trace = m.trace().re;
    ProjectionBundle { matrix: m, trace }
}

/// P_{H^g}(b | rho) = ||Pi_{H^g} b||^2 / tr(Pi_H) over the realized basis.
pub fn conditional_distribution(model: &GroupModel, rep: &RealizedIrrep, h: &Subgroup, g: usize) -> Result<Vec<f64>> {
    let base = projector(model, rep, h, model.group.identity()).trace;
    if base <= ZERO_TRACE {
        return Err(Error::Precondition(format!(
            "{} does not occur in the coset state (tr Pi_H = {base:e}); its conditional is undefined",
            rep.label
        )));
    }
    let p = projector(model, rep, h, g);
    Ok(p.column_weights().into_iter().map(|w| w / base).collect())
}

/// ||P - U||_1^2 for a distribution over d outcomes.
fn l1_sq_from_uniform(p: &[f64]) -> f64 {
    let u = 1.0 / p.len() as f64;
    let l1: f64 = p.iter().map(|x| (x - u).abs()).sum();
    l1 * l1
}

/// E_g ||P_{H^g}(.|rho) - U||_1^2 exhaustively over g; zero when tr Pi_H = 0.
pub fn expected_l1_sq(model: &GroupModel, rep: &RealizedIrrep, h: &Subgroup) -> f64 {
    super::lemmas::NormTable::new(model, rep, h).expected_l1_sq()
}

/// Distinguishability with its per-irrep breakdown.
#[derive(Clone, Debug, Serialize)]
pub struct Distinguishability {
    pub value: f64,
    /// P_H(rho) * E_g ||P_{H^g}(.|rho) - U||_1^2 per irrep.
    pub contributions: Vec<f64>,
    /// Basis provenance per irrep; the value depends on these bases.
    pub basis: Vec<String>,
}

/// Exact E_{rho,g} ||P_{H^g}(.|rho) - U||_1^2 with rho weighted by P_H and g uniform.
pub fn distinguishability(model: &GroupModel, realized: &[RealizedIrrep], h: &Subgroup) -> Distinguishability {
    let weak = weak_distribution(model, h);
    let contributions: Vec<f64> = realized
        .iter()
        .zip(&weak)
        .map(|(rep, &p)| if p <= ZERO_TRACE { 0.0 } else { p * expected_l1_sq(model, rep, h) })
        .collect();
    Distinguishability {
        value: pairwise_sum(&contributions),
        contributions,
        basis: realized.iter().map(|r| r.provenance.clone()).collect(),
    }
}

/// Monte Carlo estimate over g with its standard error.
#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Samples g uniformly; rho is still summed exactly against P_H.
pub fn distinguishability_mc<R: Rng>(
    model: &GroupModel,
    realized: &[RealizedIrrep],
    h: &Subgroup,
    samples: usize,
    rng: &mut R,
) -> Result<MonteCarloEstimate> {
    if samples < 2 {
        return Err(Error::InvalidParameter("Monte Carlo needs at least 2 samples".into()));
    }
    let weak = weak_distribution(model, h);
    let bases: Vec<f64> = realized.iter().map(|rep| projector(model, rep, h, model.group.identity()).trace).collect();
    let gs: Vec<usize> = (0..samples).map(|_| rng.gen_range(0..model.order())).collect();
    let vals: Vec<f64> = gs
        .par_iter()
        .map(|&g| {
            let terms: Vec<f64> = realized
                .iter()
                .enumerate()
                .filter(|&(r, _)| weak[r] > ZERO_TRACE)
                .map(|(r, rep)| {
                    let w: Vec<f64> =
                        projector(model, rep, h, g).column_weights().into_iter().map(|x| x / bases[r]).collect();
                    weak[r] * l1_sq_from_uniform(&w)
                })
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    let n = samples as f64;
    let mean = pairwise_sum(&vals) / n;
    let var = pairwise_sum(&vals.iter().map(|v| (v - mean).powi(2)).collect::<Vec<_>>()) / (n - 1.0);
    Ok(MonteCarloEstimate { value: mean, std_error: (var / n).sqrt(), samples })
}

/// One row of a conditional-distribution dump.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionalRow {
    pub element: usize,
    pub irrep: String,
    pub basis_index: usize,
    pub probability: f64,
}

/// Conditionals for every g and every irrep with nonzero weight.
pub fn conditional_table(model: &GroupModel, realized: &[RealizedIrrep], h: &Subgroup) -> Vec<ConditionalRow> {
    let weak = weak_distribution(model, h);
    let mut rows = Vec::new();
    for (r, rep) in realized.iter().enumerate() {
        if weak[r] <= ZERO_TRACE {
            continue;
        }
        for g in 0..model.order() {
            if let Ok(p) = conditional_distribution(model, rep, h, g) {
                for (b, probability) in p.into_iter().enumerate() {
                    rows.push(ConditionalRow { element: g, irrep: rep.label.clone(), basis_index: b, probability });
                }
            }
        }
    }
    rows
}
