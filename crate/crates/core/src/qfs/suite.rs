use super::lemmas::*;
use super::model::GroupModel;
use super::sampling::{distinguishability, pairwise_sum, per_element, projector, weak_distribution, ZERO_TRACE};
use crate::error::Result;
use crate::gl2rep::unipotent_subgroup;
use crate::groups::{Element, GroupHandle, IndexedGroup, Subgroup};
use crate::rep::RealizedIrrep;
use crate::wreathrep::k_build;
use serde::Serialize;

pub const STRUCTURAL_TOL: f64 = 1e-8;
pub const SUM_TOL: f64 = 1e-9;
pub const SECOND_MOMENT_TOL: f64 = 1e-7;
pub const INEQUALITY_TOL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub subgroup: Subgroup,
}

/// Order of an element position.
pub fn element_order(group: &IndexedGroup, x: usize) -> usize {
    let (mut cur, mut k) = (x, 1);
    while cur != group.identity() {
        cur = group.mul(cur, x);
        k += 1;
    }
    k
}

fn first_of_order(group: &IndexedGroup, k: usize) -> Option<usize> {
    (0..group.order()).find(|&x| element_order(group, x) == k)
}

/// Fixed subgroups for the lemma grid: trivial, order 2, order 3, the
/// alternating group for S_n, the unipotent group for GL_2 and K for wreath
/// products. Duplicates are dropped.
pub fn subgroup_catalog(model: &GroupModel) -> Result<Vec<CatalogEntry>> {
    let group = &model.group;
    let mut out = vec![CatalogEntry { name: "trivial".into(), subgroup: Subgroup::trivial(group) }];
    for (k, name) in [(2, "order-2"), (3, "order-3")] {
        if let Some(x) = first_of_order(group, k) {
            out.push(CatalogEntry { name: name.into(), subgroup: group.closure(&[x]) });
        }
    }
    match group.handle() {
        GroupHandle::Symmetric(n) if *n >= 2 => {
            let even: Vec<Element> =
                group.elements().iter().filter(|e| e.as_perm().unwrap().sign() == 1).cloned().collect();
            out.push(CatalogEntry { name: "alternating".into(), subgroup: group.subgroup_from_elements(&even)? });
        }
        GroupHandle::GeneralLinear { k: 2, field } => {
            let elems: Vec<Element> = unipotent_subgroup(1, field).into_iter().map(Element::Mat).collect();
            out.push(CatalogEntry { name: "unipotent".into(), subgroup: group.subgroup_from_elements(&elems)? });
        }
        GroupHandle::WreathZ2(base) => {
            let bg = IndexedGroup::new((**base).clone(), u128::MAX)?;
            if let Some(inv) = first_of_order(&bg, 2) {
                let h0: Vec<Element> = bg.closure(&[inv]).members().iter().map(|&i| bg.element(i).clone()).collect();
                let s = first_of_order(&bg, 3)
                    .or_else(|| (0..bg.order()).find(|&x| x != bg.identity() && !h0.contains(bg.element(x))))
                    .unwrap_or(bg.identity());
                let k = k_build(base, &h0, bg.element(s))?;
                out.push(CatalogEntry { name: "k-type".into(), subgroup: group.subgroup_from_elements(&k.elements)? });
            }
        }
        _ => {}
    }
    let mut seen = Vec::new();
    out.retain(|e| {
        let fresh = !seen.contains(&e.subgroup);
        if fresh {
            seen.push(e.subgroup.clone());
        }
        fresh
    });
    Ok(out)
}

/// Worst case of one identity or inequality over all cases of a grid cell.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaOutcome {
    pub lemma: String,
    pub group: String,
    pub subgroup: String,
    pub cases: usize,
    /// Identities: largest |lhs - rhs|. Inequalities: smallest rhs - lhs.
    pub worst: f64,
    pub tolerance: f64,
    pub inequality: bool,
    pub holds: bool,
}

struct Tally {
    lemma: &'static str,
    inequality: bool,
    tolerance: f64,
    cases: usize,
    worst: f64,
}

impl Tally {
    fn identity(lemma: &'static str, tolerance: f64) -> Tally {
        Tally { lemma, inequality: false, tolerance, cases: 0, worst: 0.0 }
    }
    fn inequality(lemma: &'static str) -> Tally {
        Tally { lemma, inequality: true, tolerance: INEQUALITY_TOL, cases: 0, worst: f64::INFINITY }
    }
    fn error(&mut self, e: f64) {
        self.cases += 1;
        self.worst = self.worst.max(e);
    }
    fn sides(&mut self, s: Sides) {
        self.cases += 1;
        if self.inequality {
            self.worst = self.worst.min(s.slack());
        } else {
            self.worst = self.worst.max(s.error());
        }
    }
    fn finish(self, group: &str, subgroup: &str) -> LemmaOutcome {
        let holds = if self.inequality { self.worst >= -self.tolerance } else { self.worst <= self.tolerance };
        LemmaOutcome {
            lemma: self.lemma.into(),
            group: group.into(),
            subgroup: subgroup.into(),
            cases: self.cases,
            worst: self.worst,
            tolerance: self.tolerance,
            inequality: self.inequality,
            holds,
        }
    }
}

/// Runs every identity and inequality on one group and one subgroup.
/// `s_sets` are the (S, D) configurations for the distinguishability bound.
pub fn run_lemma_grid(
    model: &GroupModel,
    realized: &[RealizedIrrep],
    entry: &CatalogEntry,
    s_sets: &[(Vec<usize>, f64)],
) -> Result<Vec<LemmaOutcome>> {
    let h = &entry.subgroup;
    let mut projector_t = Tally::identity("projector", STRUCTURAL_TOL);
    let mut weak_t = Tally::identity("weak-sum", SUM_TOL);
    let mut schur_t = Tally::identity("schur-expectation", STRUCTURAL_TOL);
    let mut second_t = Tally::identity("second-moment", SECOND_MOMENT_TOL);
    let mut variance_t = Tally::inequality("variance-bound");
    let mut general_t = Tally::inequality("general-method");
    let mut invariance_t = Tally::identity("conjugation-invariance", STRUCTURAL_TOL);
    let mut average_t = Tally::identity("basis-average", STRUCTURAL_TOL);
    let mut dist_t = Tally::inequality("distinguishability-bound");

    let weak = weak_distribution(model, h);
    weak_t.error((weak.iter().sum::<f64>() - 1.0).abs());
    let linear = model.linear_irreps();
    for (r, rep) in realized.iter().enumerate() {
        let p = projector(model, rep, h, model.group.identity());
        projector_t.error(p.idempotence_error().max(p.self_adjoint_error()));
        invariance_t.error(conjugation_invariance_error(model, r, rep, h));
        let table = NormTable::new(model, rep, h);
        if let Some(e) = table.basis_average_error() {
            average_t.error(e);
        }
        for b in 0..rep.dim {
            schur_t.sides(table.schur(b));
            let weights = isotypic_weights(model, rep, b);
            variance_t.sides(Sides { lhs: table.variance(b), rhs: variance_rhs(model, r, h, &weights)? });
            for &x in h.members() {
                let vals = per_element(model.order(), |g| rep.matrix(model.group.conj(x, g))[(b, b)].norm_sqr());
                let lhs = pairwise_sum(&vals) / model.order() as f64;
                second_t.sides(Sides { lhs, rhs: second_moment_rhs(model, x, &weights) });
            }
        }
        if !linear.contains(&r) {
            general_t.sides(general_method_from_table(model, r, rep, h, &linear, &table)?.sides);
        }
    }
    let dist = distinguishability(model, realized, h);
    dist_t.sides(Sides { lhs: -dist.value, rhs: 0.0 });
    dist_t.sides(Sides { lhs: dist.value, rhs: 4.0 });
    for (s, d) in s_sets {
        let bound = theorem1_bound(model, h, s, *d)?;
        dist_t.sides(Sides { lhs: dist.value, rhs: bound.bound.min(4.0) });
    }
    let group = model.handle().name();
    Ok([projector_t, weak_t, schur_t, second_t, variance_t, general_t, invariance_t, average_t, dist_t]
        .into_iter()
        .map(|t| t.finish(&group, &entry.name))
        .collect())
}

/// Subgroup-independent checks: LargeSmall over all (rho, sigma), and
/// completeness and integrality of the isotypic decomposition.
pub fn run_group_checks(model: &GroupModel, realized: &[RealizedIrrep]) -> Result<Vec<LemmaOutcome>> {
    let mut largesmall_t = Tally::inequality("largesmall");
    let mut complete_t = Tally::identity("isotypic-completeness", STRUCTURAL_TOL);
    let mut trivial_t = Tally::identity("trivial-in-tensor-dual", INTEGRALITY_TOL);
    for (r, rep) in realized.iter().enumerate() {
        for b in 0..rep.dim {
            complete_t.error((isotypic_weights(model, rep, b).iter().sum::<f64>() - 1.0).abs());
        }
        for sides in largesmall_all(model, rep) {
            largesmall_t.sides(sides);
        }
        let chi = model.table.tensor_dual(r);
        let triv = (0..model.num_irreps())
            .find(|&s| model.table.dims[s] == 1 && model.table.values[s].iter().all(|z| (z.re - 1.0).abs() < 1e-12))
            .unwrap_or(0);
        trivial_t.error((model.table.inner(&chi, &model.table.values[triv]).re - 1.0).abs());
    }
    let group = model.handle().name();
    Ok([largesmall_t, complete_t, trivial_t].into_iter().map(|t| t.finish(&group, "-")).collect())
}

/// Default (S, D) configurations: S = linear irreps with D = 2, and S empty with D = 1.
pub fn default_bound_configs(model: &GroupModel) -> Vec<(Vec<usize>, f64)> {
    vec![(model.linear_irreps(), 2.0), (Vec::new(), 1.0)]
}

/// Whether an irrep has zero weight in the coset state of `h`.
pub fn is_absent(model: &GroupModel, rep: &RealizedIrrep, h: &Subgroup) -> bool {
    projector(model, rep, h, model.group.identity()).trace <= ZERO_TRACE
}

/// Groups of a named suite. `small` is the acceptance grid; `full` adds
/// (GL_2(F_2) x S_3) wr Z_2 and GL_2 over F_4 and F_5.
pub fn suite_groups(name: &str) -> Result<Vec<&'static str>> {
    let small = vec!["s3", "s4", "gl2-2", "gl2-3", "wr(s3)"];
    match name {
        "small" => Ok(small),
        "full" => Ok([small, vec!["gl2-4", "gl2-5", "wr(gl2-2*s3)"]].concat()),
        other => Err(crate::error::Error::InvalidParameter(format!("unknown suite {other:?}; use small or full"))),
    }
}

/// Bound configurations for a group: the defaults, plus S = linear irreps with
/// D = q - 1 for GL_2(F_q) when q - 1 exceeds d_S^2 = 1.
pub fn bound_configs(model: &GroupModel) -> Vec<(Vec<usize>, f64)> {
    let mut out = default_bound_configs(model);
    if let GroupHandle::GeneralLinear { k: 2, field } = model.handle() {
        let d = field.q() as f64 - 1.0;
        if d > 1.0 && d != 2.0 {
            out.push((model.linear_irreps(), d));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub outcomes: Vec<LemmaOutcome>,
    pub all_hold: bool,
}

/// Runs the group checks and every catalog subgroup for each group in the suite.
pub fn run_suite(name: &str, seed: u64, caps: super::model::Caps) -> Result<SuiteReport> {
    let mut outcomes = Vec::new();
    for g in suite_groups(name)? {
        let model = GroupModel::build(&GroupHandle::parse(g)?, caps)?;
        let realized = model.realize_all(seed)?;
        outcomes.extend(run_group_checks(&model, &realized)?);
        let configs = bound_configs(&model);
        for entry in subgroup_catalog(&model)? {
            outcomes.extend(run_lemma_grid(&model, &realized, &entry, &configs)?);
        }
    }
    let all_hold = outcomes.iter().all(|o| o.holds);
    Ok(SuiteReport { suite: name.into(), seed, outcomes, all_hold })
}
