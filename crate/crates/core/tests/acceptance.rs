//! Acceptance gate. Each criterion runs at its stated tolerance and prints one
//! PASS/FAIL line. The process fails when the set of failing criteria differs
//! from `KNOWN_FAILURES`; those criteria are false as literally stated and each
//! one carries a frozen counterexample checked below.

use hsp_core::algebra::{fix_group_elements, fix_size_formula, DEFAULT_GLK_CAP};
use hsp_core::gl2rep::char_table;
use hsp_core::goppa::{automorphisms, build_goppa, random_spec, stichtenoth_check, DEFAULT_CODEWORD_CAP};
use hsp_core::groups::{Element, GroupHandle, Perm, Subgroup};
use hsp_core::hsp::{attack, random_full_rank, McElieceInstance, DEFAULT_ATTACK_CAP};
use hsp_core::qfs::{self, Caps, GroupModel};
use hsp_core::symrep::{dimension, lambda_c_audit, mn_character, partitions, yor_matrices, LambdaCConfig, Partition};
use hsp_core::wreathrep::{k_build, k_max_normalized_char, wreath_char_table};
use hsp_core::{Field, MatrixFq};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Criteria whose literal statement fails; see `lambda_c_counterexample` and
/// `k_pair_counterexample`.
const KNOWN_FAILURES: [u32; 2] = [8, 9];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn gl2_tables() -> Outcome {
    let mut worst = 0.0f64;
    for q in [2u32, 3, 4, 5, 7] {
        let t = char_table(q).unwrap();
        let qq = q as usize;
        if t.chars.len() != qq * qq - 1 {
            return outcome(false, format!("q={q}: {} irreps", t.chars.len()));
        }
        let sq: usize = t.chars.iter().map(|c| c.dim * c.dim).sum();
        if sq != (qq - 1) * (qq - 1) * qq * (qq + 1) {
            return outcome(false, format!("q={q}: sum d^2 = {sq}"));
        }
        worst = worst.max(t.orthogonality_error());
    }
    outcome(worst <= 1e-9, format!("max orthogonality error {worst:.1e}"))
}

fn linear_multiplicity() -> Outcome {
    let mut most = 0;
    for q in [2u32, 3, 4, 5, 7] {
        let t = char_table(q).unwrap();
        for r in 0..t.chars.len() {
            most = most.max(t.linear_multiplicities(r).unwrap());
        }
    }
    outcome(most <= 2, format!("max linear constituents {most}"))
}

fn all_matrices(k: usize, n: usize, f: &Field) -> Vec<MatrixFq> {
    let q = f.q() as usize;
    let cells = k * n;
    (0..q.pow(cells as u32))
        .map(|mut code| {
            let data = (0..cells)
                .map(|_| {
                    let x = (code % q) as u32;
                    code /= q;
                    x
                })
                .collect();
            MatrixFq::from_vec(k, n, data)
        })
        .collect()
}

fn fix_formula() -> Outcome {
    let f2 = Field::with_order(2).unwrap();
    let mut cases = 0;
    for n in 1..=3 {
        for m in all_matrices(2, n, &f2) {
            let brute = fix_group_elements(&m, &f2, DEFAULT_GLK_CAP).unwrap().len() as u128;
            if brute != fix_size_formula(&m, &f2) {
                return outcome(false, format!("F_2 mismatch at {:?}", m.to_rows()));
            }
            cases += 1;
        }
    }
    let f3 = Field::with_order(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=4);
        let m = MatrixFq::random(k, n, &f3, &mut rng);
        let brute = fix_group_elements(&m, &f3, DEFAULT_GLK_CAP).unwrap().len() as u128;
        if brute != fix_size_formula(&m, &f3) {
            return outcome(false, format!("F_3 mismatch at {:?}", m.to_rows()));
        }
        cases += 1;
    }
    outcome(true, format!("{cases} matrices"))
}

fn goppa_guarantees() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut instances = 0;
    let mut with_aut_check = 0;
    for q in [4u32, 5, 7] {
        for n in 3..=(q as usize).min(6) {
            for (r, _) in (0..n - 1).flat_map(|r| (0..3).map(move |rep| (r, rep))) {
                let spec = random_spec(q, n, r, &mut rng).unwrap();
                let code = build_goppa(&spec).unwrap();
                if code.dimension() != r + 1 || !code.is_full_rank() {
                    return outcome(false, format!("{spec:?}: dimension {}", code.dimension()));
                }
                let d = code.min_distance(DEFAULT_CODEWORD_CAP).unwrap();
                if d < n - r {
                    return outcome(false, format!("{spec:?}: d = {d}"));
                }
                if r >= 1 && r + 3 <= n {
                    let aut = automorphisms(&code).unwrap();
                    if aut.minimal_degree.is_some_and(|m| m < n - 3) {
                        return outcome(false, format!("{spec:?}: minimal degree {:?}", aut.minimal_degree));
                    }
                    if !stichtenoth_check(&spec, &aut).unwrap().holds {
                        return outcome(false, format!("{spec:?}: automorphism outside PGL_2"));
                    }
                    with_aut_check += 1;
                }
                instances += 1;
            }
        }
    }
    outcome(
        instances >= 20 && with_aut_check >= 20,
        format!("{instances} codes, {with_aut_check} with automorphism checks"),
    )
}

fn hsp_attack() -> Outcome {
    let field = Arc::new(Field::with_order(2).unwrap());
    for seed in 0..20u64 {
        let m = random_full_rank(2, 3, &field, seed).unwrap();
        let inst = McElieceInstance::keygen(field.clone(), m, seed).unwrap();
        let rep = attack(&inst, DEFAULT_ATTACK_CAP).unwrap();
        // A' M P' = M*, recomputed from the reported rows and images.
        let a = MatrixFq::from_rows(&rep.recovered.a, &field).unwrap();
        let amp = a.mul(&inst.m, &field).unwrap().permute_columns(&rep.recovered.p).unwrap();
        let ok = rep.right_injective
            && rep.k_matches_formula
            && rep.k_order == 2 * rep.h0_order * rep.h0_order
            && amp == inst.m_star
            && rep.success();
        if !ok {
            return outcome(false, format!("seed {seed}: {rep:?}"));
        }
    }
    outcome(true, "20 instances in (GL_2(F_2) x S_3) wr Z_2")
}

fn sampling_identities() -> Outcome {
    let report = qfs::run_suite("small", 7, Caps::default()).unwrap();
    let required = [
        "schur-expectation",
        "second-moment",
        "variance-bound",
        "largesmall",
        "general-method",
        "conjugation-invariance",
    ];
    for lemma in required {
        if !report.outcomes.iter().any(|o| o.lemma == lemma) {
            return outcome(false, format!("{lemma} was not exercised"));
        }
    }
    let subgroups: std::collections::BTreeSet<&str> = report.outcomes.iter().map(|o| o.subgroup.as_str()).collect();
    for name in ["trivial", "order-2", "alternating", "unipotent", "k-type"] {
        if !subgroups.contains(name) {
            return outcome(false, format!("catalog misses {name}"));
        }
    }
    let failed: Vec<String> = report.outcomes.iter().filter(|o| !o.holds).map(|o| format!("{o:?}")).collect();
    outcome(failed.is_empty(), format!("{} outcomes; failed {:?}", report.outcomes.len(), failed))
}

fn distinguishability() -> Outcome {
    let mut checked = 0;
    for name in ["s3", "s4", "gl2-2", "gl2-3", "wr(s3)", "gl2-4", "gl2-5"] {
        let m = GroupModel::build(&GroupHandle::parse(name).unwrap(), Caps::default()).unwrap();
        let r = m.realize_all(7).unwrap();
        let trivial = qfs::distinguishability(&m, &r, &Subgroup::trivial(&m.group)).value;
        if trivial != 0.0 {
            return outcome(false, format!("{name}: trivial gives {trivial}"));
        }
        let mut configs = qfs::bound_configs(&m);
        if let GroupHandle::GeneralLinear { field, .. } = m.handle() {
            configs.push((m.linear_irreps(), field.q() as f64 - 1.0));
        }
        for e in qfs::subgroup_catalog(&m).unwrap() {
            let d = qfs::distinguishability(&m, &r, &e.subgroup).value;
            if name == "s3" && e.name == "order-3" && d.abs() > 1e-10 {
                return outcome(false, format!("A_3 in S_3 gives {d}"));
            }
            for (s, dd) in &configs {
                let Ok(b) = qfs::theorem1_bound(&m, &e.subgroup, s, *dd) else { continue };
                if d > 4.0f64.min(b.bound) + qfs::INEQUALITY_TOL {
                    return outcome(false, format!("{name}/{}: {d} > bound {}", e.name, b.bound));
                }
                checked += 1;
            }
        }
    }
    outcome(true, format!("{checked} (H, S, D) configurations"))
}

fn symmetric_stack() -> Outcome {
    for n in 1..=10 {
        let fact: u128 = (1..=n as u128).product();
        let sq: u128 = partitions(n).unwrap().iter().map(|l| dimension(l).pow(2)).sum();
        if sq != fact {
            return outcome(false, format!("n={n}: sum d^2 = {sq}"));
        }
    }
    let mut worst = 0.0f64;
    for n in 1..=6 {
        let perms = Perm::all(n);
        for lam in partitions(n).unwrap() {
            let yor = yor_matrices(&lam).unwrap();
            for p in &perms {
                let mu = Partition::new(p.cycle_type()).unwrap();
                let tr = yor.matrix(p).trace();
                worst = worst.max((tr - mn_character(&lam, &mu).unwrap() as f64).abs());
            }
        }
    }
    if worst > 1e-8 {
        return outcome(false, format!("YOR trace error {worst:.1e}"));
    }
    let mut failures = Vec::new();
    for n in [6, 8, 12] {
        let a = lambda_c_audit(&LambdaCConfig::new(n, 1, 6).unwrap()).unwrap();
        if !a.size_bound_holds {
            failures.push(format!("n={n}: |Lambda_c| = {} > {}", a.size, a.size_bound));
        }
        if !a.dimension_bound_holds {
            failures.push(format!("n={n}: max d = {} >= {}", a.max_dimension, a.dimension_bound));
        }
    }
    outcome(failures.is_empty(), format!("YOR trace error {worst:.1e}; audit failures {failures:?}"))
}

/// All subgroups of a small indexed group, as closures of element pairs.
fn all_subgroups(g: &hsp_core::groups::IndexedGroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let h = g.closure(&[a, b]);
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

struct KCheck {
    /// Relations as asserted: pairs below the product bound, plus/minus below the stated maximum.
    stated_failures: Vec<String>,
    /// Plus/minus cases where the stated equality is strict; reported, not asserted.
    equality_flags: usize,
    derived_failures: usize,
    cases: usize,
}

fn k_relations() -> KCheck {
    let base = GroupHandle::symmetric(3);
    let bm = GroupModel::build(&base, Caps::default()).unwrap();
    let irreps = wreath_char_table(&bm.table);
    let values = |e: &Element| bm.values_at(e);
    let mut out = KCheck { stated_failures: Vec::new(), equality_flags: 0, derived_failures: 0, cases: 0 };
    for h0 in all_subgroups(&bm.group) {
        let h0e: Vec<Element> = h0.members().iter().map(|&x| bm.group.element(x).clone()).collect();
        for s in bm.group.elements() {
            let k = k_build(&base, &h0e, s).unwrap();
            for irrep in &irreps {
                let rep = k_max_normalized_char(irrep, &k, &base, &bm.table.dims, &values, 1e-8).unwrap();
                out.cases += 1;
                if !rep.stated_upper_bound_holds {
                    out.stated_failures.push(format!(
                        "|H0|={} s={} {}: direct {:.4} vs {:.4}",
                        h0.order(),
                        s,
                        rep.label,
                        rep.direct,
                        rep.stated_value
                    ));
                }
                if rep.stated_upper_bound_holds && !rep.stated_relation_holds {
                    out.equality_flags += 1;
                }
                if !rep.derived_relation_holds {
                    out.derived_failures += 1;
                }
            }
        }
    }
    out
}

fn wreath_characters() -> Outcome {
    let m = GroupModel::build(&GroupHandle::parse("wr(s3)").unwrap(), Caps::default()).unwrap();
    let sq: usize = m.table.dims.iter().map(|d| d * d).sum();
    if m.num_irreps() != 9 || sq != 72 {
        return outcome(false, format!("{} irreps, sum d^2 = {sq}", m.num_irreps()));
    }
    let r = m.realize_all(7).unwrap();
    let mut worst = 0.0f64;
    for (i, rep) in r.iter().enumerate() {
        for g in 0..m.order() {
            worst = worst.max((rep.trace(g) - m.chi(i, g)).norm());
        }
    }
    if worst > 1e-8 {
        return outcome(false, format!("trace error {worst:.1e}"));
    }
    let k = k_relations();
    outcome(
        k.stated_failures.is_empty(),
        format!(
            "trace error {worst:.1e}; {} K cases, {} stated-bound failures (first: {:?}), {} strict plus/minus equalities, {} corrected-relation failures",
            k.cases,
            k.stated_failures.len(),
            k.stated_failures.first(),
            k.equality_flags,
            k.derived_failures
        ),
    )
}

/// n = 6, c = 1/6: ceil(cn) = 1 so the bound is 2 * 1 * p(1) = 2, while
/// Lambda_c = {[6], [5,1], [2,1,1,1,1], [1^6]}.
fn lambda_c_counterexample() -> bool {
    let a = lambda_c_audit(&LambdaCConfig::new(6, 1, 6).unwrap()).unwrap();
    a.size == 4 && a.size_bound == 2 && a.members == ["[6]", "[5,1]", "[2,1,1,1,1]", "[1,1,1,1,1,1]"]
}

/// H0 = <(12)>, s = (123) in S_3: the pair irrep {[3],[2,1]} reaches 1/2 on
/// K while chi_bar([3]) chi_bar([2,1]) = 1 * 0 = 0. The bound (a + b)/2 holds.
fn k_pair_counterexample() -> bool {
    let base = GroupHandle::symmetric(3);
    let bm = GroupModel::build(&base, Caps::default()).unwrap();
    let t = Element::Perm(Perm::from_cycles("(12)", 3).unwrap());
    let s = Element::Perm(Perm::from_cycles("(123)", 3).unwrap());
    let k = k_build(&base, &[base.identity(), t], &s).unwrap();
    let irrep = wreath_char_table(&bm.table).into_iter().find(|r| r.label == "{[3],[2,1]}").unwrap();
    let rep = k_max_normalized_char(&irrep, &k, &base, &bm.table.dims, &|e| bm.values_at(e), 1e-8).unwrap();
    (rep.direct - 0.5).abs() < 1e-12
        && rep.stated_value == 0.0
        && !rep.stated_relation_holds
        && rep.derived_relation_holds
}

fn main() {
    type Criterion = (u32, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        (1, "gl2 character-table integrity", Duration::from_secs(10), gl2_tables),
        (2, "at most two linear constituents in rho x rho*", Duration::from_secs(10), linear_multiplicity),
        (3, "Fix(M) product formula", Duration::from_secs(30), fix_formula),
        (4, "rational Goppa guarantees", Duration::from_secs(120), goppa_guarantees),
        (5, "end-to-end hidden shift attack", Duration::from_secs(300), hsp_attack),
        (6, "sampling identities on the small grid", Duration::from_secs(600), sampling_identities),
        (7, "distinguishability bounds", Duration::from_secs(600), distinguishability),
        (8, "symmetric-group stack", Duration::from_secs(60), symmetric_stack),
        (9, "wreath characters and K relations", Duration::from_secs(60), wreath_characters),
    ];
    let mut failing = Vec::new();
    for (id, name, budget, run) in criteria {
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let pass = o.pass && elapsed <= budget;
        if !pass {
            failing.push(id);
        }
        println!(
            "{} criterion {id}: {name} ({:.2}s, budget {}s) {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    }
    let witnesses =
        [("criterion 8 witness", lambda_c_counterexample()), ("criterion 9 witness", k_pair_counterexample())];
    for (name, ok) in witnesses {
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
    }
    if failing != KNOWN_FAILURES || witnesses.iter().any(|w| !w.1) {
        eprintln!("failing criteria {failing:?}, expected exactly {KNOWN_FAILURES:?} with their witnesses");
        std::process::exit(1);
    }
    println!("acceptance: failing set matches the documented counterexamples {KNOWN_FAILURES:?}");
}
