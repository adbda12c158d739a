use hsp_core::groups::{Element, GroupHandle, Perm, Subgroup};
use hsp_core::qfs::*;
use hsp_core::rep::RealizedIrrep;

fn model(name: &str) -> (GroupModel, Vec<RealizedIrrep>) {
    let m = GroupModel::build(&GroupHandle::parse(name).unwrap(), Caps::default()).unwrap();
    let r = m.realize_all(7).unwrap();
    (m, r)
}

fn perm_subgroup(m: &GroupModel, cycles: &[&str]) -> Subgroup {
    let n = match m.handle() {
        GroupHandle::Symmetric(n) => *n,
        _ => unreachable!(),
    };
    let gens: Vec<usize> =
        cycles.iter().map(|c| m.group.index_of(&Element::Perm(Perm::from_cycles(c, n).unwrap())).unwrap()).collect();
    m.group.closure(&gens)
}

fn label(m: &GroupModel, l: &str) -> usize {
    m.table.index_of(l).unwrap()
}

#[test]
fn weak_distribution_trivial_subgroup_is_plancherel() {
    for name in ["s4", "gl2-3", "wr(s3)"] {
        let (m, _) = model(name);
        let p = weak_distribution(&m, &Subgroup::trivial(&m.group));
        for (r, x) in p.iter().enumerate() {
            let d = m.table.dims[r] as f64;
            assert!((x - d * d / m.order() as f64).abs() < 1e-12);
        }
    }
}

#[test]
fn weak_distribution_s3_examples() {
    let (m, _) = model("s3");
    let (t, s, st) = (label(&m, "[3]"), label(&m, "[1,1,1]"), label(&m, "[2,1]"));
    let h = perm_subgroup(&m, &["(12)"]);
    let p = weak_distribution(&m, &h);
    // tr Pi = (chi(1) + chi((12))) / 2: 1, 0, 1 for trivial, sign, standard.
    assert!((p[t] - 1.0 / 3.0).abs() < 1e-12);
    assert!(p[s].abs() < 1e-12);
    assert!((p[st] - 2.0 / 3.0).abs() < 1e-12);
    let a3 = perm_subgroup(&m, &["(123)"]);
    let p = weak_distribution(&m, &a3);
    assert!((p[t] - 0.5).abs() < 1e-12 && (p[s] - 0.5).abs() < 1e-12 && p[st].abs() < 1e-12);
}

#[test]
fn conditional_distributions() {
    let (m, r) = model("s3");
    let st = label(&m, "[2,1]");
    let triv = Subgroup::trivial(&m.group);
    for g in 0..m.order() {
        let p = conditional_distribution(&m, &r[st], &triv, g).unwrap();
        assert!(p.iter().all(|x| (x - 0.5).abs() < 1e-12));
    }
    // Exact oracle: on tableau T, rho((12)) is diagonal with entry
    // 1 / (content of 2 - content of 1) = +-1, so Pi = (1 + rho((12))) / 2 is
    // diagonal with entries 0 or 1 and tr Pi = 1.
    let h = perm_subgroup(&m, &["(12)"]);
    let tableaux = hsp_core::symrep::standard_tableaux(&hsp_core::symrep::Partition::new(vec![2, 1]).unwrap());
    let content = |c: (usize, usize)| c.1 as i64 - c.0 as i64;
    let expected: Vec<f64> =
        tableaux.iter().map(|t| (1.0 + 1.0 / (content(t[1]) - content(t[0])) as f64) / 2.0).collect();
    assert_eq!(expected.iter().sum::<f64>(), 1.0);
    let p = conditional_distribution(&m, &r[st], &h, m.group.identity()).unwrap();
    for (x, e) in p.iter().zip(&expected) {
        assert!((x - e).abs() < 1e-12, "{p:?} vs {expected:?}");
    }
    let t = label(&m, "[3]");
    assert_eq!(conditional_distribution(&m, &r[t], &h, 3).unwrap(), vec![1.0]);
    let sign = label(&m, "[1,1,1]");
    assert!(matches!(conditional_distribution(&m, &r[sign], &h, 0), Err(hsp_core::Error::Precondition(_))));
}

/// Independent oracle for D(S3, <(12)>) in the Young orthogonal basis.
/// The three conjugates of <(12)> project onto the lines at angles 0, 60 and
/// 120 degrees (each reached twice over g). The conditional is (cos^2, sin^2);
/// its squared L1 distance from uniform is cos^2(2t): 1, 1/4, 1/4. Averaging
/// gives 1/2, weighted by P(standard) = 2/3, so D = 1/3.
#[test]
fn distinguishability_golden_values() {
    let (m, r) = model("s3");
    let h = perm_subgroup(&m, &["(12)"]);
    let d = distinguishability(&m, &r, &h);
    let angles = [0.0f64, 60.0, 120.0];
    let oracle: f64 = angles.iter().map(|a| (2.0 * a.to_radians()).cos().powi(2)).sum::<f64>() / 3.0 * (2.0 / 3.0);
    assert!((oracle - 1.0 / 3.0).abs() < 1e-15);
    assert!((d.value - oracle).abs() < 1e-10, "{}", d.value);
    assert!(distinguishability(&m, &r, &Subgroup::trivial(&m.group)).value == 0.0);
    let a3 = perm_subgroup(&m, &["(123)"]);
    assert!(distinguishability(&m, &r, &a3).value.abs() < 1e-10);
    let again = distinguishability(&m, &model("s3").1, &h);
    assert_eq!(again.value.to_bits(), d.value.to_bits());
}

#[test]
fn monte_carlo_matches_exact() {
    use rand::SeedableRng;
    let (m, r) = model("s4");
    let h = perm_subgroup(&m, &["(12)"]);
    let exact = distinguishability(&m, &r, &h).value;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let est = distinguishability_mc(&m, &r, &h, 4000, &mut rng).unwrap();
    assert!((est.value - exact).abs() < 5.0 * est.std_error + 1e-12, "{} vs {exact}", est.value);
}

#[test]
fn isotypic_projection_properties() {
    let (m, r) = model("s3");
    let st = label(&m, "[2,1]");
    let n = 4;
    let mut total = hsp_core::rep::CMat::zeros(n, n);
    for s in 0..m.num_irreps() {
        let p = isotypic_projection(&m, &r[st], s);
        assert!(hsp_core::rep::max_abs(&(&p * &p - &p)) < 1e-8);
        let tr = p.trace().re;
        assert!((tr - tr.round()).abs() < 1e-6);
        // standard x standard* = trivial + sign + standard.
        assert_eq!(tr.round() as usize, m.table.dims[s]);
        total += p;
    }
    assert!(hsp_core::rep::max_abs(&(total - hsp_core::rep::CMat::identity(n, n))) < 1e-8);
    let t = label(&m, "[3]");
    for s in 0..m.num_irreps() {
        let tr = isotypic_projection(&m, &r[t], s).trace().re;
        assert!((tr - if s == t { 1.0 } else { 0.0 }).abs() < 1e-12);
    }
    // Class-sum weights agree with the full projection.
    for b in 0..2 {
        let w = isotypic_weights(&m, &r[st], b);
        for (s, ws) in w.iter().enumerate() {
            let p = isotypic_projection(&m, &r[st], s);
            assert!((p.column(b * 2 + b).norm_squared() - ws).abs() < 1e-10);
        }
    }
}

#[test]
fn lemma_examples() {
    let (m, r) = model("s3");
    let st = label(&m, "[2,1]");
    let h = perm_subgroup(&m, &["(12)"]);
    let t12 = h.members()[1];
    let s = second_moment_check(&m, &r[st], m.group.identity(), 0);
    assert!((s.lhs - 1.0).abs() < 1e-12 && (s.rhs - 1.0).abs() < 1e-12);
    let s = second_moment_check(&m, &r[st], t12, 0);
    assert!(s.error() < 1e-7);
    let sc = schur_expectation_check(&m, &r[st], &h, 0);
    assert!((sc.lhs - 0.5).abs() < 1e-12 && (sc.rhs - 0.5).abs() < 1e-12);
    let whole = Subgroup::whole(&m.group);
    let sc = schur_expectation_check(&m, &r[st], &whole, 1);
    assert!(sc.lhs.abs() < 1e-12 && sc.rhs.abs() < 1e-12);
    let v = variance_bound_check(&m, st, &r[st], &Subgroup::trivial(&m.group), 0).unwrap();
    assert!(v.lhs.abs() < 1e-12);
    for b in 0..2 {
        assert!(variance_bound_check(&m, st, &r[st], &h, b).unwrap().slack() > -1e-7);
    }
    let ls = largesmall_check(&m, &r[st], label(&m, "[3]"));
    assert!(ls.lhs <= 1.0 + 1e-12 && ls.rhs == 1.0);
    let lin = vec![label(&m, "[3]"), label(&m, "[1,1,1]")];
    let g = general_method_check(&m, st, &r[st], &h, &lin).unwrap();
    assert!(g.sides.slack() > -1e-7);
    assert!(general_method_check(&m, st, &r[st], &Subgroup::trivial(&m.group), &lin).unwrap().sides.lhs == 0.0);
    assert!(general_method_check(&m, lin[0], &r[lin[0]], &h, &lin).is_err());
}

#[test]
fn gl2_lemma_examples() {
    let (m, r) = model("gl2-3");
    let t1 = m.group.index_of(&Element::Mat(hsp_core::MatrixFq::from_vec(2, 2, vec![1, 1, 0, 1]))).unwrap();
    let h = m.group.closure(&[t1]);
    let lin = m.linear_irreps();
    for (x, rep) in r.iter().enumerate() {
        for sigma in 0..m.num_irreps() {
            assert!(largesmall_check(&m, rep, sigma).slack() > -1e-7);
        }
        if lin.contains(&x) {
            continue;
        }
        for b in 0..rep.dim {
            assert!(second_moment_check(&m, rep, t1, b).error() < 1e-7);
            assert!(variance_bound_check(&m, x, rep, &h, b).unwrap().slack() > -1e-7);
        }
        assert!(general_method_check(&m, x, rep, &h, &lin).unwrap().sides.slack() > -1e-7);
    }
}

#[test]
fn bound_components() {
    let (m, _) = model("gl2-3");
    let t1 = m.group.index_of(&Element::Mat(hsp_core::MatrixFq::from_vec(2, 2, vec![1, 1, 0, 1]))).unwrap();
    let h = m.group.closure(&[t1]);
    let q = 3.0;
    let b = theorem1_bound(&m, &h, &m.linear_irreps(), q - 1.0).unwrap();
    assert!(b.delta <= 2 && b.d_s == 1 && b.small == 2);
    let chi = b.chi_bar_complement;
    let expected =
        4.0 * 9.0 * (chi + b.delta as f64 / (q - 1.0) + (q - 1.0).powi(3) / ((q - 1.0).powi(2) * q * (q + 1.0)));
    assert!((b.bound - expected).abs() < 1e-12);
    // S empty, D = 1: every irrep has d >= 1, so the last term vanishes.
    let b = theorem1_bound(&m, &h, &[], 1.0).unwrap();
    assert_eq!(b.small, 0);
    assert_eq!(b.terms[2], 0.0);
    assert!((b.bound - 36.0 * b.chi_bar_complement).abs() < 1e-12);
    assert!(theorem1_bound(&m, &h, &m.linear_irreps(), 1.0).is_err());
    let triv = Subgroup::trivial(&m.group);
    assert_eq!(max_normalized_char_over(&m, &triv, &(0..m.num_irreps()).collect::<Vec<_>>()), 0.0);
}

#[test]
fn catalogs() {
    let names =
        |g: &str| -> Vec<String> { subgroup_catalog(&model(g).0).unwrap().into_iter().map(|e| e.name).collect() };
    assert_eq!(names("s3"), ["trivial", "order-2", "order-3"]);
    assert_eq!(names("s4"), ["trivial", "order-2", "order-3", "alternating"]);
    assert_eq!(names("gl2-3"), ["trivial", "order-2", "order-3", "unipotent"]);
    assert_eq!(names("gl2-2"), ["trivial", "order-2", "order-3", "unipotent"]);
    assert_eq!(names("wr(s3)"), ["trivial", "order-2", "order-3", "k-type"]);
}
