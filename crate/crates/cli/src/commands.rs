use crate::output::{csv_table, to_value, CliError, Report};
use crate::subgroup::parse_subgroup;
use crate::{AttackAction, Cli, Command, DimsFamily, GoppaAction, McElieceAction, TableFamily};
use hsp_core::gl2rep::{char_table, Gl2Family};
use hsp_core::goppa::{self, RationalGoppaSpec};
use hsp_core::groups::{GroupHandle, Subgroup};
use hsp_core::hsp::{self, McElieceInstance, McElieceJson};
use hsp_core::qfs::{self, Caps, GroupModel};
use hsp_core::rep::{format_complex, CharacterTable};
use hsp_core::symrep::{self, LambdaCConfig};
use hsp_core::wreathrep::WreathKind;
use hsp_core::Field;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

/// Orthogonality tolerance for emitted character tables.
const TABLE_TOL: f64 = 1e-9;

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let caps = Caps { enumeration: cli.enum_cap, realization: cli.realize_cap };
    match &cli.command {
        Command::Chartable { family } => chartable(family, caps),
        Command::Dims { family: DimsFamily::Sn { n } } => dims_sn(*n),
        Command::LambdaAudit { n, c } => lambda_audit(*n, c),
        Command::Roichman { n, c } => roichman(*n, c),
        Command::Goppa { action } => goppa_cmd(action, cli),
        Command::Mceliece { action: McElieceAction::Gen { k, n, q } } => mceliece_gen(*k, *n, *q, cli.seed),
        Command::Mceliece { action: McElieceAction::Attack { instance } }
        | Command::Attack { action: AttackAction::Simulate { instance } } => attack(instance, cli.enum_cap),
        Command::Dist { group, subgroup, s, d, mc_samples } => {
            dist(group, subgroup, s.as_deref(), *d, *mc_samples, cli.seed, caps)
        }
        Command::VerifyLemmas { suite } => verify_lemmas(suite, cli.seed, caps),
    }
}

fn table_csv(table: &CharacterTable, class_labels: &[String]) -> Result<String, CliError> {
    let mut header = vec!["irrep".to_string(), "dim".to_string()];
    header.extend(class_labels.iter().cloned());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = (0..table.num_irreps()).map(|r| {
        let mut row = vec![table.labels[r].clone(), table.dims[r].to_string()];
        row.extend(table.values[r].iter().map(|&z| format_complex(z)));
        row
    });
    csv_table(&header, rows)
}

fn table_checks(report: Report, table: &CharacterTable, order: u128) -> Report {
    let orth = table.orthogonality_error();
    let square_sum = table.dim_square_sum() as u128;
    report.check("character-orthogonality", orth <= TABLE_TOL, json!({"error": orth, "tolerance": TABLE_TOL})).check(
        "dimension-square-sum",
        square_sum == order,
        json!({"sum": square_sum, "order": order}),
    )
}

fn chartable(family: &TableFamily, caps: Caps) -> Result<Report, CliError> {
    let (group, table, class_labels, families): (String, CharacterTable, Vec<String>, BTreeMap<&str, usize>) =
        match family {
            TableFamily::Gl2 { q } => {
                let t = char_table(*q)?;
                let mut families = BTreeMap::new();
                for c in &t.chars {
                    let name = match c.family {
                        Gl2Family::U { .. } => "U",
                        Gl2Family::V { .. } => "V",
                        Gl2Family::W { .. } => "W",
                        Gl2Family::X { .. } => "X",
                    };
                    *families.entry(name).or_insert(0) += 1;
                }
                let table = CharacterTable {
                    labels: t.chars.iter().map(|c| c.label()).collect(),
                    dims: t.chars.iter().map(|c| c.dim).collect(),
                    class_sizes: t.class_sizes().iter().map(|&s| s as usize).collect(),
                    values: t.chars.iter().map(|c| c.values.clone()).collect(),
                };
                let labels = t.ctx.classes.iter().map(|c| c.label()).collect();
                (format!("gl2-{q}"), table, labels, families)
            }
            TableFamily::Sn { n } => {
                let parts = symrep::partitions(*n)?;
                let values = symrep::sn_character_table(&parts)?;
                let sizes: Vec<u128> = parts.iter().map(symrep::class_size).collect();
                let table = CharacterTable {
                    labels: parts.iter().map(|p| p.to_string()).collect(),
                    dims: parts.iter().map(|p| symrep::dimension(p) as usize).collect(),
                    class_sizes: sizes.iter().map(|&s| s as usize).collect(),
                    values: values
                        .iter()
                        .map(|row| row.iter().map(|&v| Complex64::new(v as f64, 0.0)).collect())
                        .collect(),
                };
                let labels = parts.iter().map(|p| p.to_string()).collect();
                (format!("s{n}"), table, labels, BTreeMap::from([("partitions", parts.len())]))
            }
            TableFamily::Wreath { base } => {
                let handle = GroupHandle::wreath(GroupHandle::parse(base)?);
                let model = GroupModel::build(&handle, caps)?;
                let mut families = BTreeMap::new();
                if let qfs::ModelKind::Wreath(_, irreps) = &model.kind {
                    for r in irreps {
                        let name = match r.kind {
                            WreathKind::Plus(_) => "plus",
                            WreathKind::Minus(_) => "minus",
                            WreathKind::Pair(..) => "pair",
                        };
                        *families.entry(name).or_insert(0) += 1;
                    }
                }
                let labels = (0..model.classes.len())
                    .map(|c| {
                        let e = model.group.element(model.classes.representative(c));
                        handle.element_to_json(e).to_string()
                    })
                    .collect();
                (handle.name(), model.table, labels, families)
            }
        };
    let order = table.group_order() as u128;
    let csv = table_csv(&table, &class_labels)?;
    let summary = json!({
        "group": group,
        "order": order,
        "irreps": table.num_irreps(),
        "classes": table.num_classes(),
        "labels": table.labels,
        "dims": table.dims,
        "class_labels": class_labels,
        "class_sizes": table.class_sizes,
        "families": families,
        "orthogonality_error": table.orthogonality_error(),
    });
    let report = Report::new("chartable", summary).table("chartable.csv", csv);
    Ok(table_checks(report, &table, order))
}

fn dims_sn(n: usize) -> Result<Report, CliError> {
    let parts = symrep::partitions(n)?;
    let dims: Vec<u128> = parts.iter().map(symrep::dimension).collect();
    let square_sum = dims.iter().try_fold(0u128, |acc, &d| d.checked_mul(d).and_then(|x| acc.checked_add(x)));
    let order = (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
    let rows: Vec<Vec<String>> = parts.iter().zip(&dims).map(|(p, d)| vec![p.to_string(), d.to_string()]).collect();
    let result = json!({
        "n": n,
        "irreps": parts.len(),
        "dims": parts.iter().zip(&dims).map(|(p, d)| json!({"partition": p.to_string(), "dim": d.to_string()})).collect::<Vec<_>>(),
    });
    let report = Report::new("dims", result).table("dims.csv", csv_table(&["partition", "dim"], rows)?);
    Ok(match (square_sum, order) {
        (Some(s), Some(o)) => {
            report.check("dimension-square-sum", s == o, json!({"sum": s.to_string(), "order": o.to_string()}))
        }
        _ => report,
    })
}

fn lambda_audit(n: usize, c: &str) -> Result<Report, CliError> {
    let cfg = LambdaCConfig::parse(n, c)?;
    let audit = symrep::lambda_c_audit(&cfg)?;
    let c_text = format!("{}/{}", cfg.c_num, cfg.c_den);
    let parts = symrep::partitions(n)?;
    let rows: Vec<Vec<String>> = parts
        .iter()
        .filter(|l| symrep::lambda_c_membership(l, &cfg))
        .map(|l| vec![n.to_string(), c_text.clone(), l.to_string(), symrep::dimension(l).to_string()])
        .collect();
    let csv = csv_table(&["n", "c", "lambda", "value"], rows)?;
    Ok(Report::new("lambda-audit", &audit)
        .table("lambda_audit.csv", csv)
        .check(
            "lambda_c_audit.size_bound",
            audit.size_bound_holds,
            json!({"size": audit.size, "bound": audit.size_bound.to_string()}),
        )
        .check(
            "lambda_c_audit.dimension_bound",
            audit.dimension_bound_holds,
            json!({"max_dimension": audit.max_dimension.to_string(), "bound": audit.dimension_bound.to_string()}),
        ))
}

fn roichman(n: usize, c: &str) -> Result<Report, CliError> {
    let cfg = LambdaCConfig::parse(n, c)?;
    let rows = symrep::roichman_report(&cfg)?;
    let c_text = format!("{}/{}", cfg.c_num, cfg.c_den);
    let csv = csv_table(
        &["n", "c", "s", "value"],
        rows.iter().map(|r| vec![n.to_string(), c_text.clone(), r.support.to_string(), format!("{:.12}", r.max_ratio)]),
    )?;
    let result = json!({
        "n": n,
        "c": c_text,
        "rows": rows.iter().map(|r| json!({
            "support": r.support,
            "max_ratio": r.max_ratio,
            "alpha_hat": if r.alpha_hat.is_finite() { json!(r.alpha_hat) } else { Value::Null },
        })).collect::<Vec<_>>(),
    });
    Ok(Report::new("roichman", result).table("roichman.csv", csv))
}

fn read_spec(path: &Path) -> Result<RationalGoppaSpec, CliError> {
    let spec: RationalGoppaSpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    spec.validate()?;
    Ok(spec)
}

fn goppa_cmd(action: &GoppaAction, cli: &Cli) -> Result<Report, CliError> {
    match action {
        GoppaAction::Build { spec } => {
            let spec = read_spec(spec)?;
            let code = goppa::build_goppa(&spec)?;
            let d = code.min_distance(cli.enum_cap)?;
            let result = json!({
                "spec": spec,
                "n": code.n(),
                "dimension": code.dimension(),
                "min_distance": d,
                "generator": code.generator.to_json(&code.field),
            });
            Ok(Report::new("goppa-build", result).check(
                "goppa.full_rank",
                code.is_full_rank(),
                json!({"dimension": code.dimension(), "rows": code.generator.rows()}),
            ))
        }
        GoppaAction::Aut { spec } => {
            let spec = read_spec(spec)?;
            let aut = goppa::automorphisms(&goppa::build_goppa(&spec)?)?;
            let csv = csv_table(&["automorphism"], aut.automorphisms.iter().map(|p| vec![format!("{p:?}")]))?;
            Ok(Report::new("goppa-aut", json!({"spec": spec, "automorphisms": aut})).table("goppa_aut.csv", csv))
        }
        GoppaAction::Check { spec } => {
            let spec = read_spec(spec)?;
            let aut = goppa::automorphisms(&goppa::build_goppa(&spec)?)?;
            let check = goppa::stichtenoth_check(&spec, &aut)?;
            let holds = check.holds;
            let unmatched = check.unmatched.clone();
            Ok(Report::new("goppa-check", json!({"spec": spec, "check": check})).check(
                "stichtenoth_check",
                holds,
                json!({"unmatched": unmatched}),
            ))
        }
        GoppaAction::Gen { q, n, r } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let spec = goppa::random_spec(*q, *n, *r, &mut rng)?;
            let report = Report::new("goppa-gen", &spec);
            Ok(match &cli.out {
                Some(_) => report.table("goppa_spec.json", serde_json::to_string_pretty(&spec)? + "\n"),
                None => report,
            })
        }
    }
}

fn mceliece_gen(k: usize, n: usize, q: u32, seed: u64) -> Result<Report, CliError> {
    if k == 0 || k > n {
        return Err(CliError::Config(format!("need 1 <= k <= n, got k = {k} and n = {n}")));
    }
    let field = Arc::new(Field::with_order(q)?);
    let (m, source) = if n <= q as usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = goppa::random_spec(q, n, k - 1, &mut rng)?;
        let code = goppa::build_goppa(&spec)?;
        (code.generator, json!({"kind": "goppa", "spec": spec}))
    } else {
        (hsp::random_full_rank(k, n, &field, seed)?, json!({"kind": "random-full-rank"}))
    };
    let inst = McElieceInstance::keygen(field, m, seed)?;
    let body = inst.to_json();
    Ok(Report::new("mceliece-gen", json!({"source": source, "instance": body}))
        .table("instance.json", serde_json::to_string_pretty(&body)? + "\n"))
}

/// Reads a bare instance file or a `mceliece gen` report.
fn read_instance(path: &Path) -> Result<McElieceInstance, CliError> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let body = v.pointer("/result/instance").cloned().unwrap_or(v);
    let j: McElieceJson = serde_json::from_value(body)?;
    Ok(McElieceInstance::from_json(&j)?)
}

fn attack(instance: &Path, cap: u128) -> Result<Report, CliError> {
    let inst = read_instance(instance)?;
    let report = hsp::attack(&inst, cap)?;
    let success = report.success();
    let detail = json!({
        "right_injective": report.right_injective,
        "h0_factorization_holds": report.h0_factorization_holds,
        "k_order_holds": report.k_order_holds,
        "k_matches_formula": report.k_matches_formula,
        "coset_shifts_valid": report.coset_shifts_valid,
        "recovered_valid": report.recovered.valid,
        "all_choices_valid": report.all_choices_valid,
    });
    Ok(Report::new("attack", &report).check("hsp.attack", success, detail))
}

fn resolve_s(model: &GroupModel, s: &str) -> Result<Vec<usize>, CliError> {
    if s.trim() == "linear" {
        return Ok(model.linear_irreps());
    }
    s.split(';')
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            model
                .table
                .index_of(l)
                .ok_or_else(|| CliError::Config(format!("unknown irrep {l:?}; labels are {:?}", model.table.labels)))
        })
        .collect()
}

fn dist(
    group: &str,
    subgroup: &str,
    s: Option<&str>,
    d: Option<f64>,
    mc_samples: Option<usize>,
    seed: u64,
    caps: Caps,
) -> Result<Report, CliError> {
    let handle = GroupHandle::parse(group)?;
    if handle.order() > caps.realization as u128 {
        return Err(CliError::Config(format!(
            "|{}| = {} exceeds the realization cap {}",
            handle.name(),
            handle.order(),
            caps.realization
        )));
    }
    let model = GroupModel::build(&handle, caps)?;
    let h: Subgroup = parse_subgroup(&model.group, subgroup)?;
    let configs: Vec<(Vec<usize>, f64)> = match s {
        Some(s) => {
            let set = resolve_s(&model, s)?;
            let d_s = qfs::max_dim(&model, &set);
            vec![(set, d.unwrap_or((d_s * d_s + 1) as f64))]
        }
        None if d.is_some() => return Err(CliError::Config("--D requires --S".into())),
        None => qfs::default_bound_configs(&model),
    };
    let realized = model.realize_all(seed)?;
    let weak = qfs::weak_distribution(&model, &h);
    let dist = qfs::distinguishability(&model, &realized, &h);
    let bounds =
        configs.iter().map(|(set, d)| qfs::theorem1_bound(&model, &h, set, *d)).collect::<Result<Vec<_>, _>>()?;
    let mc = match mc_samples {
        Some(samples) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Some(qfs::distinguishability_mc(&model, &realized, &h, samples, &mut rng)?)
        }
        None => None,
    };
    let weak_sum = qfs::pairwise_sum(&weak);
    let members: Vec<Value> = h.members().iter().map(|&x| handle.element_to_json(model.group.element(x))).collect();

    let weak_csv = csv_table(
        &["irrep", "dim", "probability"],
        weak.iter()
            .enumerate()
            .map(|(r, p)| vec![model.table.labels[r].clone(), model.table.dims[r].to_string(), format!("{p:.15}")]),
    )?;
    let cond_csv = csv_table(
        &["element", "irrep", "basis_index", "probability"],
        qfs::conditional_table(&model, &realized, &h).into_iter().map(|row| {
            vec![row.element.to_string(), row.irrep, row.basis_index.to_string(), format!("{:.15}", row.probability)]
        }),
    )?;

    let result = json!({
        "group": handle.name(),
        "order": model.order(),
        "subgroup": {"order": h.order(), "elements": members},
        "weak": model.table.labels.iter().zip(&weak).map(|(l, p)| json!({"irrep": l, "probability": p})).collect::<Vec<_>>(),
        "distinguishability": dist,
        "monte_carlo": mc,
        "bounds": bounds,
    });
    let mut report = Report::new("dist", result)
        .table("dist_weak.csv", weak_csv)
        .table("dist_conditionals.csv", cond_csv)
        .check(
            "weak_distribution.sum",
            (weak_sum - 1.0).abs() <= qfs::SUM_TOL,
            json!({"sum": weak_sum, "tolerance": qfs::SUM_TOL}),
        )
        .check(
            "distinguishability.range",
            dist.value >= -qfs::INEQUALITY_TOL && dist.value <= 4.0 + qfs::INEQUALITY_TOL,
            json!({"value": dist.value}),
        );
    for b in &bounds {
        report = report.check(
            "theorem1_bound",
            dist.value <= b.bound + qfs::INEQUALITY_TOL,
            json!({"value": dist.value, "bound": b.bound, "s": b.s, "d_threshold": b.d_threshold}),
        );
    }
    Ok(report)
}

fn verify_lemmas(suite: &str, seed: u64, caps: Caps) -> Result<Report, CliError> {
    let report = qfs::run_suite(suite, seed, caps)?;
    let csv = csv_table(
        &["lemma", "group", "subgroup", "cases", "worst", "tolerance", "holds"],
        report.outcomes.iter().map(|o| {
            vec![
                o.lemma.clone(),
                o.group.clone(),
                o.subgroup.clone(),
                o.cases.to_string(),
                format!("{:e}", o.worst),
                format!("{:e}", o.tolerance),
                o.holds.to_string(),
            ]
        }),
    )?;
    let mut out = Report::new("verify-lemmas", &report).table("verify_lemmas.csv", csv);
    for o in report.outcomes.iter().filter(|o| !o.holds) {
        out = out.check(o.lemma.clone(), false, to_value(o));
    }
    Ok(out)
}
