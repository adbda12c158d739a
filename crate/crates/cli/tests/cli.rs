use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hspwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hspwb")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn dist_transposition_in_s3() {
    let out = hspwb(&["dist", "--group", "s3", "--subgroup", "[(12)]"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let weak: Vec<f64> =
        v["result"]["weak"].as_array().unwrap().iter().map(|w| w["probability"].as_f64().unwrap()).collect();
    // Partitions [3], [2,1], [1,1,1]: d/|G| times the character sum over H.
    for (w, e) in weak.iter().zip([1.0 / 3.0, 2.0 / 3.0, 0.0]) {
        assert!((w - e).abs() < 1e-12);
    }
    let d = v["result"]["distinguishability"]["value"].as_f64().unwrap();
    assert!((d - 1.0 / 3.0).abs() < 1e-9);
    assert_eq!(v["result"]["subgroup"]["order"], 2);
}

#[test]
fn dist_empty_subgroup_file_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("empty.json");
    fs::write(&sub, "[]").unwrap();
    let out_dir = dir.path().join("out");
    let out =
        hspwb(&["--out", out_dir.to_str().unwrap(), "dist", "--group", "s4", "--subgroup", sub.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&out_dir.join("dist.json"));
    assert_eq!(v["result"]["distinguishability"]["value"].as_f64().unwrap(), 0.0);
    assert_eq!(v["result"]["subgroup"]["order"], 1);
    let weak = fs::read_to_string(out_dir.join("dist_weak.csv")).unwrap();
    assert!(weak.starts_with("irrep,dim,probability\n"));
    assert_eq!(weak.lines().count(), 1 + 5);
    assert!(out_dir.join("dist_conditionals.csv").is_file());
}

#[test]
fn dist_monte_carlo_reports_std_error() {
    let out = hspwb(&["--seed", "7", "dist", "--group", "s3", "--subgroup", "[(123)]", "--mc-samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let mc = &stdout_json(&out)["result"]["monte_carlo"];
    assert_eq!(mc["samples"], 50);
    assert!(mc["std_error"].as_f64().is_some());
}

#[test]
fn verify_lemmas_small_passes() {
    let out = hspwb(&["verify-lemmas", "--suite", "small"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["all_hold"], true);
    assert!(v["result"]["outcomes"].as_array().unwrap().len() > 50);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let d = dir.path().join(name);
        let out = hspwb(&[
            "--out",
            d.to_str().unwrap(),
            "--seed",
            "11",
            "--threads",
            "2",
            "dist",
            "--group",
            "gl2-3",
            "--subgroup",
            "[[[1,1],[0,1]]]",
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        d
    };
    let (a, b) = (run("a"), run("b"));
    for f in ["dist.json", "dist_weak.csv", "dist_conditionals.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f} differs");
    }
    let v = read_json(&a.join("dist.json"));
    assert_eq!(v["seed"], 11);
    assert_eq!(v["threads"], 2);
    assert_eq!(v["tool"], "hspwb");
    assert!(v["version"].is_string());
    assert_eq!(v["config"]["command"]["dist"]["group"], "gl2-3");
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["dist", "--group", "s3", "--subgroup", "[(14)]"],
        vec!["dist", "--group", "nonsense", "--subgroup", "[]"],
        vec!["dist", "--group", "s3", "--subgroup", "[]", "--S", "[9]"],
        vec!["lambda-audit", "--n", "6", "--c", "1/3"],
        vec!["chartable", "gl2", "--q", "6"],
        vec!["goppa", "build", "--spec", "/nonexistent/spec.json"],
        vec!["no-such-command"],
    ] {
        let out = hspwb(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = hspwb(&["dist", "--group", "s3", "--subgroup", "[(12)(13)]x"]);
    assert_eq!(out.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["status"], "config-error");
}

#[test]
fn failed_assertion_exits_one_and_names_check() {
    // |Lambda_c| = 4 for n = 6, c = 1/6, above the size bound 2.
    let out = hspwb(&["lambda-audit", "--n", "6", "--c", "1/6"]);
    assert_eq!(out.status.code(), Some(1));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["status"], "assertion-failed");
    assert_eq!(diag["violated"][0]["check"], "lambda_c_audit.size_bound");
}

#[test]
fn chartable_csv_and_summary() {
    let out = hspwb(&["--format", "csv", "chartable", "gl2", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 1 + 8);
    assert!(csv.lines().nth(1).unwrap().starts_with("U(0),1,1.000000000000+0.000000000000i"));

    let v = stdout_json(&hspwb(&["chartable", "gl2", "--q", "4"]));
    let fam = &v["result"]["families"];
    assert_eq!(
        (fam["U"].as_u64(), fam["V"].as_u64(), fam["W"].as_u64(), fam["X"].as_u64()),
        (Some(3), Some(3), Some(3), Some(6))
    );

    let v = stdout_json(&hspwb(&["chartable", "sn", "--n", "5"]));
    assert_eq!(v["result"]["irreps"], 7);
    let v = stdout_json(&hspwb(&["chartable", "wreath", "--base", "s3"]));
    assert_eq!(v["result"]["order"], 72);
    assert_eq!(v["result"]["irreps"], 9);
}

#[test]
fn dims_and_roichman() {
    let v = stdout_json(&hspwb(&["dims", "sn", "--n", "6"]));
    assert_eq!(v["result"]["irreps"], 11);
    let out = hspwb(&["--format", "csv", "roichman", "--n", "8", "--c", "1/6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("n,c,s,value\n"));
}

#[test]
fn mceliece_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out =
        hspwb(&["--out", d.to_str().unwrap(), "--seed", "5", "mceliece", "gen", "--k", "2", "--n", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let inst = d.join("instance.json");
    for args in [["attack", "simulate"], ["mceliece", "attack"]] {
        let out = hspwb(&[args[0], args[1], "--instance", inst.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let r = &stdout_json(&out)["result"];
        assert_eq!(r["recovered"]["valid"], true);
        assert_eq!(r["k_order"].as_u64().unwrap(), 2 * r["h0_order"].as_u64().unwrap().pow(2));
    }
    // Tampered public key no longer matches its secrets.
    let mut v = read_json(&inst);
    v["m_star"][0][0] = Value::from(1 - v["m_star"][0][0].as_u64().unwrap());
    fs::write(&inst, v.to_string()).unwrap();
    assert_eq!(hspwb(&["attack", "simulate", "--instance", inst.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn goppa_commands() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(&spec, r#"{"q":5,"gamma":[0,1,2,3,4],"r":1,"g":[1],"h":[1]}"#).unwrap();
    let s = spec.to_str().unwrap();
    let v = stdout_json(&hspwb(&["goppa", "build", "--spec", s]));
    // Reed-Solomon [5,2] code: MDS, d = n - k + 1.
    assert_eq!(v["result"]["dimension"], 2);
    assert_eq!(v["result"]["min_distance"], 4);
    let out = hspwb(&["goppa", "check", "--spec", s]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"]["check"]["holds"], true);
    let v = stdout_json(&hspwb(&["goppa", "aut", "--spec", s]));
    // Affine maps x -> ax + b of F_5 preserve the code: order 20.
    assert_eq!(v["result"]["automorphisms"]["order"], 20);
}
