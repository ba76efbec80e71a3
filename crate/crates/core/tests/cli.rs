use std::process::Command;

use serde_json::Value;
use zetanet::cli;

fn run(args: &[&str]) -> (i32, Value, String) {
    let argv: Vec<String> = std::iter::once("zetanet")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(argv, &mut out, &mut err);
    let json = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, json, String::from_utf8(err).unwrap())
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zetanet"))
}

#[test]
fn eval_zeta_two() {
    let (code, v, _) = run(&["eval", "--family", "zeta", "--s", "2"]);
    assert_eq!(code, 0);
    let x = v["result"]["value"].as_f64().unwrap();
    assert!((x - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    assert_eq!(v["command"], "eval");
    assert_eq!(v["config"]["settings"]["s"], 2.0);
}

#[test]
fn eval_liouville_matches_zeta_ratio() {
    let (_, v, _) = run(&["eval", "--family", "liouville", "--s", "3"]);
    let z = |s| zetanet::lseries::riemann_zeta(s).unwrap().value;
    let x = v["result"]["value"].as_f64().unwrap();
    assert!((x - z(6.0) / z(3.0)).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let (code, v, err) = run(&["eval", "--family", "zeta", "--s", "0.5"]);
    assert_eq!(code, 2);
    assert_eq!(v, Value::Null);
    assert!(err.contains("sigma_a"));
    assert_eq!(run(&["eval", "--bogus"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["eval", "--family", "nope", "--s", "2"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn threshold_phases() {
    let (code, v, _) = run(&[
        "threshold",
        "--kind",
        "bipartite",
        "--alpha",
        "3.2",
        "--beta",
        "3.2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["phase"], "SUPER");
    let (_, v, _) = run(&["threshold", "--kind", "unipartite", "--alpha", "3.9"]);
    assert_eq!(v["phase"], "SUB");
    let (_, v, _) = run(&[
        "threshold",
        "--kind",
        "epidemic",
        "--alpha",
        "3.3",
        "--beta",
        "3.3",
    ]);
    assert!((v["t_c"].as_f64().unwrap() - 0.5731).abs() < 5e-4);
}

#[test]
fn scan_writes_grid_curve_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, v, _) = run(&["scan", "--eq", "psi", "--res", "12", "--out-dir", d]);
    assert_eq!(code, 0);
    let files: Vec<String> = v["files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_str().unwrap().to_string())
        .collect();
    assert!(!files.is_empty());
    for f in &files {
        assert!(std::path::Path::new(f).exists(), "{f}");
    }
    let cfg = std::fs::read_to_string(format!("{}.config", files[0])).unwrap();
    assert!(cfg.contains("res = 12"));
    let grid = zetanet::phasescan::import_csv(std::path::Path::new(&files[0])).unwrap();
    assert_eq!(grid.alpha_grid.len(), 12);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("run.conf");
    std::fs::write(&p, "# defaults\nkind = unipartite\nalpha = 3.9\n").unwrap();
    let conf = p.to_str().unwrap();
    let (code, v, _) = run(&["--config", conf, "threshold"]);
    assert_eq!(code, 0);
    assert_eq!(v["phase"], "SUB");
    assert_eq!(v["config"]["settings"]["config_file"], conf);
    let (_, v, _) = run(&["--config", conf, "threshold", "--alpha", "3.2"]);
    assert_eq!(v["phase"], "SUPER");
    assert_eq!(v["config"]["settings"]["alpha"], 3.2);
    std::fs::write(&p, "alpha 3\n").unwrap();
    assert_eq!(run(&["--config", conf, "threshold"]).0, 1);
}

#[test]
fn threads_from_env_and_flag() {
    let args = ["eval", "--family", "zeta", "--s", "3"];
    let out = bin()
        .args(args)
        .env("ZETANET_THREADS", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["settings"]["threads"], 3);
    let out = bin()
        .args(["--threads", "2"])
        .args(args)
        .env("ZETANET_THREADS", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["settings"]["threads"], 2);
    let out = bin()
        .args(args)
        .env("ZETANET_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn scan_identical_across_thread_counts() {
    let grid = |t: &str| {
        let out = bin()
            .args(["--threads", t, "scan", "--eq", "dirthr", "--res", "16"])
            .output()
            .unwrap();
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["config"] = Value::Null;
        v
    };
    assert_eq!(grid("1"), grid("4"));
}

#[test]
fn sample_is_reproducible_and_writes_edges() {
    let dir = tempfile::tempdir().unwrap();
    let e = dir.path().join("g.edges");
    let args = [
        "sample",
        "--bipartite",
        "--alpha",
        "3.1",
        "--beta",
        "3.4",
        "--n",
        "3000",
        "--seed",
        "9",
        "--measure",
        "giant,degrees",
        "--edges-out",
        e.to_str().unwrap(),
    ];
    let (code, a, _) = run(&args);
    assert_eq!(code, 0);
    let (_, b, _) = run(&args);
    assert_eq!(a["replicates"], b["replicates"]);
    let text = std::fs::read_to_string(&e).unwrap();
    assert!(text.starts_with("# bipartite n_a=3000 n_b=3000 seed=9"));
}

#[test]
fn percolate_reports_threshold() {
    let (code, v, _) = run(&[
        "percolate",
        "--alpha",
        "3.3",
        "--beta",
        "3.3",
        "--n",
        "2000",
        "--t",
        "0.3",
        "--trials",
        "10",
    ]);
    assert_eq!(code, 0);
    assert!((v["t_c"].as_f64().unwrap() - 0.5731).abs() < 5e-4);
    assert_eq!(v["points"][0]["analytic_subcritical"], true);
}

#[test]
fn algebra_inverse_of_liouville_is_mu_squared() {
    let (code, v, _) = run(&[
        "algebra",
        "--op",
        "inverse",
        "--f",
        "liouville",
        "--n",
        "12",
    ]);
    assert_eq!(code, 0);
    let got: Vec<i64> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect();
    assert_eq!(got, vec![1, 1, 1, 0, 1, 1, 1, 0, 0, 1, 1, 0]);
}
