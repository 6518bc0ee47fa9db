//! End-to-end tests driving the compiled binary: JSON formats, exit codes,
//! cap profiles, and byte-deterministic scan output.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_walklab"));
    cmd.env_remove("WALKLAB_CAP_PROFILE");
    cmd
}

fn run_ok(args: &[&str], dir: &Path) -> Value {
    let out = bin().args(args).current_dir(dir).output().unwrap();
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap_or_else(|_| {
        panic!(
            "command {:?} did not print JSON: {}",
            args,
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn run_raw(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().unwrap()
}

#[test]
fn construct_prob_rho_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let set = run_ok(
        &["construct", "--family", "sphere", "--norm2", "25", "--dim", "2"],
        dir.path(),
    );
    assert_eq!(set["vectors"].as_array().unwrap().len(), 12);
    assert_eq!(set["scale2"], 25);
    fs::write(dir.path().join("v.json"), set.to_string()).unwrap();

    let prob = run_ok(
        &["prob", "--set", "v.json", "--target", "0,0", "--engine", "naive"],
        dir.path(),
    );
    assert_eq!(prob["num"], "1");
    assert_eq!(prob["den"], "64");

    let rho = run_ok(
        &["rho", "--set", "v.json", "--engine", "mitm", "--out", "dist.csv"],
        dir.path(),
    );
    assert_eq!(rho["x_star"], serde_json::json!([0, 0]));
    assert_eq!(rho["num"], "1");
    assert_eq!(rho["den"], "64");

    let csv = fs::read_to_string(dir.path().join("dist.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "x0,x1,count,log2_prob,prob");
    let points: Vec<(i64, i64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let mut cells = l.split(',');
            (
                cells.next().unwrap().parse().unwrap(),
                cells.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert!(points.windows(2).all(|w| w[0] < w[1]), "rows must be sorted");
    // counts sum to 2^12
    let total: u64 = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 4096);

    let quad = run_ok(
        &["prob", "--set", "v.json", "--target", "0,0", "--engine", "fourier"],
        dir.path(),
    );
    let value = quad["float"].as_f64().unwrap();
    assert!((value - 1.0 / 64.0).abs() < 1e-9);
}

#[test]
fn exit_codes_distinguish_precondition_from_guard() {
    let dir = tempfile::tempdir().unwrap();
    let set = run_ok(
        &[
            "construct", "--family", "generic", "--n", "30", "--dim", "2", "--seed", "3",
            "--norm-bound", "40",
        ],
        dir.path(),
    );
    fs::write(dir.path().join("big.json"), set.to_string()).unwrap();

    // 30 vectors exceed the naive pattern cap: resource guard, exit 3
    let out = run_raw(
        &["prob", "--set", "big.json", "--target", "0,0", "--engine", "naive"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource guard"));

    // malformed target: precondition, exit 2
    let out = run_raw(
        &["prob", "--set", "big.json", "--target", "0,zero", "--engine", "mitm"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // missing file: precondition, exit 2
    let out = run_raw(
        &["prob", "--set", "absent.json", "--target", "0,0", "--engine", "mitm"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_profile_env_var_changes_guards() {
    let dir = tempfile::tempdir().unwrap();
    let set = run_ok(
        &[
            "construct", "--family", "generic", "--n", "22", "--dim", "2", "--seed", "9",
            "--norm-bound", "50",
        ],
        dir.path(),
    );
    fs::write(dir.path().join("v.json"), set.to_string()).unwrap();

    // n = 22 passes the default naive cap (2^24)
    let out = run_raw(
        &["prob", "--set", "v.json", "--target", "0,0", "--engine", "naive"],
        dir.path(),
    );
    assert!(out.status.success());

    // but not the small profile (2^20)
    let out = bin()
        .args(["prob", "--set", "v.json", "--target", "0,0", "--engine", "naive"])
        .env("WALKLAB_CAP_PROFILE", "small")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // explicit flag overrides back up
    let out = run_raw(
        &[
            "--cap-naive-patterns", "16777216",
            "prob", "--set", "v.json", "--target", "0,0", "--engine", "naive",
        ],
        dir.path(),
    );
    assert!(out.status.success());
}

#[test]
fn scan_is_byte_deterministic_and_appends_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let config = serde_json::json!({
        "family": "generic",
        "d": 2,
        "grid": [4, 6, 8],
        "engine": "naive",
        "target": "rho",
        "seed": 11,
        "norm_bound": 50,
    });
    fs::write(dir.path().join("scan.json"), config.to_string()).unwrap();

    let summary = run_ok(
        &["scan", "--config", "scan.json", "--out", "a.csv"],
        dir.path(),
    );
    assert_eq!(summary["rows"], 3);
    assert_eq!(summary["errors"], 0);
    run_ok(
        &["scan", "--config", "scan.json", "--out", "b.csv"],
        dir.path(),
    );
    let a = fs::read(dir.path().join("a.csv")).unwrap();
    let b = fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);

    // manifest appends one JSONL entry per run
    run_ok(
        &["scan", "--config", "scan.json", "--out", "a.csv"],
        dir.path(),
    );
    let manifest = fs::read_to_string(dir.path().join("a.manifest.jsonl")).unwrap();
    assert_eq!(manifest.lines().count(), 2);
    let entry: Value = serde_json::from_str(manifest.lines().next().unwrap()).unwrap();
    assert_eq!(entry["config"]["seed"], 11);
    assert!(entry["rows"].as_array().unwrap().len() == 3);

    // fit consumes the CSV it produced
    let fit = run_ok(&["fit", "--csv", "a.csv"], dir.path());
    assert!(fit["slope"].as_f64().unwrap() < 0.0);
}

#[test]
fn gap_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let gap = serde_json::json!({
        "ambient": 2,
        "base": [0, 0],
        "generators": [[1, 0], [0, 1]],
        "dims": [5, 5],
        "symmetric": true,
    });
    fs::write(dir.path().join("q.json"), gap.to_string()).unwrap();

    let enumerated = run_ok(&["gap", "enumerate", "--gap", "q.json"], dir.path());
    assert_eq!(enumerated["actual"], 121);
    assert_eq!(enumerated["nominal"], "121");

    let proper = run_ok(&["gap", "proper", "--gap", "q.json"], dir.path());
    assert_eq!(proper["proper"], true);

    let circle = run_ok(
        &["gap", "circle", "--gap", "q.json", "--r2", "25"],
        dir.path(),
    );
    assert_eq!(circle["count"], 12);

    let r2 = run_ok(
        &[
            "gap", "r2", "--gap", "q.json", "--m", "25,0", "--conjugate-extension",
        ],
        dir.path(),
    );
    assert!(r2["r2"].as_u64().unwrap() >= 12);

    let projected = run_ok(
        &["gap", "project", "--gap", "q.json", "--keep", "2"],
        dir.path(),
    );
    assert_eq!(projected["generators"], serde_json::json!([[0, 1]]));

    // 0 is not a valid 1-based index
    let out = run_raw(
        &["gap", "project", "--gap", "q.json", "--keep", "0"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    let sphere = run_ok(
        &["construct", "--family", "sphere", "--norm2", "25", "--dim", "2"],
        dir.path(),
    );
    fs::write(dir.path().join("v.json"), sphere.to_string()).unwrap();
    let cover = run_ok(
        &["gap", "cover", "--gap", "q.json", "--set", "v.json"],
        dir.path(),
    );
    assert_eq!(cover["num"], "1");
    assert_eq!(cover["den"], "1");
}

#[test]
fn incidence_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = run_ok(
        &["construct", "--family", "sphere", "--norm2", "9", "--dim", "3"],
        dir.path(),
    );
    fs::write(dir.path().join("v.json"), sphere.to_string()).unwrap();

    let report = run_ok(
        &["incidence", "conj1", "--set", "v.json", "--json"],
        dir.path(),
    );
    assert_eq!(report["n"], 30);
    assert_eq!(report["plane_richness"], 8);
    assert_eq!(report["hypothesis_ok"], true);

    // human-readable variant prints aligned text, not JSON
    let out = run_raw(&["incidence", "conj1", "--set", "v.json"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("plane richness"));

    let zero = serde_json::json!({"dim": 3, "scale2": null, "vectors": [[0, 0, 0]]});
    fs::write(dir.path().join("zero.json"), zero.to_string()).unwrap();
    let conj2 = run_ok(
        &[
            "incidence", "conj2", "--points", "v.json", "--centers", "zero.json",
            "--r2", "9", "--n", "30", "--json",
        ],
        dir.path(),
    );
    assert_eq!(conj2["p"], 30);
    assert_eq!(conj2["violations"].as_array().unwrap().len(), 0);

    let fiber = run_ok(
        &[
            "incidence", "fiber", "--set", "v.json", "--w", "3,3,4", "--json",
        ],
        dir.path(),
    );
    assert_eq!(fiber["coplanar"], true);
    assert!(!fiber["fiber"].as_array().unwrap().is_empty());
}

#[test]
fn mc_and_polya_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = run_ok(
        &["construct", "--family", "sphere", "--norm2", "25", "--dim", "2"],
        dir.path(),
    );
    fs::write(dir.path().join("v.json"), sphere.to_string()).unwrap();

    let a = run_ok(
        &[
            "mc", "--set", "v.json", "--target", "0,0", "--samples", "20000", "--seed", "42",
        ],
        dir.path(),
    );
    let b = run_ok(
        &[
            "mc", "--set", "v.json", "--target", "0,0", "--samples", "20000", "--seed", "42",
        ],
        dir.path(),
    );
    assert_eq!(a["p_hat"], b["p_hat"]);

    let polya = run_ok(&["polya", "--dim", "1", "--steps", "4"], dir.path());
    assert_eq!(polya["num"], "3");
    assert_eq!(polya["den"], "8");

    let bounds = run_ok(&["bounds", "--dim", "4", "--f-range", "3:5"], dir.path());
    assert_eq!(bounds["bound_exponent"]["num"], "4");
    let table = bounds["f_table"].as_array().unwrap();
    assert_eq!(table[0]["num"], "9");
    assert_eq!(table[0]["den"], "2");
    assert_eq!(table[2]["num"], "25");
    assert_eq!(table[2]["den"], "6");

    let out = run_raw(&["bounds", "--dim", "2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
