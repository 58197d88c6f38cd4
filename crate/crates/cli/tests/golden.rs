//! End-to-end runs of the binary. Files under `tests/golden/` pin the output
//! schema; set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_asep2"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(actual, want, "output differs from {}", path.display());
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn steady_single_site() {
    let o = run(&["steady", "--n", "1", "--m", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["components"].as_object().unwrap().len(), 1);
    assert_eq!(v["components"]["*"]["value"], "1");
    check_golden("steady_n1_m1.json", &stdout(&o));
}

#[test]
fn steady_three_sites() {
    let o = run(&["steady", "--n", "3", "--m", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["components"].as_object().unwrap().len(), 12);
    assert_eq!(v["stationarity"]["residual_zero"], true);
    assert_eq!(v["schema_version"], 1);
    check_golden("steady_n3_m1.json", &stdout(&o));
}

#[test]
fn malformed_params_name_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.toml");
    std::fs::write(&f, "s = \"1/2\"\na = \"-1/2\"\nb = \"-2\"\nc = \"-1/2\"\nd = \"1/2\"\n").unwrap();
    let o = run(&["steady", "--n", "2", "--m", "0", "--params", f.to_str().unwrap()]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("ab must differ from 1"), "{err}");

    std::fs::write(&f, "s = 0.5\na = \"-1/2\"\nb = \"1/3\"\nc = \"-1/2\"\nd = \"1/2\"\n").unwrap();
    let o = run(&["steady", "--n", "2", "--m", "0", "--params", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("float"));
}

#[test]
fn size_cap() {
    let o = run(&["steady", "--n", "9", "--m", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-n"));
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "--suite", "hcoeff", "--nmax", "12"],
        vec!["verify", "--suite", "qkz", "--n", "4", "--m", "1"],
        vec!["verify", "--suite", "mimachi", "--n", "4", "--m", "1", "--tol", "1e-8"],
        vec!["verify", "--suite", "hecke", "--n", "3"],
        vec!["verify", "--suite", "ybe", "--n", "3", "--m", "1"],
        vec!["verify", "--suite", "recursions", "--n", "3", "--m", "1"],
        vec!["verify", "--suite", "fugacity", "--n", "3", "--m", "1"],
        vec!["verify", "--suite", "aw-contiguous", "--mmax", "4"],
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = json(&o);
        assert_eq!(v["failed"], 0);
        assert!(v["checks"].as_u64().unwrap() > 0);
    }
}

#[test]
fn failing_check_sets_exit_code() {
    // an unreachable tolerance makes the contour comparison fail
    let o = run(&["verify", "--suite", "mimachi", "--n", "3", "--m", "1", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["pass"], false);
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = run(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn phase_single_point_and_grid() {
    let o = run(&["phase", "--rho-star", "0", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    // (s − 1/s)/4 at s = 1/2
    assert_eq!(row[10], "-0.375");
    assert_eq!(row[12], "maximal-current");

    let o = run(&["phase", "--grid", "11", "--preset", "a-dominated", "--format", "csv"]);
    let text = stdout(&o);
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(2)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    // once the saddle point overtakes a, the phase never returns
    let names: Vec<&str> = rows.iter().map(|r| r[12].as_str()).collect();
    let first_mc = names.iter().position(|n| *n == "maximal-current").unwrap();
    assert!(names[..first_mc].iter().all(|n| *n == "a-dominated"));
    assert!(names[first_mc..].iter().all(|n| *n == "maximal-current"));
    check_golden("phase_grid11_a.csv", &text);
}

#[test]
fn phase_finite_sizes_approach_limit() {
    let o = run(&["phase", "--rho-star", "0.1", "--sizes", "50,100,200", "--preset", "c-dominated"]);
    assert!(o.status.success());
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let num = |r: &serde_json::Value, k: &str| r[k].as_str().unwrap().parse::<f64>().unwrap();
    let limit = num(&rows[0], "rho_bullet");
    let errs: Vec<f64> = rows[1..].iter().map(|r| (num(r, "rho_bullet") - limit).abs()).collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
}

#[test]
fn phase_regime_error() {
    let o = run(&["phase", "--grid", "3", "--set", "a=1/2"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("a < 0"));
}

#[test]
fn simulate_reproducible_and_accurate() {
    let dir = tempfile::tempdir().unwrap();
    let (f1, f2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for f in [&f1, &f2] {
        let o = run(&["simulate", "--n", "3", "--m", "1", "--events", "2e5", "--seed", "11", "--out", f.to_str().unwrap()]);
        assert!(o.status.code().is_some());
    }
    assert_eq!(std::fs::read(&f1).unwrap(), std::fs::read(&f2).unwrap());

    let o = run(&["simulate", "--n", "1", "--m", "0", "--events", "1e6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert!(v["comparison"]["current_z"].as_f64().unwrap().abs() < 3.0);
    assert_eq!(v["simulation"]["config"]["generator"], "ChaCha20Rng");
}

#[test]
fn simulate_four_sites() {
    let o = run(&["simulate", "--n", "4", "--m", "1", "--events", "1e7", "--seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(json(&o)["comparison"]["total_variation"].as_f64().unwrap() < 0.01);
}

#[test]
fn rightward_flips_current() {
    let a = json(&run(&["observables", "--n", "3", "--m", "1"]));
    let b = json(&run(&["observables", "--n", "3", "--m", "1", "--current-convention", "rightward"]));
    let ja = a["current"]["value"].as_f64().unwrap();
    assert!(ja < 0.0);
    assert_eq!(ja, -b["current"]["value"].as_f64().unwrap());
}

#[test]
fn contour_observables_match_exact() {
    let e = json(&run(&["observables", "--n", "5", "--m", "2"]));
    let c = json(&run(&["observables", "--n", "5", "--m", "2", "--method", "contour"]));
    let (je, jc) = (e["current"]["value"].as_f64().unwrap(), c["current"]["value"].as_f64().unwrap());
    assert!((je - jc).abs() < 1e-8 * je.abs());
}

#[test]
fn reference_page_is_current() {
    let o = run(&["reference"]);
    assert!(o.status.success());
    let page = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/cli.md");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&page, stdout(&o)).unwrap();
        return;
    }
    assert_eq!(stdout(&o), std::fs::read_to_string(page).unwrap(), "regenerate with UPDATE_GOLDEN=1");
}
