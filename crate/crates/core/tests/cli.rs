use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nearortho"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().args(args).env("NEARORTHO_OUT_DIR", dir).current_dir(dir).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

#[test]
fn ramsey_prints_binomial() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["ramsey", "--d", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["bound"], "15");
    let out = run(dir.path(), &["ramsey", "--d", "4", "--k", "2", "--format", "text"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("bound: 15"));
}

#[test]
fn graph_build_and_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["graph", "build", "--p", "3", "--t", "2", "--policy", "all-nonzero"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["n"], 8);
    let file = dir.path().join("graph-p3-t2-all-nonzero.txt");
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("p=3 t=2 policy=all-nonzero n=8\n"));
    assert_eq!(text.lines().count(), 9);

    let out = run(dir.path(), &["graph", "spectrum", file.to_str().unwrap(), "--tol", "1e-6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["passes"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["graph", "build", "--p", "4", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("4 is not prime"));
    assert_eq!(run(dir.path(), &["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["graph", "spectrum", "missing.txt"]).status.code(), Some(2));
}

#[test]
fn budget_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["graph", "build", "--p", "3", "--t", "9"]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::write(dir.path().join("basis.txt"), "p=3 d=12\n".to_string() + &(0..12).map(|i| {
        (0..12).map(|j| if i == j { "1" } else { "0" }).collect::<Vec<_>>().join(",") + "\n"
    }).collect::<String>()).unwrap();
    let out = run(dir.path(), &["verify", "beta", "basis.txt", "--k", "3", "--ell", "2", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tuples"));
}

#[test]
fn container_golden_base_case() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("h.txt"), "parts=3\n0;1/2\n1;1/2\n").unwrap();
    let out = run(dir.path(), &["container", "run", "h.txt", "--u", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["container"]["container"], serde_json::json!([2]));
    assert_eq!(r["results"]["container"]["zeta"], "2/3");
    assert_eq!(r["results"]["minimal_k"], "3/2");

    let out = run(dir.path(), &["container", "verify", "h.txt", "--u", "2", "--reconstruct", "4", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["verification"]["reconstruction_trials"], 4);

    let out = run(dir.path(), &["container", "run", "h.txt", "--u", "0,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("independence violated"));
}

#[test]
fn underpin_with_no_samples_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["underpin", "verify", "--p", "3", "--t", "3", "--ell", "2", "--samples", "0", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["total"], 0);
}

#[test]
fn underpin_explicit_mode() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "underpin", "verify", "--p", "3", "--t", "2", "--ell", "2", "--samples", "10", "--seed", "5", "--explicit",
        "--c-prime", "0.25", "--tau", "1",
    ];
    let out = run(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["explicit"]["failures"], 0);
    assert!(r["results"]["explicit"]["bound"]["ln_total"].as_f64().unwrap().is_finite());
}

#[test]
fn underpin_csv_has_one_row_per_tuple() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["underpin", "verify", "--p", "2", "--t", "4", "--samples", "7", "--seed", "3", "--format", "csv"];
    let out = run(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().next().unwrap().contains("layer"));
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["construct", "sample", "--p", "3", "--t", "2", "--m", "2", "--ell", "1", "--k", "2", "--seed", "7", "--out", "set.txt"],
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["r"], 3);
    assert_eq!(r["results"]["transfer"]["violations"], serde_json::json!([]));
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("set.txt.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["params"]["seed"], 7);

    let out = run(dir.path(), &["verify", "beta", "set.txt", "--k", "2", "--ell", "1", "--mode", "exhaustive"]);
    let code = out.status.code().unwrap();
    let r = report(&out);
    let verdict = r["results"]["verdict"].as_str().unwrap();
    assert_eq!(code == 0, verdict == "pass");
    if verdict == "fail" {
        assert_eq!(r["results"]["witness_sound"], true);
    } else {
        assert_eq!(r["results"]["implies_alpha"], true);
    }
}

#[test]
fn search_reports_ramsey_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["search", "--p", "2", "--d", "3", "--k", "2", "--ell", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["search"]["complete"], true);
    assert_eq!(r["results"]["below_ramsey_bound"], true);
    assert_eq!(r["results"]["ramsey_bound"], "10");
}

#[test]
fn generated_seed_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["underpin", "verify", "--p", "3", "--t", "2", "--samples", "2"]);
    let r = report(&out);
    assert!(r["seed"].as_u64().is_some());
}

fn payload(out: &Output) -> String {
    let r = report(out);
    serde_json::to_string(&serde_json::json!({
        "command": r["command"],
        "params": r["params"],
        "seed": r["seed"],
        "passed": r["passed"],
        "results": r["results"],
        "table": r["table"],
    }))
    .unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["underpin", "verify", "--p", "3", "--t", "3", "--samples", "20", "--seed", "42", "--c-prime", "0.25", "--tau", "2"],
        vec!["construct", "sample", "--p", "3", "--t", "2", "--m", "2", "--ell", "1", "--k", "2", "--seed", "7", "--out", "a.txt"],
        vec!["graph", "spectrum", "--p", "2", "--t", "4"],
        vec!["search", "--p", "2", "--d", "3", "--k", "2", "--ell", "1"],
    ];
    for args in cases {
        let first = run(dir.path(), &args);
        let second = run(dir.path(), &args);
        assert_eq!(first.status.code(), second.status.code());
        assert_eq!(payload(&first), payload(&second), "{args:?}");
    }
    let threaded = run(
        dir.path(),
        &["underpin", "verify", "--p", "3", "--t", "3", "--samples", "20", "--seed", "42", "--c-prime", "0.25", "--tau", "2", "--threads", "4"],
    );
    let single = run(
        dir.path(),
        &["underpin", "verify", "--p", "3", "--t", "3", "--samples", "20", "--seed", "42", "--c-prime", "0.25", "--tau", "2"],
    );
    assert_eq!(report(&threaded)["results"], report(&single)["results"]);
    assert_eq!(report(&threaded)["table"], report(&single)["table"]);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["ramsey", "--d", "2", "--k", "2", "--output", "r.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(r["results"]["bound"], "6");
}
