//! Runs the `bellkit` binary and compares its output with frozen golden files.
//! Set `BELLKIT_BLESS=1` to rewrite the golden files from the current output.

use std::path::{Path, PathBuf};
use std::process::Command;

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn bellkit(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_bellkit"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("spawn bellkit");
    Run {
        status: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("BELLKIT_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

#[test]
fn run_bell_pipeline_reports_01() {
    let r = bellkit(&["run", "programs/bell_pipeline.bk", "--shots", "1"]);
    assert_eq!(r.status, 0, "{}", r.stderr);
    assert!(r.stderr.is_empty(), "{}", r.stderr);
    assert!(r.stdout.contains("[|01>; relative bit Different]"));
    golden("bell_pipeline.txt", &r.stdout);
}

#[test]
fn run_phi_values_json() {
    let r = bellkit(&["run", "programs/phi_values.bk", "--shots", "100000", "--seed", "7", "--format", "json"]);
    assert_eq!(r.status, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let obj = v.as_object().unwrap();
    assert_eq!(obj.keys().collect::<Vec<_>>(), ["counts", "seed", "shots"]);
    assert_eq!(v["shots"], 100_000);
    assert_eq!(v["seed"], 7);
    let counts = v["counts"].as_object().unwrap();
    assert_eq!(counts.keys().collect::<Vec<_>>(), ["A=0,B=0", "A=1,B=1"]);
    for n in counts.values() {
        let n = n.as_u64().unwrap();
        assert!((n as f64 - 50_000.0).abs() < 4.0 * (100_000.0f64 * 0.25).sqrt());
    }
    golden("phi_values_seed7.json", &r.stdout);
}

#[test]
fn run_trace_json_has_per_shot_records() {
    let r = bellkit(&["run", "programs/generalized.bk", "--shots", "4", "--trace", "--format", "json"]);
    assert_eq!(r.status, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 4);
    for (i, shot) in trace.iter().enumerate() {
        assert_eq!(shot["shot"], i);
        let rec = &shot["records"][0];
        assert_eq!(rec["kind"], "value");
        let p = rec["probability"].as_f64().unwrap();
        assert!((p - 0.36).abs() < 1e-12 || (p - 0.64).abs() < 1e-12);
    }
    golden("generalized_trace.json", &r.stdout);
}

#[test]
fn run_text_trace() {
    let r = bellkit(&["run", "programs/generalized.bk", "--shots", "3", "--trace"]);
    assert_eq!(r.status, 0);
    golden("generalized_trace.txt", &r.stdout);
}

#[test]
fn run_uses_program_shots_and_seed() {
    let r = bellkit(&["run", "programs/relative_bit.bk", "--format", "json"]);
    assert_eq!(r.stdout, "{\"counts\":{\"rel=Different\":10000},\"seed\":7,\"shots\":10000}\n");
}

#[test]
fn run_missing_file_is_usage_error() {
    let r = bellkit(&["run", "missing.bk"]);
    assert_eq!(r.status, 1);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("missing.bk"));
}

#[test]
fn run_invalid_program_exits_two_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.bk");
    std::fs::write(&path, "prepare bell phi + s0=2\nmeasure value C\n").unwrap();
    let r = bellkit(&["run", path.to_str().unwrap()]);
    assert_eq!(r.status, 2);
    let lines: Vec<&str> = r.stderr.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].ends_with(":1:23: error: s0 = 2 is outside [0, 1]"), "{}", lines[0]);
    assert!(lines[1].contains(":2:15: error: expected particle A or B"), "{}", lines[1]);

    std::fs::write(&path, "prepare basis 00\napply raw A 1 0 0 0 0 0 2 0\nmeasure relative\n").unwrap();
    let r = bellkit(&["run", path.to_str().unwrap()]);
    assert_eq!(r.status, 2);
    assert!(r.stderr.contains(":2:1: error: non-unitary raw operator"));
}

#[test]
fn run_warnings_go_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("warn.bk");
    std::fs::write(&path, "prepare basis 00\nmeasure value A\nmeasure value B\napply flip A\n").unwrap();
    let r = bellkit(&["run", path.to_str().unwrap(), "--shots", "2"]);
    assert_eq!(r.status, 0);
    assert!(r.stderr.contains(":4:1: warning:"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(bellkit(&[]).status, 1);
    assert_eq!(bellkit(&["run"]).status, 1);
    assert_eq!(bellkit(&["run", "programs/phi_values.bk", "--shots", "0"]).status, 1);
    assert_eq!(bellkit(&["sweep", "--points", "1"]).status, 1);
    assert_eq!(bellkit(&["--help"]).status, 0);
}

#[test]
fn demo_output() {
    let r = bellkit(&["demo"]);
    assert_eq!(r.status, 0);
    golden("demo.txt", &r.stdout);
}

#[test]
fn sweep_csv() {
    let r = bellkit(&["sweep", "--class", "phi", "--points", "5", "--shots", "1000", "--seed", "3"]);
    assert_eq!(r.status, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("s0,defect,p0_analytic,p0_empirical"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first, ["0", "0", "0", "0"]);
    golden("sweep_phi.csv", &r.stdout);

    let r = bellkit(&["sweep", "--class", "psi", "--points", "3", "--shots", "10"]);
    assert_eq!(r.stdout.lines().nth(1), Some("0,0,1,1"));
}

#[test]
fn check_passes() {
    let r = bellkit(&["check"]);
    assert_eq!(r.status, 0, "{}", r.stdout);
    assert!(r.stdout.ends_with("16/16 groups passed\n"));
}

#[test]
fn output_is_byte_identical_across_invocations() {
    for args in [
        &["run", "programs/phi_values.bk", "--shots", "20000", "--seed", "11"][..],
        &["run", "programs/relative_bit.bk", "--trace", "--shots", "50", "--format", "json"],
        &["sweep", "--points", "7", "--shots", "500"],
    ] {
        let a = bellkit(args);
        let b = bellkit(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
