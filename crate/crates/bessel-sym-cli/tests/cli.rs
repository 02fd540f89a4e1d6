//! Black-box tests of the `bessel-sym` binary: exit-code contract,
//! stdout/file output, precedence rules, and byte-determinism across
//! parallelism degrees.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bessel-sym"));
    cmd.env_remove("BESSEL_SYM_TOL");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn passing_sweep_exits_zero_with_json_on_stdout() {
    let out = run(&[
        "--identity",
        "theorem1",
        "--m",
        "0..3",
        "--n",
        "0..3",
        "--z",
        "1.0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["summary"]["total"], 16);
    assert_eq!(doc["summary"]["passed"], 16);
    assert_eq!(doc["results"].as_array().unwrap().len(), 16);
}

#[test]
fn failing_residual_exits_one() {
    // an impossibly tight tolerance forces off-diagonal failures
    let out = run(&[
        "--identity",
        "theorem1",
        "--m",
        "0..2",
        "--n",
        "0..2",
        "--z",
        "2.0",
        "--tol",
        "1e-18",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    // unknown identity
    let out = run(&["--identity", "nonsense", "--m", "0..1", "--n", "0..1"]);
    assert_eq!(out.status.code(), Some(2));
    // missing z grid for theorem1
    let out = run(&["--identity", "theorem1", "--m", "0..1", "--n", "0..1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("theorem1") && err.contains('z'), "{err}");
    // empty z grid
    let out = run(&[
        "--identity", "theorem1", "--m", "0..1", "--n", "0..1", "--z", "",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // malformed range
    let out = run(&["--identity", "eq19", "--m", "5..1", "--n", "0..1"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flag (clap's own usage error)
    let out = run(&["--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // unwritable output path
    let out = run(&[
        "--identity",
        "eq19",
        "--m",
        "0..1",
        "--n",
        "0..1",
        "--out",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_parallelism() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (jobs, format) in [("1", "json"), ("8", "json"), ("1", "csv"), ("8", "csv")] {
        let path = dir.path().join(format!("report-{jobs}.{format}"));
        let out = run(&[
            "--identity",
            "theorem1,eq5,eq11,eq19",
            "--m",
            "0..4",
            "--n",
            "0..6",
            "--z",
            "0.5,2.0",
            "--s",
            "2.5,6.0",
            "--jobs",
            jobs,
            "--format",
            format,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push((format, std::fs::read(&path).unwrap()));
    }
    assert_eq!(outputs[0].1, outputs[1].1, "json must not depend on --jobs");
    assert_eq!(outputs[2].1, outputs[3].1, "csv must not depend on --jobs");
    assert_ne!(outputs[0].1, outputs[2].1);
}

#[test]
fn env_var_is_lowest_precedence_tolerance() {
    // absurd tolerance from the environment fails the sweep…
    let out = bin()
        .args(["--identity", "theorem1", "--m", "0..2", "--n", "0..2", "--z", "2.0"])
        .env("BESSEL_SYM_TOL", "1e-18")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // …but an explicit flag overrides it
    let out = bin()
        .args([
            "--identity", "theorem1", "--m", "0..2", "--n", "0..2", "--z", "2.0", "--tol", "1e-9",
        ])
        .env("BESSEL_SYM_TOL", "1e-18")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // a malformed value is a usage error
    let out = bin()
        .args(["--identity", "eq19", "--m", "0..1", "--n", "0..1"])
        .env("BESSEL_SYM_TOL", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(
        &cfg,
        "# sweep config\nidentity = eq19\nm = 0..12\nn = 0..12\nformat = csv\n",
    )
    .unwrap();
    let out = bin()
        .args([
            "--identity",
            "theorem1", // overridden by the file
            "--m",
            "0..1",
            "--n",
            "0..1",
            "--config",
            cfg.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 169, "169 eq19 records");
    assert!(lines[1].starts_with("eq19,0,0,"));
    // missing config file is a usage error
    let out = run(&["--identity", "eq19", "--config", "/no/such/file.cfg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn skipped_poles_do_not_fail_the_sweep() {
    let out = run(&[
        "--identity", "eq11", "--n", "0..10", "--s", "6.0", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["summary"]["skipped_poles"], 3);
    assert_eq!(doc["summary"]["failed"], 0);
    // the skipped rows keep identity/params and carry the reason
    let results = doc["results"].as_array().unwrap();
    let skipped: Vec<_> = results
        .iter()
        .filter(|r| r["pass"].is_null())
        .collect();
    assert_eq!(skipped.len(), 3);
    assert!(skipped[0]["notes"]
        .as_str()
        .unwrap()
        .starts_with("skipped:"));
    assert!(skipped[0]["lhs"].is_null());
}

#[test]
fn stdout_and_file_output_match() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = [
        "--identity",
        "eq22",
        "--m",
        "0..5",
        "--n",
        "0..5",
    ];
    let stdout_run = run(&args);
    assert_eq!(stdout_run.status.code(), Some(0));
    let mut file_args: Vec<&str> = args.to_vec();
    file_args.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let file_run = run(&file_args);
    assert_eq!(file_run.status.code(), Some(0));
    assert_eq!(stdout_run.stdout, std::fs::read(&path).unwrap());
    assert!(Path::new(&path).exists());
}
