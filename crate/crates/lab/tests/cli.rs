use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hardy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const PASSING: &str = r#"{
  "scenario": "tiny",
  "inner": {"kind": "blaschke", "zeros": [[0.0, 0.0], [0.3, 0.1]]},
  "seed": 11,
  "checks": [
    {"check": "double_cauchy", "triples": 5},
    {"check": "preimage_measure", "targets": [{"measure": 0.5, "start": 1.0}]}
  ]
}"#;

#[test]
fn passing_run_exits_zero_and_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "tiny.json", PASSING);
    let out_dir = dir.path().join("out");
    let out = hardy(&["run", &config, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("tiny: 6/6 rows passed"));
    let csv = fs::read_to_string(out_dir.join("tiny.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("scenario,check,params,lhs_re,lhs_im,rhs_re,rhs_im,residual,tolerance,pass")
    );
    assert_eq!(lines.count(), 6);
}

#[test]
fn a_failed_check_exits_one_and_the_run_continues() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "shifted.json",
        r#"{
          "scenario": "shifted",
          "inner": {"kind": "blaschke", "zeros": [[0.5, 0.0]]},
          "checks": [
            {"check": "preimage_measure", "targets": [{"measure": 0.5, "start": 0.3}], "expect": "equal"},
            {"check": "double_cauchy", "triples": 3}
          ]
        }"#,
    );
    let out = hardy(&["run", &config, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("shifted: 3/4 rows passed"), "{text}");
    assert!(text.contains("FAIL preimage_measure"));
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_config(dir.path(), "empty.json", r#"{"scenario": "e", "checks": []}"#);
    let out = hardy(&["run", &empty]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    let out = hardy(&["run", "no-such-scenario"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_format_and_seed_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "tiny.json", PASSING);
    let run = |seed: &str, sub: &str| {
        let out_dir = dir.path().join(sub);
        let out = hardy(&["run", &config, "--out", out_dir.to_str().unwrap(), "--format", "json", "--seed", seed]);
        assert_eq!(out.status.code(), Some(0));
        fs::read_to_string(out_dir.join("tiny.json")).unwrap()
    };
    let a = run("1", "a");
    let b = run("2", "b");
    let rows: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 6);
    assert_eq!(rows[0]["check"], "double_cauchy");
    assert_ne!(a, b);
}

#[test]
fn reports_are_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for jobs in ["1", "4"] {
        let out_dir = dir.path().join(jobs);
        let out = hardy(&["run", "shifted-zero", "--out", out_dir.to_str().unwrap(), "--jobs", jobs]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        reports.push((
            fs::read(out_dir.join("shifted-zero.csv")).unwrap(),
            fs::read(out_dir.join("shifted-zero-dominance.csv")).unwrap(),
        ));
    }
    assert!(reports[0] == reports[1]);
}

#[test]
fn list_and_describe() {
    let out = hardy(&["list-scenarios"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for (name, _) in hardy_lab::scenarios::BUNDLED {
        assert!(text.contains(name));
    }
    assert!(!text.contains("invalid"));

    let out = hardy(&["describe", "dominance"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("dominance\n"));

    let out = hardy(&["describe", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("known checks"));
}
