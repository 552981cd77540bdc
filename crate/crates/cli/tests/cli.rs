use std::io::Write;
use std::process::{Command, Output};

use spinstat_cli::{Report, SUITES};

fn spinstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinstat"))
        .args(args)
        .env_remove("SPINSTAT_CONFIG")
        .output()
        .expect("binary runs")
}

fn json_report(out: &Output) -> Report {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn group_suite_passes_and_round_trips() {
    let out = spinstat(&["--suite", "group", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert!(!report.records.is_empty() && report.all_pass());
    assert!(report.records.iter().all(|r| r.suite == "group"));
    let again: Report = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(again, report);
    assert_eq!(report.to_json().as_bytes(), &out.stdout[..]);
}

#[test]
fn same_seed_gives_identical_bytes() {
    let args = ["--suite", "all", "--seed", "77", "--format", "json"];
    let (a, b) = (spinstat(&args), spinstat(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = spinstat(&["--suite", "all", "--seed", "78", "--format", "json"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn broken_tolerance_fails_with_status_one() {
    let out = spinstat(&["--suite", "all", "--tol-engine", "1e-20", "--tol-boundary", "1e-20", "--tol-pipeline", "1e-20", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json_report(&out);
    assert!(!report.all_pass());
    assert_eq!(report.suites.len(), SUITES.len());
}

#[test]
fn empty_suite_list_gives_empty_report() {
    let out = spinstat(&["--suite", "none", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert!(report.records.is_empty() && report.suites.is_empty());
}

#[test]
fn text_lines_carry_anchors() {
    let out = spinstat(&["--suite", "wigner,cones"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let json = json_report(&spinstat(&["--suite", "wigner,cones", "--format", "json"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), json.records.len() + 1);
    for (line, record) in lines.iter().zip(&json.records) {
        assert!(line.starts_with("PASS") && line.contains(&record.anchor), "{line}");
    }
}

#[test]
fn csv_has_one_row_per_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = spinstat(&["--suite", "cones", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut rd = csv::Reader::from_path(&path).unwrap();
    let headers = rd.headers().unwrap().clone();
    assert_eq!(&headers[0], "suite");
    let rows: Vec<_> = rd.records().map(|r| r.unwrap()).collect();
    let report = json_report(&spinstat(&["--suite", "cones", "--format", "json"]));
    assert_eq!(rows.len(), report.records.len());
    for (row, rec) in rows.iter().zip(&report.records) {
        assert_eq!(&row[1], rec.anchor);
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# pipeline subset\nspins = 0.25\nmass = 1.3\nn = 2\nseed = 5").unwrap();
    let path = file.path().to_str().unwrap();
    let out = spinstat(&["--config", path, "--suite", "pauli-lubanski", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report.config.spins, vec![0.25]);
    assert_eq!(report.config.masses, vec![1.3]);
    assert_eq!(report.records.len(), 1);

    let out = spinstat(&["--config", path, "--spin", "0.5,0", "--suite", "pauli-lubanski", "--format", "json"]);
    let report = json_report(&out);
    assert_eq!(report.config.spins, vec![0.5, 0.0]);
    assert_eq!(report.config.seed, 5);

    let out = Command::new(env!("CARGO_BIN_EXE_spinstat"))
        .args(["--suite", "none", "--format", "json"])
        .env("SPINSTAT_CONFIG", path)
        .output()
        .unwrap();
    assert_eq!(json_report(&out).config.masses, vec![1.3]);
}

#[test]
fn configuration_errors_give_status_two() {
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = red").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["--config", bad.path().to_str().unwrap()],
        vec!["--config", "/nonexistent/spinstat.cfg"],
        vec!["--suite", "bogus"],
        vec!["--mass", "-1"],
        vec!["--tol-pipeline", "0"],
        vec!["--spin", "nan"],
        vec!["--grid", "0"],
        vec!["--format", "yaml"],
    ];
    for args in cases {
        let out = spinstat(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn spinstat_suite_recovers_the_cube_root_phase() {
    let out = spinstat(&["--suite", "spinstat", "--spin", "0.3333333333333333", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    let phase: Vec<_> = report.records.iter().filter(|r| r.anchor.starts_with("statistics phase")).collect();
    assert!(!phase.is_empty());
    assert!(phase.iter().all(|r| r.pass && r.residuals["phase"] < 1e-8));
}
