//! Acceptance criteria, one line each. Run with
//! `cargo test -p spinstat-cli --test acceptance`.

use std::process::Command;

use spinstat_cli::{run, run_suite, Record, SuiteConfig, SUITES};

struct Verdict {
    pass: bool,
    detail: String,
}

fn summarize(records: &[Record]) -> Verdict {
    let failed: Vec<&str> = records.iter().filter(|r| !r.pass).map(|r| r.anchor.as_str()).collect();
    let worst = records
        .iter()
        .filter(|r| r.expect == spinstat_cli::Expect::Below)
        .map(|r| r.decisive_residual() / r.tolerance)
        .fold(0.0, f64::max);
    Verdict {
        pass: !records.is_empty() && failed.is_empty(),
        detail: if records.is_empty() {
            "no checks ran".into()
        } else if failed.is_empty() {
            format!("{} checks, worst residual/tolerance {worst:.1e}", records.len())
        } else {
            format!("failed: {}", failed.join("; "))
        },
    }
}

fn suite(name: &str, config: &SuiteConfig) -> Vec<Record> {
    run_suite(name, config, false).expect("valid configuration")
}

fn group_records(boost: bool) -> Vec<Record> {
    let config = SuiteConfig::default();
    assert!(config.samples >= 1000);
    suite("group", &config).into_iter().filter(|r| r.anchor.starts_with("complex boost") == boost).collect()
}

fn criterion_1() -> Verdict {
    let records = group_records(false);
    let sampled = records.iter().all(|r| r.inputs["samples"].as_u64().is_some_and(|n| n >= 1000));
    let mut v = summarize(&records);
    v.pass &= sampled && records.len() >= 5;
    v
}

fn criterion_2() -> Verdict {
    let records = group_records(true);
    let mut v = summarize(&records);
    v.pass &= records.len() == 2;
    v
}

fn criterion_3() -> Verdict {
    let records = suite("wigner", &SuiteConfig::default());
    let mut v = summarize(&records);
    v.pass &= records.len() == 3 && records[0].inputs["triples"].as_u64() >= Some(1000);
    v
}

fn continuation() -> Vec<Record> {
    suite("continuation", &SuiteConfig::default())
}

fn criterion_4() -> Verdict {
    let records: Vec<Record> =
        continuation().into_iter().filter(|r| !r.anchor.starts_with("logarithmic-derivative")).collect();
    let control = records.iter().any(|r| r.expect == spinstat_cli::Expect::Above);
    let mut v = summarize(&records);
    v.pass &= control && records.len() == 3;
    v
}

fn criterion_5() -> Verdict {
    let mut records = Vec::new();
    for (masses, spins) in [(vec![1.0], vec![0.0, 0.5]), (vec![1.7], vec![0.137])] {
        let config = SuiteConfig { masses, spins, ..SuiteConfig::default() };
        records.extend(suite("pauli-lubanski", &config));
    }
    let mut v = summarize(&records);
    v.pass &= records.len() == 3;
    v
}

fn criterion_6() -> Verdict {
    let records = suite("cones", &SuiteConfig::default());
    let enough = records
        .iter()
        .filter_map(|r| r.inputs.get("cases").and_then(|c| c.as_u64()))
        .all(|n| n >= 200);
    let mut v = summarize(&records);
    v.pass &= enough && records.len() == 4;
    v
}

fn criterion_7() -> Verdict {
    let config = SuiteConfig { masses: vec![1.0], multiplicities: vec![1, 2], ..SuiteConfig::default() };
    assert_eq!(config.spins, vec![0.0, 0.25, 1.0 / 3.0, 0.5, 0.137]);
    let records = suite("spinstat", &config);
    let phases = records.iter().filter(|r| r.anchor.starts_with("statistics phase")).count();
    let mut v = summarize(&records);
    v.pass &= phases == config.spins.len() * config.multiplicities.len();
    v
}

fn criterion_8() -> Verdict {
    let records: Vec<Record> =
        continuation().into_iter().filter(|r| r.anchor.starts_with("logarithmic-derivative")).collect();
    let mut v = summarize(&records);
    v.pass &= records.len() == 1;
    v
}

fn criterion_9() -> Verdict {
    let names: Vec<String> = SUITES.iter().map(|s| s.to_string()).collect();
    let config = SuiteConfig { seed: 4242, ..SuiteConfig::default() };
    let a = run(&names, &config, false).expect("valid configuration").to_json();
    let b = run(&names, &config, false).expect("valid configuration").to_json();
    let bin = env!("CARGO_BIN_EXE_spinstat");
    let status = |args: &[&str]| {
        Command::new(bin).args(args).env_remove("SPINSTAT_CONFIG").output().expect("binary runs")
    };
    let ok = status(&["--suite", "all", "--seed", "4242", "--format", "json"]);
    let broken = status(&["--suite", "all", "--tol-engine", "1e-20", "--tol-boundary", "1e-20", "--tol-pipeline", "1e-20"]);
    let bad = status(&["--suite", "all", "--mass", "0"]);
    let codes = (ok.status.code(), broken.status.code(), bad.status.code());
    let headless_matches = ok.stdout == a.as_bytes();
    Verdict {
        pass: a == b && headless_matches && codes == (Some(0), Some(1), Some(2)),
        detail: format!(
            "identical reports: {}, binary output identical: {headless_matches}, exit codes {:?}",
            a == b,
            codes
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("group and cover laws", criterion_1),
        ("complex boost analyticity", criterion_2),
        ("Wigner cocycle identities", criterion_3),
        ("boundary formula, analyticity and negative control", criterion_4),
        ("Pauli-Lubanski scalar", criterion_5),
        ("cone geometry", criterion_6),
        ("spin-statistics pipeline", criterion_7),
        ("logarithmic-derivative continuation", criterion_8),
        ("determinism and command-line contract", criterion_9),
    ];
    let mut all = true;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        all &= v.pass;
        println!("criterion {} [{}] {name}: {}", k + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    if !all {
        eprintln!("some acceptance criteria failed");
        std::process::exit(1);
    }
}
