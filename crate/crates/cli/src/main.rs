use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use spinstat_cli::{load_config, parse_suites, run, ConfigError, ConfigOverrides, Report, SuiteConfig, CONFIG_ENV};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Runs the verification suites and writes a report.
///
/// Exit status: 0 if every check passes, 1 if any fails, 2 on configuration
/// or I/O errors.
#[derive(Debug, Parser)]
#[command(name = "spinstat", version)]
struct Args {
    /// Suites to run: group, wigner, continuation, cones, pauli-lubanski,
    /// spinstat, all, or none. Repeat or separate with commas.
    #[arg(long = "suite", default_value = "all")]
    suites: Vec<String>,
    /// Spins, comma separated.
    #[arg(long = "spin", value_delimiter = ',', allow_negative_numbers = true)]
    spins: Option<Vec<f64>>,
    /// Masses, comma separated.
    #[arg(long = "mass", value_delimiter = ',', allow_negative_numbers = true)]
    masses: Option<Vec<f64>>,
    /// Multiplicities, comma separated.
    #[arg(long = "n", value_delimiter = ',')]
    multiplicities: Option<Vec<usize>>,
    #[arg(long)]
    seed: Option<u64>,
    /// Upper bound on the tolerances of the engine checks.
    #[arg(long)]
    tol_engine: Option<f64>,
    /// Upper bound on the tolerances of the boundary-value checks.
    #[arg(long)]
    tol_boundary: Option<f64>,
    /// Upper bound on the tolerances of the pipeline checks.
    #[arg(long)]
    tol_pipeline: Option<f64>,
    /// Points per axis of the pipeline momentum grid.
    #[arg(long)]
    grid: Option<usize>,
    /// Random samples per group-law check.
    #[arg(long)]
    samples: Option<usize>,
    /// Config file (JSON or key = value). Defaults to $SPINSTAT_CONFIG.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report file; stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format; inferred from the --out extension, else text.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Record per-check runtimes (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
}

impl Args {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            spins: self.spins.clone(),
            masses: self.masses.clone(),
            multiplicities: self.multiplicities.clone(),
            seed: self.seed,
            tol_engine: self.tol_engine,
            tol_boundary: self.tol_boundary,
            tol_pipeline: self.tol_pipeline,
            grid: self.grid,
            samples: self.samples,
        }
    }

    fn format(&self) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match self.out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            _ => Format::Text,
        }
    }
}

fn resolve(args: &Args) -> Result<(Vec<String>, SuiteConfig), ConfigError> {
    let mut config = SuiteConfig::default();
    let path = args.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    if let Some(path) = path {
        config.apply(&load_config(&path)?);
    }
    config.apply(&args.overrides());
    config.validate()?;
    Ok((parse_suites(&args.suites)?, config))
}

fn render(report: &Report, format: Format) -> Result<String, String> {
    match format {
        Format::Json => Ok(report.to_json()),
        Format::Csv => report.to_csv().map_err(|e| e.to_string()),
        Format::Text => Ok(report.to_text()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (suites, config) = match resolve(&args) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("spinstat: configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&suites, &config, args.timings) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("spinstat: configuration error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = match render(&report, args.format()) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("spinstat: cannot render report: {e}");
            return ExitCode::from(2);
        }
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("spinstat: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!("{} checks, {} failed", report.records.len(), report.failures());
        }
        None => print!("{body}"),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
