//! Suite configuration: defaults, config files (JSON or `key = value`) and
//! validation.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "SPINSTAT_CONFIG";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub spins: Vec<f64>,
    pub masses: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub seed: u64,
    /// Caps the pinned tolerances of group, Wigner, cone and engine checks.
    pub tol_engine: Option<f64>,
    /// Caps the pinned tolerances of boundary-value and analyticity checks.
    pub tol_boundary: Option<f64>,
    /// Caps the pinned tolerances of the pipeline and Pauli–Lubanski checks.
    pub tol_pipeline: Option<f64>,
    /// Points per axis of the momentum grid of the pipeline.
    pub grid: usize,
    /// Random samples per group-law property.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            spins: vec![0.0, 0.25, 1.0 / 3.0, 0.5, 0.137],
            masses: vec![1.0, 1.7],
            multiplicities: vec![1, 2],
            seed: 20240501,
            tol_engine: None,
            tol_boundary: None,
            tol_pipeline: None,
            grid: 5,
            samples: 1000,
        }
    }
}

/// Partially specified configuration, as read from a file or flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub spins: Option<Vec<f64>>,
    pub masses: Option<Vec<f64>>,
    pub multiplicities: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub tol_engine: Option<f64>,
    pub tol_boundary: Option<f64>,
    pub tol_pipeline: Option<f64>,
    pub grid: Option<usize>,
    pub samples: Option<usize>,
}

impl SuiteConfig {
    pub fn apply(&mut self, o: &ConfigOverrides) {
        if let Some(v) = &o.spins {
            self.spins = v.clone();
        }
        if let Some(v) = &o.masses {
            self.masses = v.clone();
        }
        if let Some(v) = &o.multiplicities {
            self.multiplicities = v.clone();
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if o.tol_engine.is_some() {
            self.tol_engine = o.tol_engine;
        }
        if o.tol_boundary.is_some() {
            self.tol_boundary = o.tol_boundary;
        }
        if o.tol_pipeline.is_some() {
            self.tol_pipeline = o.tol_pipeline;
        }
        if let Some(v) = o.grid {
            self.grid = v;
        }
        if let Some(v) = o.samples {
            self.samples = v;
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(s) = self.spins.iter().find(|s| !s.is_finite()) {
            return Err(err(format!("spin {s} is not finite")));
        }
        if let Some(m) = self.masses.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
            return Err(err(format!("mass {m} must be positive")));
        }
        if self.multiplicities.iter().any(|&n| n == 0) {
            return Err(err("multiplicities must be positive"));
        }
        for (name, tol) in [
            ("tol_engine", self.tol_engine),
            ("tol_boundary", self.tol_boundary),
            ("tol_pipeline", self.tol_pipeline),
        ] {
            if let Some(t) = tol {
                if !(t.is_finite() && t > 0.0) {
                    return Err(err(format!("{name} = {t} must be positive")));
                }
            }
        }
        if self.grid == 0 || self.samples == 0 {
            return Err(err("grid and samples must be positive"));
        }
        Ok(())
    }
}

fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| v.parse().map_err(|_| err(format!("bad value {v:?} for {key}"))))
        .collect()
}

fn scalar<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| err(format!("bad value {value:?} for {key}")))
}

/// Parses a config file body: a JSON object, or `key = value` lines with
/// `#` comments and comma-separated lists.
pub fn parse_config(text: &str) -> Result<ConfigOverrides, ConfigError> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| err(format!("config JSON: {e}")));
    }
    let mut o = ConfigOverrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "spins" | "spin" => o.spins = Some(list(&key, value)?),
            "masses" | "mass" => o.masses = Some(list(&key, value)?),
            "multiplicities" | "n" => o.multiplicities = Some(list(&key, value)?),
            "seed" => o.seed = Some(scalar(&key, value)?),
            "tol_engine" => o.tol_engine = Some(scalar(&key, value)?),
            "tol_boundary" => o.tol_boundary = Some(scalar(&key, value)?),
            "tol_pipeline" => o.tol_pipeline = Some(scalar(&key, value)?),
            "grid" => o.grid = Some(scalar(&key, value)?),
            "samples" => o.samples = Some(scalar(&key, value)?),
            _ => return Err(err(format!("line {}: unknown key {key:?}", i + 1))),
        }
    }
    Ok(o)
}

pub fn load_config(path: &Path) -> Result<ConfigOverrides, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| err(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_and_json_agree() {
        let kv = parse_config("# run\nspins = 0.5, 0.25\nmass=1.7\ntol-pipeline = 1e-7\nseed = 3\n").unwrap();
        let js = parse_config(r#"{"spins": [0.5, 0.25], "masses": [1.7], "tol_pipeline": 1e-7, "seed": 3}"#).unwrap();
        assert_eq!(kv, js);
        let mut cfg = SuiteConfig::default();
        cfg.apply(&kv);
        assert_eq!(cfg.spins, vec![0.5, 0.25]);
        assert_eq!(cfg.tol_pipeline, Some(1e-7));
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn bad_input_is_rejected() {
        assert!(parse_config("spins 0.5").is_err());
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("seed = -1").is_err());
        assert!(parse_config(r#"{"spin": [1]}"#).is_err());
        let mut cfg = SuiteConfig::default();
        cfg.masses = vec![0.0];
        assert!(cfg.validate().is_err());
        let mut cfg = SuiteConfig::default();
        cfg.tol_engine = Some(-1.0);
        assert!(cfg.validate().is_err());
        let mut cfg = SuiteConfig::default();
        cfg.spins = vec![f64::NAN];
        assert!(cfg.validate().is_err());
    }
}
