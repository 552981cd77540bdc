//! Check records and their JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::config::SuiteConfig;

pub const REPORT_VERSION: u32 = 1;

/// Whether a residual must fall below or exceed its tolerance. `Above` marks
/// a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Below,
    Above,
}

mod finite_or_string {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    fn to_repr(v: f64) -> Repr {
        if v.is_finite() {
            Repr::Num(v)
        } else {
            Repr::Text(v.to_string())
        }
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
        match r {
            Repr::Num(v) => Ok(v),
            Repr::Text(s) => s.parse().map_err(E::custom),
        }
    }

    pub fn serialize<S: Serializer>(map: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<&String, Repr> = map.iter().map(|(k, v)| (k, to_repr(*v))).collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
        let m = BTreeMap::<String, Repr>::deserialize(d)?;
        m.into_iter().map(|(k, r)| Ok((k, from_repr(r)?))).collect()
    }

    pub mod scalar {
        use super::*;

        pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
            to_repr(*v).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
            from_repr(Repr::deserialize(d)?)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    /// What is being checked, in words.
    pub anchor: String,
    pub inputs: BTreeMap<String, Value>,
    #[serde(with = "finite_or_string")]
    pub residuals: BTreeMap<String, f64>,
    #[serde(with = "finite_or_string::scalar")]
    pub tolerance: f64,
    pub expect: Expect,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl Record {
    /// A record judged from its residuals: every residual must be finite and
    /// below (or, for negative controls, above) the tolerance.
    pub fn judged(
        suite: &str,
        anchor: impl Into<String>,
        inputs: BTreeMap<String, Value>,
        residuals: BTreeMap<String, f64>,
        tolerance: f64,
        expect: Expect,
    ) -> Self {
        let pass = !residuals.is_empty()
            && residuals.values().all(|&r| match expect {
                Expect::Below => r.is_finite() && r < tolerance,
                Expect::Above => r > tolerance,
            });
        Self {
            suite: suite.to_string(),
            anchor: anchor.into(),
            inputs,
            residuals,
            tolerance,
            expect,
            pass,
            error: None,
            runtime_ms: None,
        }
    }

    /// A failed record for a check that could not be evaluated.
    pub fn failed(
        suite: &str,
        anchor: impl Into<String>,
        inputs: BTreeMap<String, Value>,
        tolerance: f64,
        error: impl ToString,
    ) -> Self {
        Self {
            suite: suite.to_string(),
            anchor: anchor.into(),
            inputs,
            residuals: BTreeMap::new(),
            tolerance,
            expect: Expect::Below,
            pass: false,
            error: Some(error.to_string()),
            runtime_ms: None,
        }
    }

    /// The residual that decides the verdict: the largest one, or the
    /// smallest one for a negative control. NaN if there is none.
    pub fn decisive_residual(&self) -> f64 {
        let mut it = self.residuals.values().copied();
        let Some(first) = it.next() else {
            return f64::NAN;
        };
        it.fold(first, |a, b| match self.expect {
            _ if a.is_nan() || b.is_nan() => f64::NAN,
            Expect::Below => a.max(b),
            Expect::Above => a.min(b),
        })
    }

    /// `spin`, `mass` and `n` inputs, if present, as `key=value` pairs.
    fn parameter_summary(&self) -> String {
        ["mass", "spin", "n"]
            .iter()
            .filter_map(|k| self.inputs.get(*k).map(|v| format!("{k}={v}")))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub config: SuiteConfig,
    pub suites: Vec<String>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "anchor", "pass", "expect", "tolerance", "decisive_residual", "inputs", "residuals", "error", "runtime_ms"])?;
        for r in &self.records {
            let inputs = serde_json::to_string(&r.inputs).expect("inputs serialise");
            let residuals = serde_json::to_string(&ResidualView(&r.residuals)).expect("residuals serialise");
            w.write_record([
                r.suite.clone(),
                r.anchor.clone(),
                r.pass.to_string(),
                format!("{:?}", r.expect).to_lowercase(),
                format!("{:e}", r.tolerance),
                format!("{:e}", r.decisive_residual()),
                inputs,
                residuals,
                r.error.clone().unwrap_or_default(),
                r.runtime_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let rel = match r.expect {
                Expect::Below => "<",
                Expect::Above => ">",
            };
            let _ = write!(out, "{status} [{}] {}", r.suite, r.anchor);
            let params = r.parameter_summary();
            if !params.is_empty() {
                let _ = write!(out, " ({params})");
            }
            let _ = write!(out, ": residual {:.3e} {rel} {:.1e}", r.decisive_residual(), r.tolerance);
            if let Some(e) = &r.error {
                let _ = write!(out, " ({e})");
            }
            if let Some(t) = r.runtime_ms {
                let _ = write!(out, " [{t:.1} ms]");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{} checks, {} failed", self.records.len(), self.failures());
        out
    }
}

struct ResidualView<'a>(&'a BTreeMap<String, f64>);

impl Serialize for ResidualView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        finite_or_string::serialize(self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut inputs = BTreeMap::new();
        inputs.insert("spin".to_string(), Value::from(0.25));
        let mut res = BTreeMap::new();
        res.insert("a".to_string(), 1e-12);
        res.insert("b".to_string(), f64::INFINITY);
        let bad = Record::judged("x", "diverging check", inputs.clone(), res, 1e-9, Expect::Below);
        let mut res = BTreeMap::new();
        res.insert("gap".to_string(), 0.3);
        let control = Record::judged("x", "control", inputs, res, 1e-3, Expect::Above);
        Report { version: REPORT_VERSION, config: SuiteConfig::default(), suites: vec!["x".into()], records: vec![bad, control] }
    }

    #[test]
    fn judgement_and_round_trip() {
        let report = sample();
        assert!(!report.records[0].pass);
        assert!(report.records[1].pass);
        let json = report.to_json();
        assert!(json.contains("\"inf\""));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn csv_and_text_have_one_line_per_record() {
        let report = sample();
        let csv = report.to_csv().unwrap();
        let mut rd = csv::Reader::from_reader(csv.as_bytes());
        assert_eq!(rd.records().count(), 2);
        let text = report.to_text();
        assert!(text.lines().next().unwrap().starts_with("FAIL [x] diverging check"));
        assert!(text.contains("PASS [x] control"));
    }
}
