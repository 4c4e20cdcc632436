//! Per-check records and the JSON / CSV report writers.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotAsserted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::NotAsserted => "not-asserted",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

/// How a value is judged against its expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// `|value − expected| ≤ tol`.
    Eq,
    /// `value ≤ expected + tol`.
    Le,
    NotAsserted,
}

impl Comparison {
    pub fn judge(self, value: f64, expected: f64, tol: f64) -> Verdict {
        match self {
            Self::Eq => Verdict::from_bool((value - expected).abs() <= tol),
            Self::Le => Verdict::from_bool(value <= expected + tol),
            Self::NotAsserted => Verdict::NotAsserted,
        }
    }
}

/// One row of a run report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub name: String,
    pub value: f64,
    pub expected: Option<f64>,
    pub tol: Option<f64>,
    pub verdict: Verdict,
    pub wall_time_ms: u64,
    /// Full structured output of the underlying operation, or the error text.
    pub details: serde_json::Value,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, name: impl Into<String>, value: f64, verdict: Verdict) -> Self {
        Self {
            check: check.into(),
            name: name.into(),
            value,
            expected: None,
            tol: None,
            verdict,
            wall_time_ms: 0,
            details: serde_json::Value::Null,
        }
    }

    /// A record judged by `cmp` against `expected ± tol`.
    pub fn compared(check: impl Into<String>, name: impl Into<String>, value: f64, cmp: Comparison, expected: f64, tol: f64) -> Self {
        let mut r = Self::new(check, name, value, cmp.judge(value, expected, tol));
        r.expected = Some(expected);
        r.tol = Some(tol);
        r
    }

    pub fn failed(check: impl Into<String>, name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        let mut r = Self::new(check, name, f64::NAN, Verdict::Fail);
        r.details = serde_json::Value::String(err.to_string());
        r
    }

    pub fn with_details<T: Serialize>(mut self, details: &T) -> Self {
        self.details = serde_json::to_value(details).unwrap_or(serde_json::Value::Null);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub config: serde_json::Value,
    pub checks: Vec<CheckRecord>,
}

impl RunReport {
    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == Verdict::Fail)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut file, self)?;
        file.write_all(b"\n")?;
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        self.write_csv_rows(&mut w)
    }

    pub fn write_csv_rows<W: Write>(&self, w: &mut csv::Writer<W>) -> Result<()> {
        w.write_record(["check", "name", "value", "expected", "tol", "verdict", "wall_time_ms"])?;
        let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        for c in &self.checks {
            w.write_record([
                c.check.clone(),
                c.name.clone(),
                format!("{:e}", c.value),
                opt(c.expected),
                opt(c.tol),
                c.verdict.as_str().to_string(),
                c.wall_time_ms.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
