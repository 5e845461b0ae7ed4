//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::Serialize;
use treewass_core::{rational, Rational};

/// Significant digits of every decimal rendering.
pub const DECIMAL_DIGITS: usize = 12;

pub fn decimal(x: &Rational) -> String {
    rational::to_decimal(x, DECIMAL_DIGITS)
}

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Flow,
    Potential,
    Formula,
    Genfun,
    Lp,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Flow => "flow",
            Provenance::Potential => "potential",
            Provenance::Formula => "formula",
            Provenance::Genfun => "genfun",
            Provenance::Lp => "lp",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub params: BTreeMap<String, String>,
    pub w1_exact: String,
    pub w1_decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asym: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    pub provenance: Provenance,
}

impl Record {
    pub fn new(params: BTreeMap<String, String>, w1: &Rational, provenance: Provenance) -> Self {
        Record {
            params,
            w1_exact: rational::to_string(w1),
            w1_decimal: decimal(w1),
            asym: None,
            residual: None,
            provenance,
        }
    }

    pub fn with_asymptote(mut self, w1: &Rational, asym: &Rational) -> Self {
        self.asym = Some(rational::to_string(asym));
        self.residual = Some(decimal(&(w1 - asym)));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub records: Vec<Record>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<treewass_core::DualityReport>,
}

impl RunReport {
    pub fn check(&mut self, suite: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { suite: suite.into(), name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(&mut self, other: RunReport) {
        self.records.extend(other.records);
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["passed"] = serde_json::Value::Bool(self.passed());
        v
    }
}

pub fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
