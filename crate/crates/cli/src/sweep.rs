//! Parameter sweeps of exact W₁ against the linear asymptote.

use std::io::Write;

use rayon::prelude::*;
use treewass_core::asymptotics::{self, Family};
use treewass_core::{rational, GenfunError, Rational};

use crate::error::{CliError, Result};
use crate::report::{self, params, Provenance, Record, RunReport};

pub const CSV_HEADER: [&str; 9] = ["family", "alpha", "d", "q", "n", "w1_exact", "w1_decimal", "asym", "residual"];

/// Largest n a sweep will build series for.
pub const MAX_ORDER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub family: Family,
    pub alpha: Vec<Rational>,
    pub d: Vec<u32>,
    pub q: Vec<u64>,
    pub n: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub family: Family,
    /// `None` for spheres and balls.
    pub alpha: Option<Rational>,
    pub d: u32,
    pub q: u64,
    pub n: usize,
    pub w1: Rational,
    pub asym: Rational,
}

impl SweepRow {
    pub fn residual(&self) -> Rational {
        &self.w1 - &self.asym
    }

    fn alpha_text(&self) -> String {
        self.alpha.as_ref().map(rational::to_string).unwrap_or_default()
    }

    pub fn csv_fields(&self) -> [String; 9] {
        [
            self.family.to_string(),
            self.alpha_text(),
            self.d.to_string(),
            self.q.to_string(),
            self.n.to_string(),
            rational::to_string(&self.w1),
            report::decimal(&self.w1),
            rational::to_string(&self.asym),
            report::decimal(&self.residual()),
        ]
    }

    pub fn record(&self) -> Record {
        let p = params([
            ("family", self.family.to_string()),
            ("alpha", self.alpha_text()),
            ("d", self.d.to_string()),
            ("q", self.q.to_string()),
            ("n", self.n.to_string()),
        ]);
        Record::new(p, &self.w1, Provenance::Genfun).with_asymptote(&self.w1, &self.asym)
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.alpha.is_empty() || self.d.is_empty() || self.q.is_empty() || self.n.is_empty() {
            return Err(CliError::BadArg("sweep ranges must be nonempty".into()));
        }
        let n_max = *self.n.iter().max().expect("nonempty");
        if n_max > MAX_ORDER {
            return Err(GenfunError::OrderExceeded { n: n_max, order: MAX_ORDER }.into());
        }
        Ok(())
    }

    fn alphas(&self) -> Vec<Option<Rational>> {
        match self.family {
            Family::Srw => {
                let mut a = self.alpha.clone();
                a.sort();
                a.dedup();
                a.into_iter().map(Some).collect()
            }
            _ => vec![None],
        }
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let n_max = *spec.n.iter().max().expect("validated");
    let mut cases = Vec::new();
    for alpha in spec.alphas() {
        for &d in &spec.d {
            for &q in &spec.q {
                cases.push((alpha.clone(), d, q));
            }
        }
    }
    let chunks: Vec<Vec<SweepRow>> = cases
        .par_iter()
        .map(|(alpha, d, q)| -> Result<Vec<SweepRow>> {
            let a = alpha.clone().unwrap_or_default();
            let asym = asymptotics::family_ab(spec.family, &a, *d, *q)?;
            let seq = asymptotics::exact_sequence(spec.family, &a, *d, *q, n_max)?;
            Ok(spec
                .n
                .iter()
                .map(|&n| SweepRow {
                    family: spec.family,
                    alpha: alpha.clone(),
                    d: *d,
                    q: *q,
                    n,
                    w1: seq[n].clone(),
                    asym: asym.value(n as u64),
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<SweepRow> = chunks.into_iter().flatten().collect();
    rows.sort_by(|a, b| (&a.alpha, a.d, a.q, a.n).cmp(&(&b.alpha, b.d, b.q, b.n)));
    rows.dedup_by(|a, b| (&a.alpha, a.d, a.q, a.n) == (&b.alpha, b.d, b.q, b.n));
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.csv_fields())?;
    }
    w.flush().map_err(|e| CliError::Io { path: "<output>".into(), source: e })?;
    Ok(())
}

pub fn to_report(rows: &[SweepRow]) -> RunReport {
    RunReport { records: rows.iter().map(SweepRow::record).collect(), ..Default::default() }
}
