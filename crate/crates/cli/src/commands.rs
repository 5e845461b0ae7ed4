//! The single-shot subcommands: w1, series, asym and verify-ineq.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use treewass_core::asymptotics::{self, Family, InequalityReport};
use treewass_core::genfun::{self, GFBundle};
use treewass_core::lp::MAX_SUPPORT;
use treewass_core::radial::{default_radius, radial_flow};
use treewass_core::{
    assignment_from, build_truncated_tree, good_potential, potential_value, rational, unique_flow, verify_duality,
    w1_lp, w1_radial_formula, w1_tree, w1_via_genfun, FiniteGraph, Instance, LpError, Measure, PairGeometry,
    ProfileSpec, Rational, Series1, Tree,
};

use crate::error::{CliError, Result};
use crate::parse::Grid;
use crate::report::{params, Provenance, Record, RunReport};

fn agreement(report: &mut RunReport, suite: &str) {
    let values: Vec<&str> = report.records.iter().map(|r| r.w1_exact.as_str()).collect();
    let same = values.windows(2).all(|w| w[0] == w[1]);
    let names: Vec<String> = report.records.iter().map(|r| format!("{}={}", r.provenance.as_str(), r.w1_exact)).collect();
    report.check(suite, "all paths agree", same, names.join(" "));
}

fn lp_record(
    tree: &Tree,
    mu: &Measure,
    nu: &Measure,
    phi: &treewass_core::Potential,
    p: &std::collections::BTreeMap<String, String>,
    report: &mut RunReport,
) -> Result<()> {
    let graph = FiniteGraph::from_tree(tree);
    match w1_lp(&graph, mu, nu) {
        Ok((value, _)) => {
            report.records.push(Record::new(p.clone(), &value, Provenance::Lp));
            report.duality = Some(verify_duality(&graph, mu, nu, phi)?);
            Ok(())
        }
        Err(LpError::TooLarge { .. }) => Ok(()),
        Err(e) => Err(e.into()),
    }
}

/// W₁ of a tree instance by flow, potential and (when the supports have at
/// most [`MAX_SUPPORT`] points) the LP.
pub fn w1_instance(inst: &Instance) -> Result<RunReport> {
    let (tree, mu, nu) = inst.resolve()?;
    let rho = assignment_from(&mu, &nu)?;
    let flow = unique_flow(&tree, &rho)?;
    let phi = good_potential(&tree, &flow);
    let p = params([("vertices", tree.len().to_string())]);
    let mut report = RunReport::default();
    report.records.push(Record::new(p.clone(), &treewass_core::flow_cost(&flow), Provenance::Flow));
    report.records.push(Record::new(p.clone(), &potential_value(&rho, &phi), Provenance::Potential));
    lp_record(&tree, &mu, &nu, &phi, &p, &mut report)?;
    agreement(&mut report, "w1");
    if let Some(d) = &report.duality {
        report.check("w1", "dual certificate", d.certificate, format!("primal {} dual {}", d.primal, d.dual));
    }
    Ok(report)
}

fn genfun_bundle(spec: &ProfileSpec, g: &PairGeometry) -> Result<Option<(GFBundle, usize)>> {
    let k = g.d as usize / 2 + 1;
    Ok(match spec {
        ProfileSpec::Srw { alpha, n } => Some((genfun::srw_closed_form(alpha, g.q, *n, k)?, *n)),
        ProfileSpec::Sphere { r } => Some((genfun::sphere_gf(g.q, *r, k), *r)),
        ProfileSpec::Ball { r } => Some((genfun::ball_gf(g.q, *r, k), *r)),
        ProfileSpec::Custom(_) => None,
    })
}

/// W₁(μ_X, μ_Y) for a radial profile on 𝕋_{q+1} with dist(X, Y) = d, by
/// formula, tree flow, explicit potential, generating function and LP.
/// Also returns the truncated instance.
pub fn w1_radial(spec: &ProfileSpec, q: u64, d: u32) -> Result<(RunReport, Instance)> {
    let g = PairGeometry::new(q, d)?;
    let profile = spec.profile(q)?;
    let tt = build_truncated_tree(q, d, default_radius(&profile, &g))?;
    let (mu, nu, flow) = radial_flow(&tt, &profile)?;
    let rho = assignment_from(&mu, &nu)?;
    let phi = tt.potential();
    let p = params([("profile", spec.to_string()), ("q", q.to_string()), ("d", d.to_string())]);

    let mut report = RunReport::default();
    report.records.push(Record::new(p.clone(), &w1_radial_formula(&profile, &g), Provenance::Formula));
    report.records.push(Record::new(p.clone(), &treewass_core::flow_cost(&flow), Provenance::Flow));
    report.records.push(Record::new(p.clone(), &potential_value(&rho, &phi), Provenance::Potential));
    if let Some((bundle, n)) = genfun_bundle(spec, &g)? {
        report.records.push(Record::new(p.clone(), &w1_via_genfun(&bundle, &g, n)?, Provenance::Genfun));
    }
    if mu.support().len() <= MAX_SUPPORT && nu.support().len() <= MAX_SUPPORT {
        lp_record(&tt.tree, &mu, &nu, &phi, &p, &mut report)?;
    }
    agreement(&mut report, "w1");
    debug_assert_eq!(w1_tree(&tt.tree, &mu, &nu)?, treewass_core::flow_cost(&flow));
    Ok((report, Instance::from_parts(&tt.tree, &mu, &nu)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesRow {
    pub n: usize,
    #[serde(with = "rational::as_string")]
    pub gamma: Rational,
    #[serde(rename = "G", with = "rational::as_string")]
    pub g: Rational,
    #[serde(rename = "G1", with = "rational::as_string")]
    pub g1: Rational,
}

/// Coefficients of γ(y), G(q, y) and G₁(q, y) to the given order.
pub fn series(family: Family, alpha: &Rational, q: u64, order: usize) -> Result<Vec<SeriesRow>> {
    PairGeometry::new(q, 1)?;
    let bundle = match family {
        Family::Srw => genfun::srw_closed_form(alpha, q, order, 1)?,
        Family::Sphere => genfun::sphere_gf(q, order, 1),
        Family::Ball => genfun::ball_gf(q, order, 1),
    };
    let coeff = |s: &Series1, n: usize| s.coeff(n).clone();
    Ok((0..=order)
        .map(|n| SeriesRow {
            n,
            gamma: coeff(&bundle.gammas[0], n),
            g: coeff(&bundle.g_at_q, n),
            g1: coeff(&bundle.g1_at_q, n),
        })
        .collect())
}

pub fn write_series_csv<W: Write>(rows: &[SeriesRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "gamma", "G", "G1"])?;
    for r in rows {
        w.write_record([r.n.to_string(), rational::to_string(&r.gamma), rational::to_string(&r.g), rational::to_string(&r.g1)])?;
    }
    w.flush().map_err(|e| CliError::Io { path: "<output>".into(), source: e })?;
    Ok(())
}

pub fn asym(family: Family, alpha: &Rational, d: u32, q: u64) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(asymptotics::family_ab(family, alpha, d, q)?)?)
}

/// The inequality chain at every grid point, in (α, d, q) order.
pub fn verify_ineq(grid: &Grid) -> Result<Vec<(Rational, u32, u64, InequalityReport)>> {
    let mut cases = Vec::new();
    for a in &grid.alpha {
        for &d in &grid.d {
            for &q in &grid.q {
                cases.push((a.clone(), d, q));
            }
        }
    }
    let mut rows = cases
        .into_par_iter()
        .map(|(a, d, q)| {
            let r = asymptotics::verify_inequalities(&a, d, q)?;
            Ok((a, d, q, r))
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|x, y| (&x.0, x.1, x.2).cmp(&(&y.0, y.1, y.2)));
    Ok(rows)
}

pub const INEQ_HEADER: [&str; 11] =
    ["alpha", "d", "q", "A_srw", "A_sphere", "A_ball", "B_srw", "B_sphere", "B_ball", "result", "failed"];

pub fn write_ineq_csv<W: Write>(rows: &[(Rational, u32, u64, InequalityReport)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(INEQ_HEADER)?;
    for (a, d, q, r) in rows {
        let failed: Vec<&str> = r.comparisons.iter().filter(|c| !c.holds).map(|c| c.name).collect();
        let s = rational::to_string;
        w.write_record([
            s(a),
            d.to_string(),
            q.to_string(),
            s(&r.srw.a),
            s(&r.sphere.a),
            s(&r.ball.a),
            s(&r.srw.b),
            s(&r.sphere.b),
            s(&r.ball.b),
            if r.all_hold() { "pass".into() } else { "fail".into() },
            failed.join(";"),
        ])?;
    }
    w.flush().map_err(|e| CliError::Io { path: "<output>".into(), source: e })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use treewass_core::rational::{frac, int};

    #[test]
    fn radial_paths_agree() {
        for spec in ["srw:alpha=1/2,n=3", "sphere:r=2", "ball:r=2", "custom:[0,1,1/2]"] {
            let (report, inst) = w1_radial(&spec.parse().unwrap(), 2, 3).unwrap();
            assert!(report.passed(), "{spec}: {:?}", report.checks);
            assert!(report.records.len() >= 3);
            assert_eq!(inst.resolve().unwrap().0.len(), inst.graph.vertices.len());
        }
    }

    #[test]
    fn series_rows() {
        let rows = series(Family::Srw, &frac(1, 2), 3, 4).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].gamma, int(1));
        assert_eq!(rows[1].gamma, frac(1, 2));
    }

    #[test]
    fn asym_json() {
        let v = asym(Family::Ball, &int(0), 2, 3).unwrap();
        assert_eq!((v["A"].as_str(), v["B"].as_str()), (Some("4/3"), Some("1")));
        assert_eq!(v["exact_for_large_n"], false);
    }
}
