//! Verification suites behind `treewass verify`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treewass_core::asymptotics;
use treewass_core::genfun::{self, GFBundle};
use treewass_core::rational::{frac, int, to_string};
use treewass_core::{
    assignment_from, check_complementary_slackness, good_potential, sample, unique_flow, verify_duality, w1_lp,
    w1_radial_flow_formula, w1_radial_formula, w1_radial_tree, w1_tree, FiniteGraph, Interval, PairGeometry,
    Rational, Series1,
};

use crate::error::Result;
use crate::report::RunReport;

pub const DEFAULT_SEED: u64 = 20_241_019;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Duality,
    Triple,
    Series,
    Inequalities,
    Oeis,
    Gamma,
}

pub fn run(suite: Suite, seed: u64) -> Result<RunReport> {
    let mut report = RunReport::default();
    let all = suite == Suite::All;
    if all || suite == Suite::Duality {
        duality(seed, 200, &mut report)?;
    }
    if all || suite == Suite::Triple {
        triple(seed, 20, &mut report)?;
    }
    if all || suite == Suite::Series {
        series(&mut report)?;
    }
    if all || suite == Suite::Inequalities {
        inequalities(&mut report)?;
    }
    if all || suite == Suite::Oeis {
        oeis(&mut report)?;
    }
    if all || suite == Suite::Gamma {
        gamma(&mut report)?;
    }
    Ok(report)
}

pub fn duality(seed: u64, count: usize, report: &mut RunReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failed = 0;
    for k in 0..count {
        let n = rng.gen_range(1..=12);
        let tree = sample::random_tree(&mut rng, n);
        let (mu, nu) = sample::random_pair(&mut rng, n, 6);
        let w = w1_tree(&tree, &mu, &nu)?;
        let graph = FiniteGraph::from_tree(&tree);
        let (lp, plan) = w1_lp(&graph, &mu, &nu)?;
        let phi = good_potential(&tree, &unique_flow(&tree, &assignment_from(&mu, &nu)?)?);
        let cert = verify_duality(&graph, &mu, &nu, &phi)?;
        let ok = w == lp && cert.certificate && check_complementary_slackness(&graph, &plan, &phi);
        if !ok {
            failed += 1;
            let detail = format!("tree {} lp {} certificate {}", to_string(&w), to_string(&lp), cert.certificate);
            report.check("duality", format!("instance {k}"), ok, detail);
        }
    }
    report.check("duality", "random instances", failed == 0, format!("{count} trees, seed {seed}"));
    Ok(())
}

pub fn triple(seed: u64, per_case: usize, report: &mut RunReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7269);
    for q in [2u64, 3] {
        for d in 1..=4u32 {
            let g = PairGeometry::new(q, d)?;
            let mut ok = true;
            let mut detail = String::new();
            for k in 0..per_case {
                let profile = sample::random_profile(&mut rng, 4, k % 2 == 1);
                let a = w1_radial_formula(&profile, &g);
                let b = w1_radial_flow_formula(&profile, &g);
                let c = w1_radial_tree(&profile, &g)?;
                if !(a == b && b == c) {
                    ok = false;
                    detail = format!("{:?}: {} {} {}", profile.values(), to_string(&a), to_string(&b), to_string(&c));
                    break;
                }
            }
            report.check("triple", format!("q={q} d={d}"), ok, if ok { format!("{per_case} profiles") } else { detail });
        }
    }
    Ok(())
}

pub fn series(report: &mut RunReport) -> Result<()> {
    const ORDER: usize = 30;
    for alpha in [int(0), frac(1, 5), frac(1, 2), frac(9, 10)] {
        for q in [2u64, 3, 5] {
            let table = genfun::srw_g_table(&alpha, q, ORDER)?;
            let closed = genfun::srw_closed_form(&alpha, q, ORDER, ORDER + 1)?;
            let direct = GFBundle::from_table(&table, ORDER + 1);
            let name = format!("alpha={} q={q}", to_string(&alpha));
            report.check("series", format!("{name} closed form"), closed == direct, format!("order {ORDER}"));
            let fe = genfun::check_functional_equation(&table, &closed.gammas[0], &alpha);
            report.check("series", format!("{name} functional equation"), fe, "residual zero");
        }
    }
    Ok(())
}

pub fn inequalities(report: &mut RunReport) -> Result<()> {
    let mut points = 0;
    for alpha in [int(0), frac(1, 4), frac(1, 2), frac(9, 10)] {
        for d in 1..=6u32 {
            for q in 2..=10u64 {
                let r = asymptotics::verify_inequalities(&alpha, d, q)?;
                if !r.all_hold() {
                    let failed: Vec<&str> = r.comparisons.iter().filter(|c| !c.holds).map(|c| c.name).collect();
                    report.check("inequalities", format!("alpha={} d={d} q={q}", to_string(&alpha)), false, failed.join(", "));
                }
                points += 1;
            }
        }
    }
    report.check("inequalities", "grid", true, format!("{points} points checked"));
    let table = [
        (1, 2, frac(1, 3)),
        (1, 3, frac(1, 2)),
        (1, 4, frac(3, 5)),
        (1, 5, frac(2, 3)),
        (1, 6, frac(5, 7)),
        (1, 7, frac(3, 4)),
        (1, 8, frac(7, 9)),
        (1, 9, frac(4, 5)),
        (2, 2, frac(2, 3)),
        (2, 3, int(1)),
        (2, 4, frac(6, 5)),
        (3, 2, int(1)),
        (4, 2, frac(3, 2)),
    ];
    for (d, q, want) in table {
        let got = asymptotics::ball_ab(d, q)?.b;
        report.check("inequalities", format!("B_ball({d},{q})"), got == want, to_string(&got));
    }
    Ok(())
}

fn scaled(alpha: &Rational, q: u64, scale: i64, order: usize) -> Result<Vec<Rational>> {
    let g = genfun::srw_gamma(alpha, q, order)?;
    Ok((0..=order).map(|n| g.coeff(n) * int(scale).pow(n as i32)).collect())
}

fn render(v: &[Rational]) -> String {
    v.iter().map(to_string).collect::<Vec<_>>().join(",")
}

pub fn oeis(report: &mut RunReport) -> Result<()> {
    let a = scaled(&frac(1, 5), 3, 5, 4)?;
    report.check("oeis", "alpha=1/5 q=3", a == [1, 1, 5, 13, 53].map(int), render(&a));
    let b = scaled(&frac(1, 7), 5, 7, 6)?;
    report.check("oeis", "alpha=1/7 q=5", b == [1, 1, 7, 19, 103, 391, 1957].map(int), render(&b));
    const M: usize = 15;
    let root = Series1::new(vec![int(1), int(-8)], M).sqrt().map_err(treewass_core::GenfunError::from)?;
    let target = Series1::constant(int(4), M)
        .div(&(&Series1::one(M) + &root.scale(&int(3))))
        .map_err(treewass_core::GenfunError::from)?;
    let c = scaled(&int(0), 2, 3, 2 * M)?;
    let even: Vec<Rational> = (0..=M).map(|m| c[2 * m].clone()).collect();
    let odd_zero = (0..M).all(|m| c[2 * m + 1].is_zero());
    report.check("oeis", "alpha=0 q=2", even == target.coeffs() && odd_zero, render(&even));
    Ok(())
}

pub fn gamma(report: &mut RunReport) -> Result<()> {
    const ORDER: usize = 512;
    for (alpha, q) in [(frac(1, 5), 2u64), (frac(1, 5), 3), (int(0), 2), (int(0), 3)] {
        let series = genfun::srw_gamma(&alpha, q, ORDER)?;
        let asym = asymptotics::gamma_asymptotic(&alpha, q)?;
        let ratio = |n: usize| {
            let lead = asym.leading_term(n).expect("n > 0");
            Interval::exact(series.coeff(n).clone()).div(&lead).to_f64()
        };
        let (r100, r400) = (ratio(100), ratio(400));
        let odd_ok = asym.period == 1 || (1..=ORDER).step_by(2).all(|n| series.coeff(n).is_zero());
        let ok = (r400 - 1.0).abs() < 0.10 && (r400 - 1.0).abs() < (r100 - 1.0).abs() && odd_ok;
        report.check(
            "gamma",
            format!("alpha={} q={q}", to_string(&alpha)),
            ok,
            format!("ratio {r100:.6} at n=100, {r400:.6} at n=400"),
        );
    }
    Ok(())
}
