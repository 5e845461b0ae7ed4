//! End-to-end acceptance checks, one test per criterion. Each prints a
//! `criterion N: PASS|FAIL` line straight to stdout.

use std::io::Write;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treewass_core::asymptotics::{self, Family};
use treewass_core::genfun::{self, GFBundle};
use treewass_core::rational::{frac, int, qpow};
use treewass_core::{
    build_truncated_tree, check_complementary_slackness, good_potential, radial_measure, sample, unique_flow,
    verify_duality, w1_lp, w1_radial_flow_formula, w1_radial_formula, w1_radial_tree, w1_tree,
    w1_tree_by_potential, assignment_from, FiniteGraph, Instance, Interval, PairGeometry, RadialProfile, Rational,
    Series1,
};

const SEED: u64 = 0x5eed_2024;
const SRW_RESIDUAL_TOL: (i64, i64) = (1, 1000);
const GAMMA_RATIO_TOL: f64 = 0.10;
const GAMMA_ORDER: usize = 512;

fn report(id: u32, budget: Duration, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (status, detail) = match &outcome {
        Ok(d) if elapsed <= budget => ("PASS", d.clone()),
        Ok(d) => ("FAIL", format!("{d}; over time budget {budget:?}")),
        Err(e) => ("FAIL", e.clone()),
    };
    let line = format!("criterion {id}: {status} ({elapsed:.2?}) {detail}\n");
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    assert_eq!(status, "PASS", "criterion {id}: {detail}");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s(x: &Rational) -> String {
    treewass_core::rational::to_string(x)
}

#[test]
fn criterion_01_figure_one() {
    report(1, Duration::from_secs(1), || {
        let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/figure1.json"))
            .map_err(|e| e.to_string())?;
        let inst = Instance::from_json(&text).map_err(|e| e.to_string())?;
        let (tree, mu, nu) = inst.resolve().map_err(|e| e.to_string())?;
        let flow = w1_tree(&tree, &mu, &nu).map_err(|e| e.to_string())?;
        let pot = w1_tree_by_potential(&tree, &mu, &nu).map_err(|e| e.to_string())?;
        let (lp, _) = w1_lp(&FiniteGraph::from_tree(&tree), &mu, &nu).map_err(|e| e.to_string())?;
        ensure(flow == int(12) && pot == int(12) && lp == int(12), || {
            format!("flow {} potential {} lp {}", s(&flow), s(&pot), s(&lp))
        })?;
        Ok("flow = potential = lp = 12".into())
    });
}

#[test]
fn criterion_02_oracle_equivalence() {
    report(2, Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for k in 0..500 {
            let n = rng.gen_range(1..=12);
            let tree = sample::random_tree(&mut rng, n);
            let (mu, nu) = sample::random_pair(&mut rng, n, 6);
            let w = w1_tree(&tree, &mu, &nu).map_err(|e| e.to_string())?;
            let graph = FiniteGraph::from_tree(&tree);
            let (lp, plan) = w1_lp(&graph, &mu, &nu).map_err(|e| e.to_string())?;
            ensure(w == lp, || format!("instance {k}: tree {} lp {}", s(&w), s(&lp)))?;
            let rho = assignment_from(&mu, &nu).map_err(|e| e.to_string())?;
            let phi = good_potential(&tree, &unique_flow(&tree, &rho).map_err(|e| e.to_string())?);
            let cert = verify_duality(&graph, &mu, &nu, &phi).map_err(|e| e.to_string())?;
            ensure(cert.certificate && cert.primal == w, || format!("instance {k}: no dual certificate"))?;
            ensure(check_complementary_slackness(&graph, &plan, &phi), || format!("instance {k}: slackness"))?;
        }
        Ok("500 instances, exact agreement with certificates".into())
    });
}

#[test]
fn criterion_03_triple_radial_agreement() {
    report(3, Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
        let mut count = 0;
        for q in [2u64, 3] {
            for d in 1..=4u32 {
                let g = PairGeometry::new(q, d).map_err(|e| e.to_string())?;
                for k in 0..50 {
                    let profile = sample::random_profile(&mut rng, 4, k % 2 == 1);
                    let thm = w1_radial_formula(&profile, &g);
                    let flow_sum = w1_radial_flow_formula(&profile, &g);
                    let tree = w1_radial_tree(&profile, &g).map_err(|e| e.to_string())?;
                    ensure(thm == flow_sum && flow_sum == tree, || {
                        format!("q={q} d={d} profile {:?}: {} {} {}", profile.values(), s(&thm), s(&flow_sum), s(&tree))
                    })?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} profiles"))
    });
}

#[test]
fn criterion_04_series_equality() {
    report(4, Duration::from_secs(30), || {
        const ORDER: usize = 30;
        for alpha in [int(0), frac(1, 5), frac(1, 2), frac(9, 10)] {
            for q in [2u64, 3, 5] {
                let table = genfun::srw_g_table(&alpha, q, ORDER).map_err(|e| e.to_string())?;
                let closed = genfun::srw_closed_form(&alpha, q, ORDER, ORDER + 1).map_err(|e| e.to_string())?;
                let from_table = GFBundle::from_table(&table, ORDER + 1);
                let tag = format!("alpha={} q={q}", s(&alpha));
                ensure(closed.gammas[0] == from_table.gammas[0], || format!("{tag}: gamma differs"))?;
                ensure(closed.g_at_q == from_table.g_at_q, || format!("{tag}: G(q,y) differs"))?;
                ensure(closed.g1_at_q == from_table.g1_at_q, || format!("{tag}: G1(q,y) differs"))?;
                ensure(closed.gammas == from_table.gammas, || format!("{tag}: gamma_i differ"))?;
                ensure(genfun::check_functional_equation(&table, &closed.gammas[0], &alpha), || {
                    format!("{tag}: functional equation residual nonzero")
                })?;
            }
        }
        Ok("12 parameter pairs to order 30".into())
    });
}

fn scaled_returns(alpha: Rational, q: u64, scale: i64, n: usize) -> Vec<Rational> {
    let gamma = genfun::srw_gamma(&alpha, q, n).unwrap();
    (0..=n).map(|k| gamma.coeff(k) * int(scale).pow(k as i32)).collect()
}

#[test]
fn criterion_05_oeis_vectors() {
    report(5, Duration::from_secs(5), || {
        let a = scaled_returns(frac(1, 5), 3, 5, 4);
        ensure(a == [1, 1, 5, 13, 53].map(int), || format!("alpha=1/5 q=3: {a:?}"))?;
        let b = scaled_returns(frac(1, 7), 5, 7, 6);
        ensure(b == [1, 1, 7, 19, 103, 391, 1957].map(int), || format!("alpha=1/7 q=5: {b:?}"))?;

        const M: usize = 15;
        let root = Series1::new(vec![int(1), int(-8)], M).sqrt().map_err(|e| e.to_string())?;
        let den = &Series1::one(M) + &root.scale(&int(3));
        let target = Series1::constant(int(4), M).div(&den).map_err(|e| e.to_string())?;
        let c = scaled_returns(int(0), 2, 3, 2 * M);
        for m in 0..=M {
            ensure(&c[2 * m] == target.coeff(m), || format!("alpha=0 q=2: coefficient {}", 2 * m))?;
            ensure(m == M || c[2 * m + 1].is_zero(), || format!("alpha=0 q=2: odd coefficient {}", 2 * m + 1))?;
        }
        Ok("three sequences reproduced".into())
    });
}

#[test]
fn criterion_06_sphere_exactness() {
    report(6, Duration::from_secs(30), || {
        for q in [2u64, 3, 4] {
            for d in 1..=4u32 {
                let asym = asymptotics::sphere_ab(d, q).map_err(|e| e.to_string())?;
                let seq = asymptotics::exact_sequence(Family::Sphere, &int(0), d, q, 20).map_err(|e| e.to_string())?;
                for (n, w) in seq.iter().enumerate().skip(d as usize) {
                    ensure(*w == asym.value(n as u64), || {
                        format!("q={q} d={d} n={n}: {} vs {}", s(w), s(&asym.value(n as u64)))
                    })?;
                }
            }
        }
        Ok("W_n = A n + B for d <= n <= 20".into())
    });
}

#[test]
fn criterion_07_ball_radius_one_pair() {
    report(7, Duration::from_secs(10), || {
        for q in [2u64, 3, 4] {
            let asym = asymptotics::ball_ab(1, q).map_err(|e| e.to_string())?;
            let seq = asymptotics::exact_sequence(Family::Ball, &int(0), 1, q, 20).map_err(|e| e.to_string())?;
            let mut last: Option<Rational> = None;
            for (n, w) in seq.iter().enumerate() {
                let exact = int(q as i64 - 1) / (int(q as i64 + 1) - int(2) * qpow(q, -(n as i64))) * int(2 * n as i64 + 1);
                ensure(*w == exact, || format!("q={q} n={n}: {} vs {}", s(w), s(&exact)))?;
                let r = (w - asym.value(n as u64)).abs();
                if n >= 3 {
                    if let Some(prev) = &last {
                        ensure(r < *prev, || format!("q={q} n={n}: residual not decreasing"))?;
                    }
                    last = Some(r);
                }
            }
        }
        Ok("closed form exact; residual decreasing from n = 3".into())
    });
}

#[test]
fn criterion_08_srw_asymptote() {
    report(8, Duration::from_secs(120), || {
        let tol = frac(SRW_RESIDUAL_TOL.0, SRW_RESIDUAL_TOL.1);
        let mut worst = Rational::zero();
        let mut failures = Vec::new();
        for alpha in [int(0), frac(1, 2)] {
            for d in 1..=3u32 {
                for q in [2u64, 3] {
                    let asym = asymptotics::srw_ab(&alpha, d, q).map_err(|e| e.to_string())?;
                    let seq = asymptotics::exact_sequence(Family::Srw, &alpha, d, q, 60).map_err(|e| e.to_string())?;
                    let res: Vec<Rational> = [20usize, 40, 60].iter().map(|&n| (&seq[n] - asym.value(n as u64)).abs()).collect();
                    if res[2] > worst {
                        worst = res[2].clone();
                    }
                    if !(res[2] < tol && res[0] > res[1] && res[1] > res[2]) {
                        let f: Vec<String> = res.iter().map(|r| format!("{:.3e}", treewass_core::rational::to_f64(r))).collect();
                        failures.push(format!("alpha={} d={d} q={q} residuals {}", s(&alpha), f.join(", ")));
                    }
                }
            }
        }
        let worst = treewass_core::rational::to_f64(&worst);
        ensure(failures.is_empty(), || failures.join("; "))?;
        Ok(format!("worst residual at n=60: {worst:.3e}"))
    });
}

#[test]
fn criterion_09_inequalities() {
    report(9, Duration::from_secs(5), || {
        let mut points = 0;
        for alpha in [int(0), frac(1, 4), frac(1, 2), frac(9, 10)] {
            for d in 1..=6u32 {
                for q in 2..=10u64 {
                    let r = asymptotics::verify_inequalities(&alpha, d, q).map_err(|e| e.to_string())?;
                    let failed: Vec<&str> = r.comparisons.iter().filter(|c| !c.holds).map(|c| c.name).collect();
                    ensure(failed.is_empty(), || format!("alpha={} d={d} q={q}: {failed:?}", s(&alpha)))?;
                    ensure(r.ball_minimum == (d == 1 && q == 2), || format!("d={d} q={q}: B_ball = 1/3 mismatch"))?;
                    points += 1;
                }
            }
        }
        let table: [((u32, u64), (i64, i64)); 13] = [
            ((1, 2), (1, 3)),
            ((1, 3), (1, 2)),
            ((1, 4), (3, 5)),
            ((1, 5), (2, 3)),
            ((1, 6), (5, 7)),
            ((1, 7), (3, 4)),
            ((1, 8), (7, 9)),
            ((1, 9), (4, 5)),
            ((2, 2), (2, 3)),
            ((2, 3), (1, 1)),
            ((2, 4), (6, 5)),
            ((3, 2), (1, 1)),
            ((4, 2), (3, 2)),
        ];
        for ((d, q), (a, b)) in table {
            let got = asymptotics::ball_ab(d, q).map_err(|e| e.to_string())?.b;
            ensure(got == frac(a, b), || format!("B_ball({d},{q}) = {}", s(&got)))?;
        }
        Ok(format!("{points} grid points, 13 table values"))
    });
}

#[test]
fn criterion_10_chi_and_kappa() {
    report(10, Duration::from_secs(10), || {
        for alpha in [int(0), frac(1, 4), frac(1, 2), frac(9, 10)] {
            for q in 2..=6u64 {
                let chi = asymptotics::chi_tree(&alpha, q).map_err(|e| e.to_string())?;
                let r = frac(q as i64 - 1, q as i64 + 1);
                let up = int(2) * (Rational::one() - &alpha) * &r;
                let down = &up * &r;
                ensure(chi.up_up == up && chi.up_down == up, || format!("alpha={} q={q}: up", s(&alpha)))?;
                ensure(chi.down_up == down && chi.down_down == down, || format!("alpha={} q={q}: down", s(&alpha)))?;
                let a1 = asymptotics::srw_ab(&alpha, 1, q).map_err(|e| e.to_string())?.a;
                ensure(a1 == down, || format!("alpha={} q={q}: A(d=1) != down", s(&alpha)))?;
                let limit = asymptotics::srw_a_limit(&alpha, q).map_err(|e| e.to_string())?;
                ensure(limit == up, || format!("alpha={} q={q}: d-limit != up", s(&alpha)))?;
                let mut gap = up.clone();
                for d in 1..=12u32 {
                    let a = asymptotics::srw_ab(&alpha, d, q).map_err(|e| e.to_string())?.a;
                    let next = &up - a;
                    ensure(!next.is_negative() && (next < gap || alpha == int(1)), || format!("A(d) not approaching up at d={d}"))?;
                    gap = next;
                }
            }
        }
        let mut checked = 0;
        for alpha in [int(0), frac(1, 3), frac(1, 2)] {
            for q in [2u64, 3] {
                for d in 1..=3u32 {
                    let k0 = asymptotics::kappa_curvature(&alpha, d, q, 0).map_err(|e| e.to_string())?;
                    ensure(k0.exact.is_zero(), || "kappa at n = 0 is not 0".into())?;
                    let k1 = asymptotics::kappa_curvature(&alpha, d, q, 1).map_err(|e| e.to_string())?;
                    let tt = build_truncated_tree(q, d, d + 1).map_err(|e| e.to_string())?;
                    let profile = RadialProfile::srw(&alpha, q, 1).map_err(|e| e.to_string())?;
                    let mu = radial_measure(&tt, tt.x, &profile).map_err(|e| e.to_string())?;
                    let nu = radial_measure(&tt, tt.y, &profile).map_err(|e| e.to_string())?;
                    let (lp, _) = w1_lp(&FiniteGraph::from_tree(&tt.tree), &mu, &nu).map_err(|e| e.to_string())?;
                    let kappa_lp = Rational::one() - lp / int(d as i64);
                    ensure(k1.exact == kappa_lp, || {
                        format!("alpha={} q={q} d={d}: kappa {} vs lp {}", s(&alpha), s(&k1.exact), s(&kappa_lp))
                    })?;
                    checked += 1;
                }
            }
        }
        Ok(format!("chi closed forms; kappa at n = 1 matches lp on {checked} truncations"))
    });
}

fn gamma_ratios(alpha: &Rational, q: u64) -> Result<(f64, f64), String> {
    let gamma = genfun::srw_gamma(alpha, q, GAMMA_ORDER).map_err(|e| e.to_string())?;
    let asym = asymptotics::gamma_asymptotic(alpha, q).map_err(|e| e.to_string())?;
    let ratio = |n: usize| -> f64 {
        let lead = asym.leading_term(n).expect("n > 0");
        Interval::exact(gamma.coeff(n).clone()).div(&lead).to_f64()
    };
    if asym.period == 2 {
        let odd = (1..=GAMMA_ORDER).step_by(2).find(|&n| !gamma.coeff(n).is_zero());
        ensure(odd.is_none(), || format!("odd coefficient {odd:?} nonzero"))?;
    }
    Ok((ratio(100), ratio(400)))
}

#[test]
fn criterion_11_gamma_asymptotics() {
    report(11, Duration::from_secs(180), || {
        let mut notes = Vec::new();
        for (alpha, q) in [(frac(1, 5), 2u64), (frac(1, 5), 3), (int(0), 2), (int(0), 3)] {
            let (r100, r400) = gamma_ratios(&alpha, q)?;
            let (e100, e400) = ((r100 - 1.0).abs(), (r400 - 1.0).abs());
            ensure(e400 < GAMMA_RATIO_TOL && e400 < e100, || {
                format!("alpha={} q={q}: ratio {r100:.6} at 100, {r400:.6} at 400", s(&alpha))
            })?;
            notes.push(format!("alpha={} q={q}: {r400:.4}", s(&alpha)));
        }
        Ok(format!("ratios at n=400: {}", notes.join(", ")))
    });
}
