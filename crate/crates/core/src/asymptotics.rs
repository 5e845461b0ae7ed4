//! Linear asymptotics W₁(μ_Xⁿ, μ_Yⁿ) = A·n + B + o(1) for the three radial
//! families, the constants built from them, and the coefficient asymptotics
//! of the return-probability series γ(y).

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::AsymptoticsError;
use crate::genfun::{self, GFBundle, GTable};
use crate::interval::{self, Interval};
use crate::radial::PairGeometry;
use crate::rational::{self, frac, int, qpow, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Srw,
    Sphere,
    Ball,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Srw => "srw",
            Family::Sphere => "sphere",
            Family::Ball => "ball",
        })
    }
}

impl FromStr for Family {
    type Err = AsymptoticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "srw" => Ok(Family::Srw),
            "sphere" => Ok(Family::Sphere),
            "ball" => Ok(Family::Ball),
            other => Err(AsymptoticsError::InvalidParams(format!("unknown family {other:?}"))),
        }
    }
}

fn opt_rational<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&rational::to_string(v)),
        None => s.serialize_none(),
    }
}

/// Exact coefficients (A, B) with their parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearAsymptotic {
    #[serde(rename = "A", with = "rational::as_string")]
    pub a: Rational,
    #[serde(rename = "B", with = "rational::as_string")]
    pub b: Rational,
    /// W₁ equals A·n + B exactly once n ≥ d.
    pub exact_for_large_n: bool,
    pub family: Family,
    #[serde(serialize_with = "opt_rational", skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    pub d: u32,
    pub q: u64,
}

impl LinearAsymptotic {
    /// A·n + B.
    pub fn value(&self, n: u64) -> Rational {
        &self.a * int(n as i64) + &self.b
    }
}

fn geometry(d: u32, q: u64) -> Result<PairGeometry, AsymptoticsError> {
    Ok(PairGeometry::new(q, d)?)
}

fn check_alpha(alpha: &Rational) -> Result<(), AsymptoticsError> {
    if alpha.is_negative() || *alpha >= Rational::one() {
        return Err(AsymptoticsError::InvalidParams(format!("alpha = {} outside [0, 1)", rational::to_string(alpha))));
    }
    Ok(())
}

/// q + 1 − q^{1−δ′} − q^{−δ}, the factor shared by every A.
pub fn common_factor(d: u32, q: u64) -> Rational {
    let (delta, delta_p) = rational::halves(d);
    int(q as i64 + 1) - qpow(q, 1 - delta_p) - qpow(q, -delta)
}

/// Coefficients for the lazy simple random walk.
pub fn srw_ab(alpha: &Rational, d: u32, q: u64) -> Result<LinearAsymptotic, AsymptoticsError> {
    check_alpha(alpha)?;
    let g = geometry(d, q)?;
    let (delta, delta_p) = (g.delta(), g.delta_prime());
    let qp1 = int(q as i64 + 1);
    let qp1_sq = &qp1 * &qp1;
    let a = int(2) * (Rational::one() - alpha) * common_factor(d, q) * int(q as i64 - 1) / &qp1_sq;
    let b = int(d as i64)
        + int(2) * (int(delta) * qpow(q, -delta) + int(delta_p) * qpow(q, 1 - delta_p)) / &qp1
        + int(2) * (qpow(q, 1 - delta) - qpow(q, 1 - delta_p)) / &qp1_sq;
    Ok(LinearAsymptotic { a, b, exact_for_large_n: false, family: Family::Srw, alpha: Some(alpha.clone()), d, q })
}

/// Coefficients for uniform measures on spheres (exact for n ≥ d).
pub fn sphere_ab(d: u32, q: u64) -> Result<LinearAsymptotic, AsymptoticsError> {
    let g = geometry(d, q)?;
    let (delta, delta_p) = (g.delta(), g.delta_prime());
    let qm1 = int(q as i64 - 1);
    let a = int(2) * common_factor(d, q) / int(q as i64 + 1);
    let b = int(d as i64)
        + (int(-4 * q as i64)
            + int(2) * (int(delta_p) * &qm1 + int(1)) * qpow(q, 1 - delta_p)
            + int(2) * (int(delta) * &qm1 + int(q as i64)) * qpow(q, -delta))
            / int((q * q) as i64 - 1);
    Ok(LinearAsymptotic { a, b, exact_for_large_n: true, family: Family::Sphere, alpha: None, d, q })
}

/// Coefficients for uniform measures on balls.
pub fn ball_ab(d: u32, q: u64) -> Result<LinearAsymptotic, AsymptoticsError> {
    let g = geometry(d, q)?;
    let (delta, delta_p) = (g.delta(), g.delta_prime());
    let qm1 = int(q as i64 - 1);
    let a = int(2) * common_factor(d, q) / int(q as i64 + 1);
    let b = int(d as i64)
        + (int(-6 * q as i64 - 2)
            + int(2) * (int(delta_p) * &qm1 + int(2)) * qpow(q, 1 - delta_p)
            + int(2) * (int(delta) * &qm1 + int(q as i64 + 1)) * qpow(q, -delta))
            / int((q * q) as i64 - 1);
    Ok(LinearAsymptotic { a, b, exact_for_large_n: false, family: Family::Ball, alpha: None, d, q })
}

/// Dispatch on the family; `alpha` is ignored for spheres and balls.
pub fn family_ab(family: Family, alpha: &Rational, d: u32, q: u64) -> Result<LinearAsymptotic, AsymptoticsError> {
    match family {
        Family::Srw => srw_ab(alpha, d, q),
        Family::Sphere => sphere_ab(d, q),
        Family::Ball => ball_ab(d, q),
    }
}

/// On 𝕋₂ = ℤ every radial W₁ is just dist(X, Y).
pub fn path_graph_w1(d: u32) -> Rational {
    int(d as i64)
}

/// The g-table of a family to order N.
pub fn family_table(family: Family, alpha: &Rational, q: u64, order: usize) -> Result<GTable, AsymptoticsError> {
    if q < 2 {
        geometry(1, q)?;
    }
    Ok(match family {
        Family::Srw => genfun::srw_g_table(alpha, q, order)?,
        Family::Sphere => genfun::sphere_g_table(q, order),
        Family::Ball => genfun::ball_g_table(q, order),
    })
}

/// Exact W₁(μ_Xⁿ, μ_Yⁿ) for n = 0..=n_max.
pub fn exact_sequence(family: Family, alpha: &Rational, d: u32, q: u64, n_max: usize) -> Result<Vec<Rational>, AsymptoticsError> {
    let g = geometry(d, q)?;
    let table = family_table(family, alpha, q, n_max)?;
    let bundle = GFBundle::from_table(&table, d as usize);
    (0..=n_max).map(|n| Ok(genfun::w1_via_genfun(&bundle, &g, n)?)).collect()
}

/// Values behind the coefficient asymptotics of G₁(q, y) and G(q, y).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HValues {
    #[serde(with = "rational::as_string")]
    pub h1_at_1: Rational,
    #[serde(with = "rational::as_string")]
    pub h1prime_at_1: Rational,
    #[serde(with = "rational::as_string")]
    pub h_at_1: Rational,
}

impl HValues {
    /// [yⁿ]G₁(q, y) ≈ slope·n + intercept.
    pub fn g1_slope_intercept(&self) -> (Rational, Rational) {
        (self.h1_at_1.clone(), &self.h1_at_1 - &self.h1prime_at_1)
    }
}

pub fn h_values(alpha: &Rational, q: u64) -> Result<HValues, AsymptoticsError> {
    check_alpha(alpha)?;
    geometry(1, q)?;
    let qr = int(q as i64);
    let qp1_sq = (&qr + int(1)) * (&qr + int(1));
    let h1 = (Rational::one() - alpha) * (&qr - int(1)) / &qp1_sq;
    let h1p = &h1 - int(2) * &qr / ((&qr - int(1)) * &qp1_sq);
    let h = &qr / (&qr + int(1));
    Ok(HValues { h1_at_1: h1, h1prime_at_1: h1p, h_at_1: h })
}

/// One comparison of the inequality chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub srw: LinearAsymptotic,
    pub sphere: LinearAsymptotic,
    pub ball: LinearAsymptotic,
    #[serde(with = "rational::as_string")]
    pub factor: Rational,
    /// 4q/((q+1)²(q−1)) times the factor.
    #[serde(with = "rational::as_string")]
    pub srw_minus_sphere: Rational,
    /// 2/(q²−1) times the factor.
    #[serde(with = "rational::as_string")]
    pub sphere_minus_ball: Rational,
    /// B^ball = 1/3, which happens only at (d, q) = (1, 2).
    pub ball_minimum: bool,
    pub comparisons: Vec<Comparison>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.comparisons.iter().all(|c| c.holds)
    }
}

/// 0 < A^SRW < A^sphere = A^ball < 2 and B^SRW > B^sphere > B^ball ≥ 1/3,
/// with the two B gaps recomputed from their closed forms.
pub fn verify_inequalities(alpha: &Rational, d: u32, q: u64) -> Result<InequalityReport, AsymptoticsError> {
    let srw = srw_ab(alpha, d, q)?;
    let sphere = sphere_ab(d, q)?;
    let ball = ball_ab(d, q)?;
    let qr = int(q as i64);
    let factor = common_factor(d, q);
    let srw_minus_sphere = int(4) * &qr / ((&qr + int(1)) * (&qr + int(1)) * (&qr - int(1))) * &factor;
    let sphere_minus_ball = int(2) / (&qr * &qr - int(1)) * &factor;
    let third = frac(1, 3);
    let ball_minimum = ball.b == third;
    let comparisons = vec![
        Comparison { name: "A_srw > 0", holds: srw.a.is_positive() },
        Comparison { name: "A_srw < A_sphere", holds: srw.a < sphere.a },
        Comparison { name: "A_sphere = A_ball", holds: sphere.a == ball.a },
        Comparison { name: "A_ball < 2", holds: ball.a < int(2) },
        Comparison { name: "B_srw > B_sphere", holds: srw.b > sphere.b },
        Comparison { name: "B_sphere > B_ball", holds: sphere.b > ball.b },
        Comparison { name: "B_ball >= 1/3", holds: ball.b >= third },
        Comparison { name: "factor >= q-1", holds: factor >= &qr - int(1) },
        Comparison { name: "B_srw - B_sphere witness", holds: &srw.b - &sphere.b == srw_minus_sphere },
        Comparison { name: "B_sphere - B_ball witness", holds: &sphere.b - &ball.b == sphere_minus_ball },
        Comparison { name: "B_ball = 1/3 iff (d,q) = (1,2)", holds: ball_minimum == (d == 1 && q == 2) },
        Comparison { name: "B_sphere >= 1, = 1 iff d = 1", holds: sphere.b >= int(1) && (sphere.b == int(1)) == (d == 1) },
        Comparison { name: "B_srw > 1", holds: srw.b > int(1) },
    ];
    Ok(InequalityReport { srw, sphere, ball, factor, srw_minus_sphere, sphere_minus_ball, ball_minimum, comparisons })
}

/// The four χ statistics of 𝕋_{q+1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiValues {
    #[serde(with = "rational::as_string")]
    pub up_up: Rational,
    #[serde(with = "rational::as_string")]
    pub up_down: Rational,
    #[serde(with = "rational::as_string")]
    pub down_up: Rational,
    #[serde(with = "rational::as_string")]
    pub down_down: Rational,
}

pub fn chi_tree(alpha: &Rational, q: u64) -> Result<ChiValues, AsymptoticsError> {
    check_alpha(alpha)?;
    geometry(1, q)?;
    let r = frac(q as i64 - 1, q as i64 + 1);
    let up = int(2) * (Rational::one() - alpha) * &r;
    let down = &up * &r;
    Ok(ChiValues { up_up: up.clone(), up_down: up, down_up: down.clone(), down_down: down })
}

/// lim_{d→∞} A^SRW = 2(1−α)(q−1)/(q+1): the q^{1−δ′} and q^{−δ} terms drop.
pub fn srw_a_limit(alpha: &Rational, q: u64) -> Result<Rational, AsymptoticsError> {
    check_alpha(alpha)?;
    geometry(1, q)?;
    let qp1 = int(q as i64 + 1);
    Ok(int(2) * (Rational::one() - alpha) * &qp1 * int(q as i64 - 1) / (&qp1 * &qp1))
}

/// κ = 1 − W₁/d from the exact W₁, alongside 1 − (A·n + B)/d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Curvature {
    #[serde(with = "rational::as_string")]
    pub exact: Rational,
    #[serde(with = "rational::as_string")]
    pub asymptotic: Rational,
}

/// κ from a prebuilt bundle; fails if n exceeds its order.
pub fn kappa_with(bundle: &GFBundle, asym: &LinearAsymptotic, n: usize) -> Result<Curvature, AsymptoticsError> {
    let g = geometry(asym.d, asym.q)?;
    let w = genfun::w1_via_genfun(bundle, &g, n)?;
    let d = int(asym.d as i64);
    Ok(Curvature { exact: Rational::one() - w / &d, asymptotic: Rational::one() - asym.value(n as u64) / &d })
}

/// n-step coarse Ricci curvature of the lazy walk between vertices at
/// distance d.
pub fn kappa_curvature(alpha: &Rational, d: u32, q: u64, n: usize) -> Result<Curvature, AsymptoticsError> {
    let asym = srw_ab(alpha, d, q)?;
    let table = genfun::srw_g_table(alpha, q, n)?;
    kappa_with(&GFBundle::from_table(&table, d as usize), &asym, n)
}

/// [yⁿ]γ ≈ C·βⁿ·n^{−3/2} (period 1), or [y^{2m}]γ ≈ C·β^m·m^{−3/2} with odd
/// coefficients zero (period 2, the non-lazy walk).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaAsymptotic {
    pub alpha: Rational,
    pub q: u64,
    pub period: u32,
    /// β: the per-step (or per-two-step) exponential growth factor.
    pub growth_base: Interval,
    pub leading_constant: Interval,
    pub power: Rational,
}

impl GammaAsymptotic {
    /// The leading term at n, or `None` for n = 0.
    pub fn leading_term(&self, n: usize) -> Option<Interval> {
        if n == 0 {
            return None;
        }
        let m = if self.period == 2 {
            if n % 2 == 1 {
                return Some(Interval::from_int(0));
            }
            n / 2
        } else {
            n
        };
        let mi = Interval::from_int(m as i64);
        let decay = Interval::from_int(1).div(&mi.pow_three_halves());
        Some(self.leading_constant.mul(&self.growth_base.powi(m as u32)).mul(&decay))
    }

    /// Radius of convergence ρ of γ(y).
    pub fn radius(&self) -> Interval {
        let inv = Interval::from_int(1).div(&self.growth_base);
        if self.period == 2 {
            inv.sqrt()
        } else {
            inv
        }
    }
}

/// Singularity analysis of γ(y) at its dominant singularity.
pub fn gamma_asymptotic(alpha: &Rational, q: u64) -> Result<GammaAsymptotic, AsymptoticsError> {
    check_alpha(alpha)?;
    geometry(1, q)?;
    let qi = Interval::from_int(q as i64);
    let qp1 = Interval::from_int(q as i64 + 1);
    let qm1 = Interval::from_int(q as i64 - 1);
    let sqrt_q = qi.sqrt();
    let sqrt_pi = interval::pi().sqrt();
    let shape = qp1.mul(&qi).div(&qm1.mul(&qm1));
    if alpha.is_zero() {
        let base = Interval::exact(int(4 * q as i64) / int((q as i64 + 1) * (q as i64 + 1)));
        return Ok(GammaAsymptotic {
            alpha: alpha.clone(),
            q,
            period: 2,
            growth_base: base,
            leading_constant: shape.div(&sqrt_pi),
            power: frac(-3, 2),
        });
    }
    let a = Interval::exact(alpha.clone());
    let om = Interval::exact(Rational::one() - alpha);
    let two = Interval::from_int(2);
    let base = a.mul(&qp1).add(&om.mul(&two).mul(&sqrt_q)).div(&qp1);
    let inner = a.div(&om).mul(&qp1).add(&two.mul(&sqrt_q));
    let constant = inner
        .pow_three_halves()
        .mul(&qp1)
        .mul(&sqrt_q.sqrt())
        .div(&qm1.mul(&qm1))
        .div(&two.mul(&sqrt_pi));
    Ok(GammaAsymptotic {
        alpha: alpha.clone(),
        q,
        period: 1,
        growth_base: base,
        leading_constant: constant,
        power: frac(-3, 2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn srw_special_cases() {
        let alpha = frac(1, 4);
        for q in 2..7u64 {
            let qr = int(q as i64);
            let one = srw_ab(&alpha, 1, q).unwrap();
            let qp1 = &qr + int(1);
            assert_eq!(one.a, int(2) * frac(3, 4) * (&qr - int(1)) * (&qr - int(1)) / (&qp1 * &qp1));
            assert_eq!(one.b, (&qr * &qr + int(6) * &qr + int(1)) / (&qp1 * &qp1));
            let two = srw_ab(&alpha, 2, q).unwrap();
            assert_eq!(two.a, int(2) * frac(3, 4) * (&qr - int(1)) * (&qr - int(1)) / (&qr * &qp1));
            assert_eq!(two.b, int(2) * &qp1 / &qr);
            for d in [4u32, 6, 8] {
                let even = srw_ab(&alpha, d, q).unwrap();
                let h = qpow(q, -(d as i64) / 2);
                assert_eq!(even.a, int(2) * frac(3, 4) * (int(1) - &h) * (&qr - int(1)) / &qp1);
                assert_eq!(even.b, int(d as i64) * (int(1) + &h));
            }
        }
    }

    #[test]
    fn sphere_and_ball_values() {
        let s = sphere_ab(2, 3).unwrap();
        assert_eq!((s.a.clone(), s.b.clone()), (frac(4, 3), frac(5, 3)));
        assert!(s.exact_for_large_n);
        assert_eq!(sphere_ab(1, 2).unwrap().b, int(1));
        let b = ball_ab(2, 3).unwrap();
        assert_eq!((b.a, b.b), (frac(4, 3), int(1)));
        for q in 2..6u64 {
            assert_eq!(ball_ab(2, q).unwrap().b, frac(2 * (q as i64 - 1), q as i64 + 1));
            assert_eq!(ball_ab(1, q).unwrap().b, frac(q as i64 - 1, q as i64 + 1));
        }
    }

    #[test]
    fn json_shape() {
        let b = ball_ab(2, 3).unwrap();
        let v = serde_json::to_value(&b).unwrap();
        assert_eq!(v["A"], "4/3");
        assert_eq!(v["B"], "1");
        assert_eq!(v["exact_for_large_n"], false);
        assert!(v.get("alpha").is_none());
    }

    #[test]
    fn h_values_and_chi() {
        let h = h_values(&Rational::zero(), 2).unwrap();
        assert_eq!(h.h1_at_1, frac(1, 9));
        assert_eq!(h.g1_slope_intercept().1, frac(4, 9));
        assert_eq!(h.h_at_1, frac(2, 3));
        let c = chi_tree(&Rational::zero(), 2).unwrap();
        assert_eq!((c.up_up, c.up_down, c.down_up, c.down_down), (frac(2, 3), frac(2, 3), frac(2, 9), frac(2, 9)));
    }

    #[test]
    fn inequality_chain() {
        let r = verify_inequalities(&Rational::zero(), 1, 2).unwrap();
        assert!(r.all_hold() && r.ball_minimum);
        let r = verify_inequalities(&frac(1, 2), 3, 5).unwrap();
        assert!(r.all_hold() && !r.ball_minimum);
    }

    #[test]
    fn kappa_at_zero_and_one() {
        let k = kappa_curvature(&frac(1, 2), 2, 3, 0).unwrap();
        assert_eq!(k.exact, int(0));
        let k = kappa_curvature(&Rational::zero(), 1, 2, 1).unwrap();
        assert!(k.exact < int(1));
    }

    #[test]
    fn invalid_parameters() {
        assert!(srw_ab(&int(1), 1, 2).is_err());
        assert!(sphere_ab(0, 2).is_err());
        assert!(ball_ab(1, 1).is_err());
        assert!("torus".parse::<Family>().is_err());
        assert_eq!("Ball".parse::<Family>().unwrap(), Family::Ball);
    }

    #[test]
    fn gamma_constants_for_lazy_walks() {
        // 5ⁿ-scaled base 1 + 2√3, constant² = (90 + 37√3)/(4π)
        let g = gamma_asymptotic(&frac(1, 5), 3).unwrap();
        let base = g.growth_base.mul(&Interval::from_int(5)).to_f64();
        assert!((base - (1.0 + 2.0 * 3f64.sqrt())).abs() < 1e-12);
        let c2 = g.leading_constant.mul(&g.leading_constant).to_f64();
        assert!((c2 - (90.0 + 37.0 * 3f64.sqrt()) / (4.0 * std::f64::consts::PI)).abs() < 1e-12);
        assert!(g.leading_constant.width() < Rational::new(1.into(), num_bigint::BigInt::from(10).pow(60)));

        let g = gamma_asymptotic(&Rational::zero(), 2).unwrap();
        assert_eq!(g.period, 2);
        assert_eq!(g.growth_base, Interval::exact(frac(8, 9)));
        assert_eq!(g.leading_term(7), Some(Interval::from_int(0)));
    }
}
