//! The tables g(ℓ, n) of three radial families on 𝕋_{q+1} and their
//! generating functions.
//!
//! With G(x, y) = Σ g(ℓ, n)xˡyⁿ, only univariate slices are ever formed:
//! G(q, y), G₁(q, y) = ∂ₓG(q, y) and γᵢ(y) = [xⁱ]G(x, y). The table is the
//! ground truth; closed forms are checked against it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::GenfunError;
use crate::radial::{sphere_size, PairGeometry, RadialProfile};
use crate::rational::{self, int, qpow, Rational};
use crate::series::Series1;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;

/// g(ℓ, n) for 0 ≤ ℓ ≤ n ≤ N; entries with ℓ > n are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTable {
    q: u64,
    cols: Vec<Vec<Rational>>,
}

impl GTable {
    /// Table from columns; column n lists g(0, n), g(1, n), ….
    pub fn from_columns(q: u64, cols: Vec<Vec<Rational>>) -> Self {
        assert!(!cols.is_empty());
        GTable { q, cols }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn get(&self, l: usize, n: usize) -> Rational {
        self.cols[n].get(l).cloned().unwrap_or_else(Rational::zero)
    }

    /// Overwrite one entry, growing the column if needed.
    pub fn set(&mut self, l: usize, n: usize, value: Rational) {
        let col = &mut self.cols[n];
        if col.len() <= l {
            col.resize(l + 1, Rational::zero());
        }
        col[l] = value;
    }

    /// g(·, n) as a list.
    pub fn column(&self, n: usize) -> Vec<Rational> {
        self.cols[n].clone()
    }

    /// The radial profile of column n.
    pub fn profile(&self, n: usize) -> Result<RadialProfile, GenfunError> {
        if n > self.order() {
            return Err(GenfunError::OrderExceeded { n, order: self.order() });
        }
        Ok(RadialProfile::new(self.column(n))?)
    }

    /// g(0, n) + Σ_{ℓ≥1} (q+1)q^{ℓ−1} g(ℓ, n).
    pub fn column_mass(&self, n: usize) -> Rational {
        self.cols[n].iter().enumerate().fold(Rational::zero(), |acc, (l, g)| acc + g * sphere_size(self.q, l))
    }
}

fn check_params(alpha: &Rational, q: u64) -> Result<(), GenfunError> {
    if alpha.is_negative() || *alpha >= Rational::one() {
        return Err(GenfunError::InvalidAlpha(rational::to_string(alpha)));
    }
    if q < 2 {
        return Err(GenfunError::InvalidParams(format!("q = {q} must be at least 2")));
    }
    Ok(())
}

/// g(ℓ, n) for the lazy simple random walk, via the one-step recurrence.
///
/// With α = a/b everything is scaled by D = b(q+1) per step so the
/// recurrence runs over integers.
pub fn srw_g_table(alpha: &Rational, q: u64, order: usize) -> Result<GTable, GenfunError> {
    check_params(alpha, q)?;
    let a = alpha.numer().clone();
    let b = alpha.denom().clone();
    let qq = BigInt::from(q);
    let stay = &a * (&qq + 1u32);
    let mv = &b - &a;
    let up = &mv * &qq;
    let d = &b * (&qq + 1u32);

    let mut w: Vec<BigInt> = vec![BigInt::one()];
    let mut scale = BigInt::one();
    let mut cols = Vec::with_capacity(order + 1);
    cols.push(vec![Rational::one()]);
    for _ in 0..order {
        let len = w.len();
        let at = |l: usize| if l < len { w[l].clone() } else { BigInt::zero() };
        let mut next = Vec::with_capacity(len + 1);
        next.push(&stay * &w[0] + &mv * (&qq + 1u32) * at(1));
        for l in 1..=len {
            next.push(&stay * at(l) + &up * at(l + 1) + &mv * at(l - 1));
        }
        w = next;
        scale *= &d;
        cols.push(w.iter().map(|x| Rational::new(x.clone(), scale.clone())).collect());
    }
    Ok(GTable { q, cols })
}

/// g for uniform measures on spheres: g(n, n) = 1/|S_n|.
pub fn sphere_g_table(q: u64, order: usize) -> GTable {
    let cols = (0..=order).map(|n| RadialProfile::sphere(q, n).values().to_vec()).collect();
    GTable { q, cols }
}

/// g for uniform measures on balls: g(ℓ, n) = (q−1)/(q^{n+1}+qⁿ−2), ℓ ≤ n.
pub fn ball_g_table(q: u64, order: usize) -> GTable {
    let cols = (0..=order)
        .map(|n| {
            let v = int(q as i64 - 1) / (qpow(q, n as i64 + 1) + qpow(q, n as i64) - int(2));
            vec![v; n + 1]
        })
        .collect();
    GTable { q, cols }
}

/// G(q, y), G₁(q, y) and γ₀, …, γ_{k−1} to a common order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFBundle {
    pub q: u64,
    pub g_at_q: Series1,
    pub g1_at_q: Series1,
    pub gammas: Vec<Series1>,
}

impl GFBundle {
    /// Slices of a table: Σ_ℓ g qˡ, Σ_ℓ ℓ g q^{ℓ−1} and rows 0..k.
    pub fn from_table(table: &GTable, num_gammas: usize) -> Self {
        let q = table.q;
        let order = table.order();
        let powers: Vec<Rational> = (0..=order as i64 + 1).map(|l| qpow(q, l)).collect();
        let g_at_q = Series1::from_fn(order, |n| {
            table.cols[n].iter().enumerate().fold(Rational::zero(), |acc, (l, g)| acc + g * &powers[l])
        });
        let g1_at_q = Series1::from_fn(order, |n| {
            table.cols[n].iter().enumerate().skip(1).fold(Rational::zero(), |acc, (l, g)| {
                acc + g * &powers[l - 1] * int(l as i64)
            })
        });
        let gammas = (0..num_gammas).map(|i| Series1::from_fn(order, |n| table.get(i, n))).collect();
        GFBundle { q, g_at_q, g1_at_q, gammas }
    }

    pub fn order(&self) -> usize {
        self.g_at_q.order()
    }
}

/// The pieces of the closed form for the lazy walk, as series in y.
struct SrwPieces {
    gamma: Series1,
    phi2: Series1,
    phi3: Series1,
    step: Series1,
}

fn srw_pieces(alpha: &Rational, q: u64, order: usize) -> Result<SrwPieces, GenfunError> {
    check_params(alpha, q)?;
    let qr = int(q as i64);
    let one_minus = Rational::one() - alpha;
    let half_qp1 = (&qr + int(1)) * rational::half();
    let half_qm1 = (&qr - int(1)) * rational::half();
    let lin = Series1::new(vec![Rational::one(), -alpha.clone()], order);
    let y = Series1::monomial(Rational::one(), 1, order);

    let lin2 = lin.mul(&lin);
    let delta = &lin2.scale(&(&half_qp1 * &half_qp1)) - &y.mul(&y).scale(&(&qr * &one_minus * &one_minus));
    let root = delta.sqrt()?;

    // γ = q/φ₁ = q·φ̄₁/(φ₁φ̄₁), and φ₁φ̄₁ is a quadratic polynomial
    let phi1_bar = &lin.scale(&half_qm1) - &root;
    let p1 = &lin2.scale(&-qr.clone()) + &y.mul(&y).scale(&(&qr * &one_minus * &one_minus));
    let gamma = phi1_bar.scale(&qr).div(&p1)?;

    let phi2 = &lin.scale(&half_qp1) + &root;
    let step = y.scale(&one_minus);
    let phi3 = &phi2 - &step.scale(&qr);
    Ok(SrwPieces { gamma, phi2, phi3, step })
}

/// γ(y) = Σ g(0, n)yⁿ for the lazy walk from the closed form.
pub fn srw_gamma(alpha: &Rational, q: u64, order: usize) -> Result<Series1, GenfunError> {
    Ok(srw_pieces(alpha, q, order)?.gamma)
}

/// G(q, y), G₁(q, y) and γ₀, …, γ_{k−1} from the closed form:
/// G(x, y) = φ₂γ/(φ₂ − (1−α)xy), so γᵢ = γ·((1−α)y/φ₂)ⁱ.
pub fn srw_closed_form(alpha: &Rational, q: u64, order: usize, num_gammas: usize) -> Result<GFBundle, GenfunError> {
    let p = srw_pieces(alpha, q, order)?;
    let g_at_q = p.phi2.mul(&p.gamma).div(&p.phi3)?;
    let g1_at_q = p.step.mul(&g_at_q).div(&p.phi3)?;
    let ratio = p.step.div(&p.phi2)?;
    let mut gammas = Vec::with_capacity(num_gammas);
    let mut cur = p.gamma.clone();
    for _ in 0..num_gammas {
        let next = cur.mul(&ratio);
        gammas.push(cur);
        cur = next;
    }
    Ok(GFBundle { q, g_at_q, g1_at_q, gammas })
}

/// The full table g(ℓ, n), ℓ, n ≤ N, read off the closed form.
pub fn srw_closed_form_table(alpha: &Rational, q: u64, order: usize) -> Result<GTable, GenfunError> {
    let bundle = srw_closed_form(alpha, q, order, order + 1)?;
    let cols = (0..=order).map(|n| (0..=n).map(|l| bundle.gammas[l].coeff(n).clone()).collect()).collect();
    Ok(GTable { q, cols })
}

/// Whether the table and γ satisfy
/// qx = ((q+1)(x − αxy) − q(1−α)y − (1−α)x²y)·G + (−x + αxy + q(1−α)y)·γ
/// in every coefficient xᵏyᵐ with k, m ≤ N.
pub fn check_functional_equation(table: &GTable, gamma: &Series1, alpha: &Rational) -> bool {
    let q = int(table.q as i64);
    let qp1 = &q + int(1);
    let om = Rational::one() - alpha;
    let order = table.order().min(gamma.order());
    let g = |l: i64, n: i64| if l < 0 || n < 0 { Rational::zero() } else { table.get(l as usize, n as usize) };
    let gm = |n: i64| if n < 0 { Rational::zero() } else { gamma.coeff(n as usize).clone() };
    for k in 0..=order as i64 {
        for m in 0..=order as i64 {
            let mut r = &qp1 * g(k - 1, m) - &qp1 * alpha * g(k - 1, m - 1) - &q * &om * g(k, m - 1) - &om * g(k - 2, m - 1);
            if k == 0 {
                r += &q * &om * gm(m - 1);
            }
            if k == 1 {
                r += alpha * gm(m - 1) - gm(m);
                if m == 0 {
                    r -= &q;
                }
            }
            if !r.is_zero() {
                return false;
            }
        }
    }
    true
}

/// G(q, y), G₁(q, y), γᵢ for spheres from their closed coefficients:
/// [yⁿ]G = q/(q+1), [yⁿ]G₁ = n/(q+1) for n ≥ 1, γᵢ = g(i, i)yⁱ.
pub fn sphere_gf(q: u64, order: usize, num_gammas: usize) -> GFBundle {
    let qr = int(q as i64);
    let g_at_q = Series1::from_fn(order, |n| if n == 0 { Rational::one() } else { &qr / (&qr + int(1)) });
    let g1_at_q = Series1::from_fn(order, |n| int(n as i64) / (&qr + int(1)));
    let gammas = (0..num_gammas).map(|i| Series1::monomial(RadialProfile::sphere(q, i).get(i), i, order)).collect();
    GFBundle { q, g_at_q, g1_at_q, gammas }
}

/// Bundle for balls, each coefficient a finite geometric sum.
pub fn ball_gf(q: u64, order: usize, num_gammas: usize) -> GFBundle {
    GFBundle::from_table(&ball_g_table(q, order), num_gammas)
}

/// W₁(μ_Xⁿ, μ_Yⁿ) from [yⁿ] of G₁(q, y), G(q, y), γ₀ and γ₀ … γ_δ.
pub fn w1_via_genfun(bundle: &GFBundle, g: &PairGeometry, n: usize) -> Result<Rational, GenfunError> {
    if bundle.q != g.q {
        return Err(GenfunError::InvalidParams(format!("bundle built for q = {}, geometry has q = {}", bundle.q, g.q)));
    }
    if n > bundle.order() {
        return Err(GenfunError::OrderExceeded { n, order: bundle.order() });
    }
    let (delta, delta_p) = (g.delta(), g.delta_prime());
    if bundle.gammas.len() < delta as usize + 1 {
        return Err(GenfunError::MissingGamma { have: bundle.gammas.len(), need: delta as usize + 1 });
    }
    let q = g.q;
    let qr = int(q as i64);
    let d = int(g.d as i64);
    let two = int(2);
    let c = two.clone() / (&qr - int(1));

    let a1 = &two * &qr + &two - &two * qpow(q, 1 - delta_p) - &two * qpow(q, -delta);
    let a0 = &d + &d / &qr - &two * &c + &two * int(delta_p) * qpow(q, -delta_p) + &c * qpow(q, -delta_p)
        + &two * int(delta) * qpow(q, -1 - delta)
        + &c * qpow(q, -delta);
    let mut w = a1 * bundle.g1_at_q.coeff(n) + a0 * bundle.g_at_q.coeff(n) - &d / &qr * bundle.gammas[0].coeff(n);
    for i in 0..=delta {
        let ir = int(i);
        let coef = &two * &c + (&two * &ir - &two * int(delta_p) - &c) * qpow(q, i - delta_p)
            + (&two * &ir / &qr - &two * int(delta) / &qr - &c) * qpow(q, i - delta);
        w += coef * bundle.gammas[i as usize].coeff(n);
    }
    Ok(w)
}
