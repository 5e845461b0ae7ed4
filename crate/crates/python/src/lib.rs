use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use treewass_core::asymptotics::{self, Family};
use treewass_core::{rational, FiniteGraph, Instance, PairGeometry, ProfileSpec, Rational};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(text: &str) -> PyResult<Rational> {
    rational::parse_rational(text).map_err(err)
}

/// W₁ of a JSON instance by the unique tree flow, as a rational string.
#[pyfunction]
pub fn w1(instance_json: &str) -> PyResult<String> {
    let (tree, mu, nu) = Instance::from_json(instance_json).and_then(|i| i.resolve()).map_err(err)?;
    let w = treewass_core::w1_tree(&tree, &mu, &nu).map_err(err)?;
    Ok(rational::to_string(&w))
}

/// The same distance from the transportation LP.
#[pyfunction]
pub fn w1_lp(instance_json: &str) -> PyResult<String> {
    let (tree, mu, nu) = Instance::from_json(instance_json).and_then(|i| i.resolve()).map_err(err)?;
    let (w, _) = treewass_core::w1_lp(&FiniteGraph::from_tree(&tree), &mu, &nu).map_err(err)?;
    Ok(rational::to_string(&w))
}

/// Duality report of an instance as a JSON string.
#[pyfunction]
pub fn duality(instance_json: &str) -> PyResult<String> {
    let (tree, mu, nu) = Instance::from_json(instance_json).and_then(|i| i.resolve()).map_err(err)?;
    let rho = treewass_core::assignment_from(&mu, &nu).map_err(err)?;
    let flow = treewass_core::unique_flow(&tree, &rho).map_err(err)?;
    let phi = treewass_core::good_potential(&tree, &flow);
    let r = treewass_core::verify_duality(&FiniteGraph::from_tree(&tree), &mu, &nu, &phi).map_err(err)?;
    serde_json::to_string(&r).map_err(err)
}

/// W₁ between radial measures around two vertices at distance d.
#[pyfunction]
pub fn w1_radial(profile: &str, q: u64, d: u32) -> PyResult<String> {
    let spec: ProfileSpec = profile.parse().map_err(err)?;
    let g = PairGeometry::new(q, d).map_err(err)?;
    let p = spec.profile(q).map_err(err)?;
    Ok(rational::to_string(&treewass_core::w1_radial_formula(&p, &g)))
}

/// (A, B, exact_for_large_n) for a family.
#[pyfunction]
#[pyo3(signature = (family, d, q, alpha = "0"))]
pub fn asym(family: &str, d: u32, q: u64, alpha: &str) -> PyResult<(String, String, bool)> {
    let family: Family = family.parse().map_err(err)?;
    let a = asymptotics::family_ab(family, &parse(alpha)?, d, q).map_err(err)?;
    Ok((rational::to_string(&a.a), rational::to_string(&a.b), a.exact_for_large_n))
}

/// Exact W₁(μ_Xⁿ, μ_Yⁿ) for n = 0..=n_max.
#[pyfunction]
#[pyo3(signature = (family, d, q, n_max, alpha = "0"))]
pub fn exact_sequence(family: &str, d: u32, q: u64, n_max: usize, alpha: &str) -> PyResult<Vec<String>> {
    let family: Family = family.parse().map_err(err)?;
    let seq = asymptotics::exact_sequence(family, &parse(alpha)?, d, q, n_max).map_err(err)?;
    Ok(seq.iter().map(rational::to_string).collect())
}

/// Return probabilities g(0, n) of the lazy walk, n ≤ order.
#[pyfunction]
pub fn return_probabilities(alpha: &str, q: u64, order: usize) -> PyResult<Vec<String>> {
    let g = treewass_core::genfun::srw_gamma(&parse(alpha)?, q, order).map_err(err)?;
    Ok(g.coeffs().iter().map(rational::to_string).collect())
}

#[pyfunction]
pub fn inequalities_hold(alpha: &str, d: u32, q: u64) -> PyResult<bool> {
    Ok(asymptotics::verify_inequalities(&parse(alpha)?, d, q).map_err(err)?.all_hold())
}

#[pymodule]
fn treewass(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(w1, m)?)?;
    m.add_function(wrap_pyfunction!(w1_lp, m)?)?;
    m.add_function(wrap_pyfunction!(duality, m)?)?;
    m.add_function(wrap_pyfunction!(w1_radial, m)?)?;
    m.add_function(wrap_pyfunction!(asym, m)?)?;
    m.add_function(wrap_pyfunction!(exact_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(return_probabilities, m)?)?;
    m.add_function(wrap_pyfunction!(inequalities_hold, m)?)?;
    Ok(())
}
