//! Exact 1-Wasserstein distances on trees.
//!
//! * [`tree`]: unique flows, good potentials and W₁ on finite trees.
//! * [`lp`]: an independent transportation-simplex oracle and duality checks.
//! * [`radial`]: radially symmetric measures on the regular tree 𝕋_{q+1}.
//! * [`series`] and [`genfun`]: truncated power series, the g(ℓ, n) tables of
//!   lazy random walks, spheres and balls, and the generating-function form
//!   of W₁.
//! * [`asymptotics`]: the linear coefficients A, B and related constants.

pub mod asymptotics;
pub mod error;
pub mod genfun;
pub mod instance;
pub mod interval;
pub mod lp;
pub mod radial;
pub mod rational;
pub mod sample;
pub mod series;
pub mod tree;

pub use error::*;
pub use instance::Instance;
pub use rational::Rational;
pub use tree::{
    assignment_from, flow_cost, good_potential, good_potential_rooted, is_good_potential, potential_value,
    unique_flow, validate_tree, w1_tree, w1_tree_by_potential, Assignment, Flow, Measure, Potential, RawGraph, Tree,
};
pub use lp::{
    all_pairs_distances, check_complementary_slackness, dual_feasible, verify_duality, w1_lp, DualityReport,
    FiniteGraph, TransportPlan,
};
pub use radial::{
    basepoint_coord, build_truncated_tree, flow_direction_check, radial_measure, radial_potential,
    w1_radial_flow_formula, w1_radial_formula, w1_radial_tree, BasepointCoord, PairGeometry, ProfileSpec,
    RadialProfile, TruncatedTree,
};
pub use series::Series1;
pub use genfun::{
    ball_gf, check_functional_equation, sphere_gf, srw_closed_form, srw_g_table, w1_via_genfun, GFBundle, GTable,
};
pub use asymptotics::{
    ball_ab, chi_tree, exact_sequence, gamma_asymptotic, h_values, kappa_curvature, sphere_ab, srw_ab,
    verify_inequalities, Family, GammaAsymptotic, LinearAsymptotic,
};
pub use interval::Interval;
