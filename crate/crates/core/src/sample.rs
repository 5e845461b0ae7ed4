//! Random trees, measures and radial profiles for property checks.

use num_traits::Zero;
use rand::Rng;

use crate::radial::RadialProfile;
use crate::rational::{frac, Rational};
use crate::tree::{Measure, Tree};

/// Uniform random recursive tree: vertex i attaches to a vertex below i.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Tree {
    let n = n.max(1);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    Tree::from_edges(n, &edges).expect("recursive trees are trees")
}

fn random_weight<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> Rational {
    frac(rng.gen_range(1..=3 * max_den), rng.gen_range(1..=max_den))
}

/// A nonzero measure on a random subset of the `len` vertices.
pub fn random_measure<R: Rng + ?Sized>(rng: &mut R, len: usize, max_den: i64) -> Measure {
    let mut m = Measure::zero(len);
    let support = rng.gen_range(1..=len.clamp(1, 5));
    for _ in 0..support {
        let v = rng.gen_range(0..len);
        m.add(v, random_weight(rng, max_den));
    }
    m
}

/// Two random measures of equal total mass.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, len: usize, max_den: i64) -> (Measure, Measure) {
    let mu = random_measure(rng, len, max_den);
    let nu = random_measure(rng, len, max_den);
    let nu = nu.scaled(&(mu.total() / nu.total()));
    (mu, nu)
}

/// A random profile supported in radii 0..=max_radius. With `annulus` set,
/// the inner radii are zeroed out.
pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, max_radius: usize, annulus: bool) -> RadialProfile {
    let len = rng.gen_range(1..=max_radius + 1);
    let inner = if annulus { rng.gen_range(0..len) } else { 0 };
    let mut s: Vec<Rational> = (0..len)
        .map(|l| if l < inner || rng.gen_bool(0.25) { Rational::zero() } else { random_weight(rng, 7) })
        .collect();
    if s.iter().all(Zero::is_zero) {
        s[len - 1] = random_weight(rng, 7);
    }
    RadialProfile::new(s).expect("nonnegative with mass")
}
