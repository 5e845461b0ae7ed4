//! Radially symmetric measures on the (q+1)-regular tree 𝕋_{q+1}.
//!
//! A profile `s` places mass `s(ℓ)` on every vertex at distance ℓ from a
//! centre. For two centres X, Y at distance d every vertex v has a
//! basepoint Z_i on the X–Y path and a height h above it, so that
//! dist(X, v) = i + h and dist(Y, v) = d − i + h. W₁(μ_X, μ_Y) is then a
//! finite sum over the classes (i, h), available here in two forms (via
//! the explicit potential, and via edge flows) plus the brute-force tree
//! computation on a finite truncation.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::RadialError;
use crate::genfun;
use crate::rational::{self, half, int, qpow, Rational};
use crate::tree::{assignment_from, unique_flow, w1_tree, Flow, Measure, Potential, Tree};

/// Nonnegative masses s(0), …, s(L) by distance from the centre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialProfile {
    s: Vec<Rational>,
}

impl RadialProfile {
    /// Trailing zeros are dropped. At least one entry must be positive.
    pub fn new(mut s: Vec<Rational>) -> Result<Self, RadialError> {
        if let Some(bad) = s.iter().find(|x| x.is_negative()) {
            return Err(RadialError::InvalidParams(format!("negative profile entry {}", rational::to_string(bad))));
        }
        while s.last().is_some_and(Zero::is_zero) {
            s.pop();
        }
        if s.is_empty() {
            return Err(RadialError::InvalidParams("profile has no mass".into()));
        }
        Ok(RadialProfile { s })
    }

    /// Unit mass at the centre.
    pub fn point() -> Self {
        RadialProfile { s: vec![Rational::one()] }
    }

    /// Uniform probability on the sphere of radius `r`.
    pub fn sphere(q: u64, r: usize) -> Self {
        let mut s = vec![Rational::zero(); r + 1];
        s[r] = if r == 0 { Rational::one() } else { sphere_size(q, r).recip() };
        RadialProfile { s }
    }

    /// Uniform probability on the ball of radius `r`.
    pub fn ball(q: u64, r: usize) -> Self {
        let size = (0..=r).fold(Rational::zero(), |acc, l| acc + sphere_size(q, l));
        RadialProfile { s: vec![size.recip(); r + 1] }
    }

    /// Law of the lazy simple random walk after `n` steps.
    pub fn srw(alpha: &Rational, q: u64, n: usize) -> Result<Self, RadialError> {
        let table = genfun::srw_g_table(alpha, q, n).map_err(|e| RadialError::InvalidParams(e.to_string()))?;
        RadialProfile::new(table.column(n))
    }

    pub fn get(&self, l: usize) -> Rational {
        self.s.get(l).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn values(&self) -> &[Rational] {
        &self.s
    }

    /// Largest ℓ with s(ℓ) > 0.
    pub fn support_radius(&self) -> usize {
        self.s.len() - 1
    }

    /// Σ_ℓ s(ℓ)·|sphere of radius ℓ|.
    pub fn total_mass(&self, q: u64) -> Rational {
        self.s.iter().enumerate().fold(Rational::zero(), |acc, (l, x)| acc + x * sphere_size(q, l))
    }
}

/// Number of vertices at distance `r` from a fixed vertex of 𝕋_{q+1}.
pub fn sphere_size(q: u64, r: usize) -> Rational {
    if r == 0 {
        Rational::one()
    } else {
        int(q as i64 + 1) * qpow(q, r as i64 - 1)
    }
}

/// Branching q and separation d = dist(X, Y).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairGeometry {
    pub q: u64,
    pub d: u32,
}

impl PairGeometry {
    pub fn new(q: u64, d: u32) -> Result<Self, RadialError> {
        match q {
            0 => Err(RadialError::InvalidParams("q must be at least 2".into())),
            1 => Err(RadialError::PathGraph),
            _ if d == 0 => Err(RadialError::InvalidParams("d must be at least 1".into())),
            _ => Ok(PairGeometry { q, d }),
        }
    }

    /// ⌊d/2⌋.
    pub fn delta(&self) -> i64 {
        rational::halves(self.d).0
    }

    /// ⌈d/2⌉.
    pub fn delta_prime(&self) -> i64 {
        rational::halves(self.d).1
    }

    fn half_d(&self) -> Rational {
        int(self.d as i64) * half()
    }
}

/// Basepoint index i on the X–Y path and height h above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasepointCoord {
    pub i: u32,
    pub h: u32,
}

impl BasepointCoord {
    pub fn dist_x(&self) -> u32 {
        self.i + self.h
    }

    pub fn dist_y(&self, g: &PairGeometry) -> u32 {
        g.d - self.i + self.h
    }

    /// |V_{i,h}| in the infinite tree.
    pub fn peer_count(&self, g: &PairGeometry) -> Rational {
        if self.h == 0 {
            Rational::one()
        } else if self.i == 0 || self.i == g.d {
            qpow(g.q, self.h as i64)
        } else {
            int(g.q as i64 - 1) * qpow(g.q, self.h as i64 - 1)
        }
    }
}

/// Coordinates from the distances to X and Y.
pub fn basepoint_coord(g: &PairGeometry, dist_x: u32, dist_y: u32) -> BasepointCoord {
    let (dx, dy, d) = (dist_x as i64, dist_y as i64, g.d as i64);
    debug_assert!((dx - dy + d) % 2 == 0 && dx + dy >= d && (dx - dy).abs() <= d);
    BasepointCoord { i: ((dx - dy + d) / 2) as u32, h: ((dx + dy - d) / 2) as u32 }
}

/// Φ = d/2 − i + h for i ≤ d/2, else d/2 − i − h.
pub fn radial_potential(c: BasepointCoord, g: &PairGeometry) -> Rational {
    let base = g.half_d() - int(c.i as i64);
    if 2 * c.i <= g.d {
        base + int(c.h as i64)
    } else {
        base - int(c.h as i64)
    }
}

/// A finite piece of 𝕋_{q+1} around the X–Y path.
#[derive(Debug, Clone)]
pub struct TruncatedTree {
    pub tree: Tree,
    pub geometry: PairGeometry,
    pub radius: u32,
    /// Vertex index of X (always 0).
    pub x: usize,
    /// Vertex index of Y (always d).
    pub y: usize,
    coords: Vec<BasepointCoord>,
}

impl TruncatedTree {
    pub fn coord(&self, v: usize) -> BasepointCoord {
        self.coords[v]
    }

    pub fn coords(&self) -> &[BasepointCoord] {
        &self.coords
    }

    /// Φ from [`radial_potential`] at every vertex.
    pub fn potential(&self) -> Potential {
        Potential::from_values(self.coords.iter().map(|&c| radial_potential(c, &self.geometry)).collect())
    }
}

/// The path X = Z_0, …, Z_d = Y together with every vertex within distance
/// `radius` of X or Y. Path vertices are `Z0..Zd` (indices 0..=d); the rest
/// are labelled `v{k}`.
pub fn build_truncated_tree(q: u64, d: u32, radius: u32) -> Result<TruncatedTree, RadialError> {
    let geometry = PairGeometry::new(q, d)?;
    let mut labels: Vec<String> = (0..=d).map(|i| format!("Z{i}")).collect();
    let mut coords: Vec<BasepointCoord> = (0..=d).map(|i| BasepointCoord { i, h: 0 }).collect();
    let mut edges: Vec<(usize, usize)> = (0..d as usize).map(|i| (i, i + 1)).collect();

    let mut frontier: Vec<usize> = (0..=d as usize).collect();
    while let Some(v) = frontier.pop() {
        let c = coords[v];
        let reach = c.i.min(d - c.i) + c.h + 1;
        if reach > radius {
            continue;
        }
        let children = match (c.h, c.i) {
            (0, i) if i == 0 || i == d => q,
            (0, _) => q - 1,
            _ => q,
        };
        for _ in 0..children {
            let w = labels.len();
            labels.push(format!("v{w}"));
            coords.push(BasepointCoord { i: c.i, h: c.h + 1 });
            edges.push((v, w));
            frontier.push(w);
        }
    }
    let tree = Tree::from_labelled_edges(labels, &edges)?;
    Ok(TruncatedTree { tree, geometry, radius, x: 0, y: d as usize, coords })
}

/// μ(v) = s(dist(center, v)). Fails if any of the profile's mass would fall
/// outside the truncation.
pub fn radial_measure(tt: &TruncatedTree, center: usize, profile: &RadialProfile) -> Result<Measure, RadialError> {
    let dist = tt.tree.distances_from(center);
    let mut m = Measure::zero(tt.tree.len());
    for (v, &l) in dist.iter().enumerate() {
        m.add(v, profile.get(l));
    }
    if m.total() != profile.total_mass(tt.geometry.q) {
        return Err(RadialError::TruncationTooSmall { radius: tt.radius, support: profile.support_radius() });
    }
    Ok(m)
}

/// W₁(μ_X, μ_Y) as S₁ + S₂ + S₃, summed via the explicit potential.
pub fn w1_radial_formula(profile: &RadialProfile, g: &PairGeometry) -> Rational {
    let s = |l: i64| profile.get(l as usize);
    let q = g.q;
    let d = g.d as i64;
    let l_max = profile.support_radius() as i64;
    let two = int(2);
    let half_d = g.half_d();
    let q_minus_1 = int(q as i64 - 1);

    let mut s1 = Rational::zero();
    for h in 0..=l_max {
        s1 += qpow(q, h) * (s(h) - s(h + d)) * (&half_d + int(h));
    }
    let mut s2 = Rational::zero();
    let mut s3 = Rational::zero();
    for i in 1..=g.delta() {
        s2 += (s(i) - s(d - i)) * (&half_d - int(i));
        for h in 1..=l_max {
            s3 += &q_minus_1 * qpow(q, h - 1) * (s(i + h) - s(d - i + h)) * (&half_d - int(i) + int(h));
        }
    }
    two * (s1 + s2 + s3)
}

/// W₁(μ_X, μ_Y) as the total absolute flow, edge class by edge class.
pub fn w1_radial_flow_formula(profile: &RadialProfile, g: &PairGeometry) -> Rational {
    let s = |l: i64| profile.get(l as usize);
    let q = g.q;
    let d = g.d as i64;
    let l_max = profile.support_radius() as i64;
    let q_minus_1 = int(q as i64 - 1);

    // edges hanging off X and Y
    let mut e1 = Rational::zero();
    for h in 0..=l_max {
        for i in 1..=(l_max - h) {
            e1 += qpow(q, h + i) * (s(h + i) - s(d + h + i));
        }
    }
    // edges hanging off interior path vertices, one side (mirror doubles it)
    let mut e2 = Rational::zero();
    for b in 1..=(d - 1) / 2 {
        for h in 0..=l_max {
            for i in 1..=(l_max - h) {
                e2 += &q_minus_1 * qpow(q, h + i - 1) * (s(b + h + i) - s(d - b + h + i));
            }
        }
    }
    // path edges: the charge on the X side of each
    let mut end_column = Rational::zero();
    for h in 0..=l_max {
        end_column += qpow(q, h) * (s(h) - s(d + h));
    }
    let mut e3 = Rational::zero();
    for a in 0..d {
        e3 += &end_column;
        for i in 1..=a {
            e3 += s(i) - s(d - i);
            for h in 1..=l_max {
                e3 += &q_minus_1 * qpow(q, h - 1) * (s(i + h) - s(d - i + h));
            }
        }
    }
    int(2) * (e1 + e2) + e3
}

/// Brute-force W₁(μ_X, μ_Y) on the truncation of radius L + d.
pub fn w1_radial_tree(profile: &RadialProfile, g: &PairGeometry) -> Result<Rational, RadialError> {
    let tt = build_truncated_tree(g.q, g.d, default_radius(profile, g))?;
    let mu = radial_measure(&tt, tt.x, profile)?;
    let nu = radial_measure(&tt, tt.y, profile)?;
    Ok(w1_tree(&tt.tree, &mu, &nu)?)
}

/// L + d.
pub fn default_radius(profile: &RadialProfile, g: &PairGeometry) -> u32 {
    profile.support_radius() as u32 + g.d
}

/// The unique flow of μ_X − μ_Y on a truncation, with the two measures.
pub fn radial_flow(tt: &TruncatedTree, profile: &RadialProfile) -> Result<(Measure, Measure, Flow), RadialError> {
    let mu = radial_measure(tt, tt.x, profile)?;
    let nu = radial_measure(tt, tt.y, profile)?;
    let rho = assignment_from(&mu, &nu)?;
    let flow = unique_flow(&tt.tree, &rho)?;
    Ok((mu, nu, flow))
}

/// Sign pattern of a radial flow: on an off-path edge (v farther from the
/// path than w), ψ(v, w) ≥ 0, = 0 or ≤ 0 as the basepoint index is below,
/// at or above d/2; on the path ψ(Z_i, Z_{i+1}) > 0.
pub fn flow_direction_check(tree: &Tree, x: usize, y: usize, flow: &Flow) -> bool {
    let dx = tree.distances_from(x);
    let dy = tree.distances_from(y);
    let d = dx[y] as u32;
    let Ok(g) = PairGeometry::new(2, d) else { return false };
    let coord = |v: usize| basepoint_coord(&g, dx[v] as u32, dy[v] as u32);
    tree.edges().iter().all(|&(a, b)| {
        let (ca, cb) = (coord(a), coord(b));
        if ca.h == 0 && cb.h == 0 {
            let (from, to) = if ca.i < cb.i { (a, b) } else { (b, a) };
            return flow.between(tree, from, to).is_positive();
        }
        let (v, w, c) = if ca.h > cb.h { (a, b, ca) } else { (b, a, cb) };
        let psi = flow.between(tree, v, w);
        match (2 * c.i).cmp(&d) {
            std::cmp::Ordering::Less => !psi.is_negative(),
            std::cmp::Ordering::Equal => psi.is_zero(),
            std::cmp::Ordering::Greater => !psi.is_positive(),
        }
    })
}

/// A profile named on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileSpec {
    Srw { alpha: Rational, n: usize },
    Sphere { r: usize },
    Ball { r: usize },
    Custom(Vec<Rational>),
}

impl ProfileSpec {
    pub fn profile(&self, q: u64) -> Result<RadialProfile, RadialError> {
        match self {
            ProfileSpec::Srw { alpha, n } => RadialProfile::srw(alpha, q, *n),
            ProfileSpec::Sphere { r } => Ok(RadialProfile::sphere(q, *r)),
            ProfileSpec::Ball { r } => Ok(RadialProfile::ball(q, *r)),
            ProfileSpec::Custom(s) => RadialProfile::new(s.clone()),
        }
    }
}

impl FromStr for ProfileSpec {
    type Err = RadialError;

    /// `srw:alpha=1/2,n=6`, `sphere:r=6`, `ball:r=6` or `custom:[1,0,1/3]`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || RadialError::BadProfileSpec(text.to_string());
        let (kind, rest) = text.trim().split_once(':').ok_or_else(bad)?;
        let params = || -> Result<std::collections::HashMap<&str, &str>, RadialError> {
            rest.split(',')
                .map(|kv| kv.split_once('=').map(|(k, v)| (k.trim(), v.trim())).ok_or_else(bad))
                .collect()
        };
        let uint = |v: Option<&&str>| v.and_then(|s| s.parse::<usize>().ok()).ok_or_else(bad);
        match kind.trim() {
            "srw" => {
                let p = params()?;
                let alpha = p.get("alpha").map_or(Ok(Rational::zero()), |a| rational::parse_rational(a).map_err(|_| bad()))?;
                Ok(ProfileSpec::Srw { alpha, n: uint(p.get("n"))? })
            }
            "sphere" => Ok(ProfileSpec::Sphere { r: uint(params()?.get("r"))? }),
            "ball" => Ok(ProfileSpec::Ball { r: uint(params()?.get("r"))? }),
            "custom" => {
                let body = rest.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
                let values = body
                    .split(',')
                    .map(|t| rational::parse_rational(t.trim().trim_matches('"')).map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ProfileSpec::Custom(values))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ProfileSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileSpec::Srw { alpha, n } => write!(f, "srw:alpha={},n={n}", rational::to_string(alpha)),
            ProfileSpec::Sphere { r } => write!(f, "sphere:r={r}"),
            ProfileSpec::Ball { r } => write!(f, "ball:r={r}"),
            ProfileSpec::Custom(s) => {
                let items: Vec<String> = s.iter().map(rational::to_string).collect();
                write!(f, "custom:[{}]", items.join(","))
            }
        }
    }
}
