//! Exact Kantorovich LP on small finite graphs.
//!
//! The primal is solved as a transportation problem between the two
//! supports with the stepping-stone (MODI) simplex over exact rationals.
//! Entering and leaving cells are both chosen by lowest index, so degenerate
//! pivots cannot cycle. Costs are hop distances.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LpError, TreeError};
use crate::rational::{self, Rational};
use crate::tree::{Measure, Potential, RawGraph, Tree};

/// Largest support (per side) accepted by [`w1_lp`].
pub const MAX_SUPPORT: usize = 40;

/// Connected simple graph with its hop-distance matrix.
#[derive(Debug, Clone)]
pub struct FiniteGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    dist: Vec<Vec<u32>>,
}

impl FiniteGraph {
    /// Graph on `0..n` with the given edges. Self-loops and repeated edges
    /// are rejected; cycles are fine.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, LpError> {
        let n = labels.len();
        if n == 0 {
            return Err(TreeError::Empty.into());
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut stored = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(TreeError::UnknownVertex(format!("#{}", a.max(b))).into());
            }
            if a == b {
                return Err(TreeError::SelfLoop(labels[a].clone()).into());
            }
            if adjacency[a].contains(&b) {
                return Err(TreeError::DuplicateEdge(labels[a].clone(), labels[b].clone()).into());
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            stored.push((a.min(b), a.max(b)));
        }
        let mut g = FiniteGraph { labels, edges: stored, adjacency, dist: Vec::new() };
        g.dist = all_pairs_distances(&g)?;
        Ok(g)
    }

    pub fn from_tree(tree: &Tree) -> Self {
        let labels = tree.labels().to_vec();
        FiniteGraph::new(labels, tree.edges()).expect("a tree is a connected simple graph")
    }

    pub fn from_raw(raw: &RawGraph) -> Result<Self, LpError> {
        let index: std::collections::HashMap<&str, usize> =
            raw.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != raw.vertices.len() {
            let dup = raw.vertices.iter().find(|v| raw.vertices.iter().filter(|w| w == v).count() > 1);
            return Err(TreeError::DuplicateVertex(dup.cloned().unwrap_or_default()).into());
        }
        let mut edges = Vec::with_capacity(raw.edges.len());
        for (a, b) in &raw.edges {
            let ia = *index.get(a.as_str()).ok_or_else(|| TreeError::UnknownVertex(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| TreeError::UnknownVertex(b.clone()))?;
            edges.push((ia, ib));
        }
        FiniteGraph::new(raw.vertices.clone(), &edges)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u][v]
    }

    pub fn distances(&self) -> &[Vec<u32>] {
        &self.dist
    }
}

/// BFS from every vertex. Fails with `NotConnected` if some pair is
/// unreachable.
pub fn all_pairs_distances(graph: &FiniteGraph) -> Result<Vec<Vec<u32>>, LpError> {
    let n = graph.adjacency.len();
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        let mut d = vec![u32::MAX; n];
        d[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &graph.adjacency[v] {
                if d[w] == u32::MAX {
                    d[w] = d[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if d.contains(&u32::MAX) {
            return Err(LpError::NotConnected);
        }
        out.push(d);
    }
    Ok(out)
}

/// Coupling π between two measures, keyed by (source, target) vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransportPlan {
    pub entries: BTreeMap<(usize, usize), Rational>,
}

impl TransportPlan {
    pub fn cost(&self, graph: &FiniteGraph) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, (&(u, v), x)| acc + x * rational::int(graph.dist(u, v) as i64))
    }

    /// Row sums equal μ and column sums equal ν, exactly.
    pub fn satisfies_marginals(&self, mu: &Measure, nu: &Measure) -> bool {
        if self.entries.values().any(Signed::is_negative) {
            return false;
        }
        let mut rows = Measure::zero(mu.len());
        let mut cols = Measure::zero(nu.len());
        for (&(u, v), x) in &self.entries {
            if u >= mu.len() || v >= nu.len() {
                return false;
            }
            rows.add(u, x.clone());
            cols.add(v, x.clone());
        }
        rows == *mu && cols == *nu
    }
}

fn check_inputs(graph: &FiniteGraph, mu: &Measure, nu: &Measure) -> Result<(), LpError> {
    for m in [mu, nu] {
        if m.len() != graph.len() {
            return Err(TreeError::LengthMismatch { expected: graph.len(), got: m.len() }.into());
        }
    }
    let (tm, tn) = (mu.total(), nu.total());
    if tm != tn {
        return Err(LpError::MassMismatch { mu: rational::to_string(&tm), nu: rational::to_string(&tn) });
    }
    Ok(())
}

/// Exact W₁ and an optimal plan.
pub fn w1_lp(graph: &FiniteGraph, mu: &Measure, nu: &Measure) -> Result<(Rational, TransportPlan), LpError> {
    check_inputs(graph, mu, nu)?;
    let sources = mu.support();
    let targets = nu.support();
    if sources.is_empty() {
        return Ok((Rational::zero(), TransportPlan::default()));
    }
    if sources.len() > MAX_SUPPORT || targets.len() > MAX_SUPPORT {
        return Err(LpError::TooLarge { sources: sources.len(), targets: targets.len(), limit: MAX_SUPPORT });
    }
    let supply: Vec<Rational> = sources.iter().map(|&v| mu.get(v)).collect();
    let demand: Vec<Rational> = targets.iter().map(|&v| nu.get(v)).collect();
    let cost: Vec<Vec<i64>> =
        sources.iter().map(|&u| targets.iter().map(|&v| graph.dist(u, v) as i64).collect()).collect();

    let x = transportation_simplex(&supply, &demand, &cost);

    let mut plan = TransportPlan::default();
    for (i, row) in x.into_iter().enumerate() {
        for (j, value) in row.into_iter().enumerate() {
            if let Some(value) = value.filter(|v| !v.is_zero()) {
                plan.entries.insert((sources[i], targets[j]), value);
            }
        }
    }
    Ok((plan.cost(graph), plan))
}

/// Returns the optimal allocation; `None` marks a non-basic cell.
fn transportation_simplex(supply: &[Rational], demand: &[Rational], cost: &[Vec<i64>]) -> Vec<Vec<Option<Rational>>> {
    let (m, n) = (supply.len(), demand.len());
    let mut x: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; m];

    // northwest corner, m + n − 1 basic cells including degenerate zeros
    let mut a = supply.to_vec();
    let mut b = demand.to_vec();
    let (mut i, mut j) = (0, 0);
    loop {
        let t = if a[i] < b[j] { a[i].clone() } else { b[j].clone() };
        a[i] -= &t;
        b[j] -= &t;
        x[i][j] = Some(t);
        if i == m - 1 && j == n - 1 {
            break;
        }
        if (a[i].is_zero() && i < m - 1) || j == n - 1 {
            i += 1;
        } else {
            j += 1;
        }
    }

    loop {
        let (u, v) = modi_duals(&x, cost);
        let entering = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| x[i][j].is_none() && cost[i][j] - u[i] - v[j] < 0);
        let Some((ei, ej)) = entering else { return x };

        // path in the basis tree from column ej back to row ei
        let path = basis_path(&x, ei, ej);
        let mut leaving: Option<(usize, usize)> = None;
        for &(pi, pj) in path.iter().step_by(2) {
            let val = x[pi][pj].as_ref().expect("basic");
            leaving = match leaving {
                None => Some((pi, pj)),
                Some((li, lj)) => {
                    let cur = x[li][lj].as_ref().expect("basic");
                    if val < cur || (val == cur && (pi, pj) < (li, lj)) {
                        Some((pi, pj))
                    } else {
                        Some((li, lj))
                    }
                }
            };
        }
        let (li, lj) = leaving.expect("cycle has a minus cell");
        let theta = x[li][lj].clone().expect("basic");
        for (k, &(pi, pj)) in path.iter().enumerate() {
            let cell = x[pi][pj].as_mut().expect("basic");
            if k % 2 == 0 {
                *cell -= &theta;
            } else {
                *cell += &theta;
            }
        }
        x[ei][ej] = Some(theta);
        x[li][lj] = None;
    }
}

/// u_i + v_j = c_ij on the basic cells, with u_0 = 0.
fn modi_duals(x: &[Vec<Option<Rational>>], cost: &[Vec<i64>]) -> (Vec<i64>, Vec<i64>) {
    let (m, n) = (x.len(), x[0].len());
    let mut u: Vec<Option<i64>> = vec![None; m];
    let mut v: Vec<Option<i64>> = vec![None; n];
    u[0] = Some(0);
    // nodes 0..m are rows, m..m+n columns
    let mut queue = VecDeque::from([0usize]);
    while let Some(node) = queue.pop_front() {
        if node < m {
            let ui = u[node].expect("set");
            for j in 0..n {
                if x[node][j].is_some() && v[j].is_none() {
                    v[j] = Some(cost[node][j] - ui);
                    queue.push_back(m + j);
                }
            }
        } else {
            let j = node - m;
            let vj = v[j].expect("set");
            for i in 0..m {
                if x[i][j].is_some() && u[i].is_none() {
                    u[i] = Some(cost[i][j] - vj);
                    queue.push_back(i);
                }
            }
        }
    }
    (
        u.into_iter().map(|x| x.expect("basis spans all rows")).collect(),
        v.into_iter().map(|x| x.expect("basis spans all columns")).collect(),
    )
}

/// Basic cells on the unique basis-tree path from column `ej` to row `ei`.
/// The first cell lies in column `ej`, the last in row `ei`.
fn basis_path(x: &[Vec<Option<Rational>>], ei: usize, ej: usize) -> Vec<(usize, usize)> {
    let (m, n) = (x.len(), x[0].len());
    let mut parent: Vec<Option<usize>> = vec![None; m + n];
    let mut seen = vec![false; m + n];
    let start = m + ej;
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        if node == ei {
            break;
        }
        let neighbours: Vec<usize> = if node < m {
            (0..n).filter(|&j| x[node][j].is_some()).map(|j| m + j).collect()
        } else {
            (0..m).filter(|&i| x[i][node - m].is_some()).collect()
        };
        for w in neighbours {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(node);
                queue.push_back(w);
            }
        }
    }
    // walk back from the row node to the column node
    let mut nodes = vec![ei];
    while *nodes.last().expect("nonempty") != start {
        let p = parent[*nodes.last().expect("nonempty")].expect("basis tree is connected");
        nodes.push(p);
    }
    nodes.reverse();
    nodes
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            if a < m {
                (a, b - m)
            } else {
                (b, a - m)
            }
        })
        .collect()
}

/// |Φ(u) − Φ(v)| ≤ 1 on every edge.
pub fn dual_feasible(graph: &FiniteGraph, phi: &Potential) -> bool {
    first_violation(graph, phi).is_none()
}

fn first_violation(graph: &FiniteGraph, phi: &Potential) -> Option<(usize, usize)> {
    let one = rational::int(1);
    graph.edges.iter().copied().find(|&(a, b)| (phi.get(a) - phi.get(b)).abs() > one)
}

/// Primal optimum, dual objective and whether they coincide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    #[serde(with = "rational::as_string")]
    pub primal: Rational,
    #[serde(with = "rational::as_string")]
    pub dual: Rational,
    pub certificate: bool,
}

/// Solve the primal and compare it to (μ − ν)ᵀΦ.
pub fn verify_duality(graph: &FiniteGraph, mu: &Measure, nu: &Measure, phi: &Potential) -> Result<DualityReport, LpError> {
    if phi.len() != graph.len() {
        return Err(TreeError::LengthMismatch { expected: graph.len(), got: phi.len() }.into());
    }
    if let Some((a, b)) = first_violation(graph, phi) {
        return Err(LpError::InfeasiblePotential(a, b));
    }
    let (primal, _) = w1_lp(graph, mu, nu)?;
    let dual = dual_value(mu, nu, phi);
    let certificate = primal == dual;
    Ok(DualityReport { primal, dual, certificate })
}

/// (μ − ν)ᵀΦ.
pub fn dual_value(mu: &Measure, nu: &Measure, phi: &Potential) -> Rational {
    let plus = mu.iter().fold(Rational::zero(), |acc, (v, m)| acc + m * phi.get(v));
    let minus = nu.iter().fold(Rational::zero(), |acc, (v, m)| acc + m * phi.get(v));
    plus - minus
}

/// Every positive entry π(v, w) has Φ(v) − Φ(w) = dist(v, w).
pub fn check_complementary_slackness(graph: &FiniteGraph, plan: &TransportPlan, phi: &Potential) -> bool {
    plan.entries.iter().all(|(&(v, w), x)| {
        !x.is_positive() || phi.get(v) - phi.get(w) == rational::int(graph.dist(v, w) as i64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn distances_on_small_graphs() {
        let edge = FiniteGraph::new(labels(2), &[(0, 1)]).unwrap();
        assert_eq!(edge.dist(0, 1), 1);
        let path = FiniteGraph::new(labels(3), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.dist(0, 2), 2);
        assert_eq!(path.dist(2, 2), 0);
        let split = FiniteGraph::new(labels(3), &[(0, 1)]);
        assert_eq!(split.unwrap_err(), LpError::NotConnected);
    }

    #[test]
    fn identical_measures_cost_nothing() {
        let g = FiniteGraph::new(labels(3), &[(0, 1), (1, 2)]).unwrap();
        let mu = Measure::from_dense(vec![frac(1, 2), int(0), frac(1, 2)]);
        let (cost, plan) = w1_lp(&g, &mu, &mu).unwrap();
        assert_eq!(cost, int(0));
        assert!(plan.satisfies_marginals(&mu, &mu));
        assert!(plan.entries.keys().all(|(a, b)| a == b));
    }

    #[test]
    fn point_masses_on_a_cycle() {
        let g = FiniteGraph::new(labels(6), &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let (cost, _) = w1_lp(&g, &Measure::point(6, 0), &Measure::point(6, 3)).unwrap();
        assert_eq!(cost, int(3));
        let (cost, _) = w1_lp(&g, &Measure::point(6, 0), &Measure::point(6, 5)).unwrap();
        assert_eq!(cost, int(1));
    }

    #[test]
    fn degenerate_transport_terminates() {
        // equal-mass blocks force degenerate pivots
        let g = FiniteGraph::new(labels(5), &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mu = Measure::from_dense(vec![int(1), int(1), int(0), int(1), int(1)]);
        let nu = Measure::from_dense(vec![int(0), int(1), int(2), int(1), int(0)]);
        let (cost, plan) = w1_lp(&g, &mu, &nu).unwrap();
        assert_eq!(cost, int(4));
        assert!(plan.satisfies_marginals(&mu, &nu));
    }

    #[test]
    fn mass_mismatch_and_size_cap() {
        let g = FiniteGraph::new(labels(2), &[(0, 1)]).unwrap();
        let nu = Measure::from_dense(vec![int(0), int(2)]);
        assert!(matches!(w1_lp(&g, &Measure::point(2, 0), &nu), Err(LpError::MassMismatch { .. })));

        let n = 2 * MAX_SUPPORT + 2;
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let g = FiniteGraph::new(labels(n), &edges).unwrap();
        let mu = Measure::from_dense((0..n).map(|i| int((i % 2) as i64)).collect());
        let nu = Measure::from_dense((0..n).map(|i| int(((i + 1) % 2) as i64)).collect());
        assert!(matches!(w1_lp(&g, &mu, &nu), Err(LpError::TooLarge { .. })));
    }

    #[test]
    fn feasibility_and_slackness() {
        let g = FiniteGraph::new(labels(3), &[(0, 1), (1, 2)]).unwrap();
        let flat = Potential::from_values(vec![int(5); 3]);
        assert!(dual_feasible(&g, &flat));
        let jump = Potential::from_values(vec![int(0), int(2), int(2)]);
        assert!(!dual_feasible(&g, &jump));
        let mu = Measure::point(3, 0);
        let nu = Measure::point(3, 2);
        assert_eq!(verify_duality(&g, &mu, &nu, &jump).unwrap_err(), LpError::InfeasiblePotential(0, 1));

        let phi = Potential::from_values(vec![int(2), int(1), int(0)]);
        let report = verify_duality(&g, &mu, &nu, &phi).unwrap();
        assert_eq!(report, DualityReport { primal: int(2), dual: int(2), certificate: true });
        let (_, plan) = w1_lp(&g, &mu, &nu).unwrap();
        assert!(check_complementary_slackness(&g, &plan, &phi));
        assert!(!check_complementary_slackness(&g, &plan, &flat));
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(json, r#"{"primal":"2","dual":"2","certificate":true}"#);
    }
}
