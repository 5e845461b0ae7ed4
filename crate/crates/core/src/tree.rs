//! Exact W₁ on finite trees.
//!
//! On a tree every zero-sum assignment ρ = μ − ν has exactly one flow with
//! divergence ρ: the value on an edge `{x, y}` is the total charge of the
//! component containing `x` once the edge is removed. W₁ is the total
//! absolute flow. Equivalently W₁ = ρᵀΦ for any *good* potential Φ, one that
//! drops by exactly one unit along every edge that carries flow and is
//! 1-Lipschitz elsewhere.
//!
//! Everything here is exact rational arithmetic. Vertices carry opaque string
//! ids on input and are addressed by dense indices internally, in the order
//! they were listed.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::TreeError;
use crate::rational::{self, Rational};

/// Vertex and edge lists as supplied by a caller, before validation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl RawGraph {
    pub fn new<V: Into<String>>(vertices: impl IntoIterator<Item = V>, edges: impl IntoIterator<Item = (V, V)>) -> Self {
        RawGraph {
            vertices: vertices.into_iter().map(Into::into).collect(),
            edges: edges.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }
}

/// A finite tree with dense vertex indices.
///
/// Edges are stored once as `(min, max)` index pairs; a flow value on edge
/// `e` is reported in that orientation.
#[derive(Debug, Clone)]
pub struct Tree {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    /// BFS order from vertex 0.
    order: Vec<usize>,
    /// Parent vertex and connecting edge in the BFS tree rooted at 0.
    parent: Vec<Option<(usize, usize)>>,
}

/// Validate a raw vertex/edge list as a tree.
pub fn validate_tree(raw: &RawGraph) -> Result<Tree, TreeError> {
    Tree::from_raw(raw)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

impl Tree {
    pub fn from_raw(raw: &RawGraph) -> Result<Tree, TreeError> {
        if raw.vertices.is_empty() {
            return Err(TreeError::Empty);
        }
        let mut index = HashMap::with_capacity(raw.vertices.len());
        for (i, v) in raw.vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(TreeError::DuplicateVertex(v.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(raw.edges.len());
        for (a, b) in &raw.edges {
            let ia = *index.get(a).ok_or_else(|| TreeError::UnknownVertex(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| TreeError::UnknownVertex(b.clone()))?;
            pairs.push((ia, ib));
        }
        Tree::build(raw.vertices.clone(), index, pairs)
    }

    /// Build from dense indices `0..n`, labelling vertex `i` as `"v{i}"`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree, TreeError> {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        Tree::from_labelled_edges(labels, edges)
    }

    /// Build from explicit labels and dense-index edges.
    pub fn from_labelled_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Tree, TreeError> {
        if labels.is_empty() {
            return Err(TreeError::Empty);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, v) in labels.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(TreeError::DuplicateVertex(v.clone()));
            }
        }
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= labels.len() {
                    return Err(TreeError::UnknownVertex(format!("#{x}")));
                }
            }
        }
        Tree::build(labels, index, edges.to_vec())
    }

    fn build(labels: Vec<String>, index: HashMap<String, usize>, pairs: Vec<(usize, usize)>) -> Result<Tree, TreeError> {
        let n = labels.len();
        let mut seen = std::collections::HashSet::with_capacity(pairs.len());
        let mut uf = UnionFind((0..n).collect());
        let mut edges = Vec::with_capacity(pairs.len());
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in pairs {
            if a == b {
                return Err(TreeError::SelfLoop(labels[a].clone()));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(TreeError::DuplicateEdge(labels[key.0].clone(), labels[key.1].clone()));
            }
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                return Err(TreeError::HasCycle(labels[a].clone(), labels[b].clone()));
            }
            uf.0[ra] = rb;
            let e = edges.len();
            edges.push(key);
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
        }
        let components = (0..n).filter(|&v| uf.find(v) == v).count();
        if components != 1 {
            return Err(TreeError::NotConnected(components));
        }

        let mut order = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        let mut visited = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, e) in &adjacency[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some((v, e));
                    queue.push_back(w);
                }
            }
        }
        Ok(Tree { labels, index, edges, adjacency, order, parent })
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

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Index of the edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adjacency[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    /// Hop distances from `source` to every vertex.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Build a measure from `(vertex id, mass)` pairs. Repeated ids accumulate.
    pub fn measure<'a>(&self, masses: impl IntoIterator<Item = (&'a str, Rational)>) -> Result<Measure, TreeError> {
        let mut m = Measure::zero(self.len());
        for (id, mass) in masses {
            let v = self.index_of(id).ok_or_else(|| TreeError::UnknownVertex(id.to_string()))?;
            if mass.is_negative() {
                return Err(TreeError::NegativeMass { vertex: id.to_string(), mass: rational::to_string(&mass) });
            }
            m.add(v, mass);
        }
        Ok(m)
    }

    fn check_len(&self, got: usize) -> Result<(), TreeError> {
        if got != self.len() {
            return Err(TreeError::LengthMismatch { expected: self.len(), got });
        }
        Ok(())
    }
}

/// A finitely supported nonnegative measure on the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    len: usize,
    masses: BTreeMap<usize, Rational>,
}

impl Measure {
    pub fn zero(len: usize) -> Self {
        Measure { len, masses: BTreeMap::new() }
    }

    /// Point mass of weight one at `v`.
    pub fn point(len: usize, v: usize) -> Self {
        let mut m = Measure::zero(len);
        m.add(v, rational::int(1));
        m
    }

    /// Build from a dense vector of masses. Panics on a negative entry.
    pub fn from_dense(values: Vec<Rational>) -> Self {
        let mut m = Measure::zero(values.len());
        for (v, x) in values.into_iter().enumerate() {
            assert!(!x.is_negative(), "negative mass at vertex {v}");
            m.add(v, x);
        }
        m
    }

    /// Add `mass ≥ 0` at vertex `v`.
    pub fn add(&mut self, v: usize, mass: Rational) {
        assert!(v < self.len, "vertex {v} out of range");
        assert!(!mass.is_negative(), "negative mass");
        if mass.is_zero() {
            return;
        }
        let slot = self.masses.entry(v).or_insert_with(Rational::zero);
        *slot += mass;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn get(&self, v: usize) -> Rational {
        self.masses.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    /// Support points with their masses, in increasing vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.masses.iter().map(|(&v, m)| (v, m))
    }

    pub fn support(&self) -> Vec<usize> {
        self.masses.keys().copied().collect()
    }

    pub fn total(&self) -> Rational {
        self.masses.values().fold(Rational::zero(), |acc, m| acc + m)
    }

    /// `c · μ` for `c ≥ 0`.
    pub fn scaled(&self, c: &Rational) -> Measure {
        assert!(!c.is_negative());
        let mut m = Measure::zero(self.len);
        for (v, x) in self.iter() {
            m.add(v, x * c);
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.len];
        for (v, x) in self.iter() {
            out[v] = x.clone();
        }
        out
    }
}

/// Signed zero-sum charge on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    charges: Vec<Rational>,
}

impl Assignment {
    pub fn new(charges: Vec<Rational>) -> Result<Self, TreeError> {
        let sum = charges.iter().fold(Rational::zero(), |acc, c| acc + c);
        if !sum.is_zero() {
            return Err(TreeError::NotZeroSum(rational::to_string(&sum)));
        }
        Ok(Assignment { charges })
    }

    pub fn charges(&self) -> &[Rational] {
        &self.charges
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.charges[v]
    }

    pub fn len(&self) -> usize {
        self.charges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charges.is_empty()
    }
}

/// ρ = μ − ν. Fails unless both measures have the same total mass.
pub fn assignment_from(mu: &Measure, nu: &Measure) -> Result<Assignment, TreeError> {
    if mu.len() != nu.len() {
        return Err(TreeError::LengthMismatch { expected: mu.len(), got: nu.len() });
    }
    let (tm, tn) = (mu.total(), nu.total());
    if tm != tn {
        return Err(TreeError::MassMismatch { mu: rational::to_string(&tm), nu: rational::to_string(&tn) });
    }
    let mut charges = mu.to_dense();
    for (v, x) in nu.iter() {
        charges[v] -= x;
    }
    Ok(Assignment { charges })
}

/// Antisymmetric edge function, one value per tree edge in `(min, max)`
/// orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    values: Vec<Rational>,
}

impl Flow {
    pub fn from_values(values: Vec<Rational>) -> Self {
        Flow { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// ψ(u, v) for adjacent `u`, `v`; zero for non-adjacent pairs.
    pub fn between(&self, tree: &Tree, u: usize, v: usize) -> Rational {
        match tree.edge_between(u, v) {
            Some(e) if tree.edges[e].0 == u => self.values[e].clone(),
            Some(e) => -self.values[e].clone(),
            None => Rational::zero(),
        }
    }

    /// div ψ(v) = Σ_w ψ(v, w).
    pub fn divergence(&self, tree: &Tree) -> Vec<Rational> {
        let mut div = vec![Rational::zero(); tree.len()];
        for (e, &(a, b)) in tree.edges.iter().enumerate() {
            div[a] += &self.values[e];
            div[b] -= &self.values[e];
        }
        div
    }
}

/// The unique flow with divergence ρ, in one post-order sweep: the flow from
/// a vertex to its parent is the total charge of its subtree.
pub fn unique_flow(tree: &Tree, rho: &Assignment) -> Result<Flow, TreeError> {
    tree.check_len(rho.len())?;
    let mut subtotal: Vec<Rational> = rho.charges.clone();
    let mut values = vec![Rational::zero(); tree.edges.len()];
    for &v in tree.order.iter().rev() {
        if let Some((p, e)) = tree.parent[v] {
            let s = std::mem::take(&mut subtotal[v]);
            subtotal[p] += &s;
            values[e] = if tree.edges[e].0 == v { s } else { -s };
        }
    }
    Ok(Flow { values })
}

/// Σ_e |ψ(e)|.
pub fn flow_cost(flow: &Flow) -> Rational {
    flow.values.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
}

/// Vertex potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    values: Vec<Rational>,
}

impl Potential {
    pub fn from_values(values: Vec<Rational>) -> Self {
        Potential { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Shift every value by `c`.
    pub fn shifted(&self, c: &Rational) -> Potential {
        Potential { values: self.values.iter().map(|x| x + c).collect() }
    }
}

/// Good potential with Φ(vertex 0) = 0. Zero-flow edges keep Φ constant.
pub fn good_potential(tree: &Tree, flow: &Flow) -> Potential {
    good_potential_rooted(tree, flow, 0)
}

/// Good potential pinned to zero at `root`.
pub fn good_potential_rooted(tree: &Tree, flow: &Flow, root: usize) -> Potential {
    let one = rational::int(1);
    let mut values: Vec<Option<Rational>> = vec![None; tree.len()];
    values[root] = Some(Rational::zero());
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let phi_x = values[x].clone().expect("visited");
        for &(y, e) in &tree.adjacency[x] {
            if values[y].is_some() {
                continue;
            }
            // ψ(x, y) in the x → y orientation
            let psi = if tree.edges[e].0 == x { flow.values[e].clone() } else { -flow.values[e].clone() };
            let phi_y = if psi.is_positive() {
                &phi_x - &one
            } else if psi.is_negative() {
                &phi_x + &one
            } else {
                phi_x.clone()
            };
            values[y] = Some(phi_y);
            queue.push_back(y);
        }
    }
    Potential { values: values.into_iter().map(|v| v.expect("tree is connected")).collect() }
}

/// Whether Φ is good for ψ: Φ(x) − Φ(y) = sign ψ(x, y) on flow-carrying
/// edges and |Φ(x) − Φ(y)| ≤ 1 on the rest.
pub fn is_good_potential(tree: &Tree, flow: &Flow, phi: &Potential) -> bool {
    let one = rational::int(1);
    tree.edges.iter().enumerate().all(|(e, &(a, b))| {
        let diff = &phi.values[a] - &phi.values[b];
        let psi = &flow.values[e];
        if psi.is_positive() {
            diff == one
        } else if psi.is_negative() {
            diff == -one.clone()
        } else {
            diff.abs() <= one
        }
    })
}

/// ρᵀΦ.
pub fn potential_value(rho: &Assignment, phi: &Potential) -> Rational {
    rho.charges.iter().zip(&phi.values).fold(Rational::zero(), |acc, (r, p)| acc + r * p)
}

/// Exact W₁(μ, ν) as the cost of the unique admissible flow.
pub fn w1_tree(tree: &Tree, mu: &Measure, nu: &Measure) -> Result<Rational, TreeError> {
    tree.check_len(mu.len())?;
    let rho = assignment_from(mu, nu)?;
    Ok(flow_cost(&unique_flow(tree, &rho)?))
}

/// W₁ via the potential route: ρᵀΦ for the good potential of the unique flow.
pub fn w1_tree_by_potential(tree: &Tree, mu: &Measure, nu: &Measure) -> Result<Rational, TreeError> {
    tree.check_len(mu.len())?;
    let rho = assignment_from(mu, nu)?;
    let flow = unique_flow(tree, &rho)?;
    Ok(potential_value(&rho, &good_potential(tree, &flow)))
}
