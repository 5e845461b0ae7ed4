//! JSON instance documents:
//!
//! ```json
//! {"vertices": ["a", "b"], "edges": [["a", "b"]], "mu": {"a": "1/2"}, "nu": {"b": "1/2"}}
//! ```
//!
//! Vertex ids may be strings or numbers; masses may be `"p/q"` strings,
//! decimal strings or JSON numbers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::InstanceError;
use crate::rational::{self, Rational};
use crate::tree::{Measure, RawGraph, Tree};

#[derive(Debug, Deserialize)]
struct Document {
    vertices: Vec<Value>,
    edges: Vec<(Value, Value)>,
    #[serde(default)]
    mu: BTreeMap<String, Value>,
    #[serde(default)]
    nu: BTreeMap<String, Value>,
}

#[derive(Debug, Serialize)]
struct OutDocument<'a> {
    vertices: &'a [String],
    edges: Vec<[&'a str; 2]>,
    mu: BTreeMap<&'a str, String>,
    nu: BTreeMap<&'a str, String>,
}

/// A graph plus two measures, keyed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: RawGraph,
    pub mu: BTreeMap<String, Rational>,
    pub nu: BTreeMap<String, Rational>,
}

fn id_of(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn masses(raw: BTreeMap<String, Value>) -> Result<BTreeMap<String, Rational>, InstanceError> {
    raw.into_iter()
        .map(|(vertex, v)| {
            let text = id_of(&v);
            match rational::parse_rational(&text) {
                Ok(m) => Ok((vertex, m)),
                Err(source) => Err(InstanceError::BadMass { vertex, source }),
            }
        })
        .collect()
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))?;
        let graph = RawGraph {
            vertices: doc.vertices.iter().map(id_of).collect(),
            edges: doc.edges.iter().map(|(a, b)| (id_of(a), id_of(b))).collect(),
        };
        Ok(Instance { graph, mu: masses(doc.mu)?, nu: masses(doc.nu)? })
    }

    pub fn to_json(&self) -> String {
        let doc = OutDocument {
            vertices: &self.graph.vertices,
            edges: self.graph.edges.iter().map(|(a, b)| [a.as_str(), b.as_str()]).collect(),
            mu: self.mu.iter().map(|(k, v)| (k.as_str(), rational::to_string(v))).collect(),
            nu: self.nu.iter().map(|(k, v)| (k.as_str(), rational::to_string(v))).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    /// Validate the graph as a tree and resolve both measures on it.
    pub fn resolve(&self) -> Result<(Tree, Measure, Measure), InstanceError> {
        let tree = Tree::from_raw(&self.graph)?;
        let (mu, nu) = self.measures_on(&tree)?;
        Ok((tree, mu, nu))
    }

    /// Resolve both measures against an already built tree.
    pub fn measures_on(&self, tree: &Tree) -> Result<(Measure, Measure), InstanceError> {
        let mu = tree.measure(self.mu.iter().map(|(k, v)| (k.as_str(), v.clone())))?;
        let nu = tree.measure(self.nu.iter().map(|(k, v)| (k.as_str(), v.clone())))?;
        Ok((mu, nu))
    }

    /// Build an instance from a tree and dense measures.
    pub fn from_parts(tree: &Tree, mu: &Measure, nu: &Measure) -> Self {
        let graph = RawGraph {
            vertices: tree.labels().to_vec(),
            edges: tree.edges().iter().map(|&(a, b)| (tree.label(a).to_string(), tree.label(b).to_string())).collect(),
        };
        let keyed = |m: &Measure| m.iter().map(|(v, x)| (tree.label(v).to_string(), x.clone())).collect();
        Instance { graph, mu: keyed(mu), nu: keyed(nu) }
    }
}
