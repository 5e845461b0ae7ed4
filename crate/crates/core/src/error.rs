use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational number: {0:?}")]
pub struct ParseRationalError(pub String);

/// Errors from tree validation and exact W₁ on trees.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("edge refers to unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {{{0:?}, {1:?}}}")]
    DuplicateEdge(String, String),
    #[error("edge {{{0:?}, {1:?}}} closes a cycle")]
    HasCycle(String, String),
    #[error("graph is not connected ({0} components)")]
    NotConnected(usize),
    #[error("total masses differ: |mu| = {mu}, |nu| = {nu}")]
    MassMismatch { mu: String, nu: String },
    #[error("negative mass {mass} at vertex {vertex:?}")]
    NegativeMass { vertex: String, mass: String },
    #[error("assignment does not sum to zero (sum = {0})")]
    NotZeroSum(String),
    #[error("vector length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Errors from the linear-programming oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error(transparent)]
    Graph(#[from] TreeError),
    #[error("graph is not connected")]
    NotConnected,
    #[error("total masses differ: |mu| = {mu}, |nu| = {nu}")]
    MassMismatch { mu: String, nu: String },
    #[error("transport problem too large: {sources} x {targets} support points (limit {limit} each)")]
    TooLarge { sources: usize, targets: usize, limit: usize },
    #[error("potential violates the 1-Lipschitz condition on edge ({0}, {1})")]
    InfeasiblePotential(usize, usize),
}

/// Errors from the radial (regular-tree) module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RadialError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("q = 1 is the bi-infinite path: every radial W1 equals dist(X, Y)")]
    PathGraph,
    #[error("truncation radius {radius} is smaller than the profile support radius {support}")]
    TruncationTooSmall { radius: u32, support: usize },
    #[error("invalid profile spec {0:?}")]
    BadProfileSpec(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Errors from formal power series arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has zero constant term")]
    NonUnitDivisor,
    #[error("constant term is not the square of a rational")]
    NonSquareConstantTerm,
}

/// Errors from generating-function tables and formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenfunError {
    #[error("laziness alpha = {0} is outside [0, 1)")]
    InvalidAlpha(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("requested n = {n} exceeds truncation order {order}")]
    OrderExceeded { n: usize, order: usize },
    #[error("bundle carries {have} gamma series, need {need}")]
    MissingGamma { have: usize, need: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl From<RadialError> for GenfunError {
    fn from(e: RadialError) -> Self {
        GenfunError::InvalidParams(e.to_string())
    }
}

/// Errors from reading a JSON instance document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("malformed instance JSON: {0}")]
    Json(String),
    #[error("bad mass for vertex {vertex:?}: {source}")]
    BadMass { vertex: String, source: ParseRationalError },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Errors from the asymptotic-coefficient routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Genfun(#[from] GenfunError),
}

impl From<RadialError> for AsymptoticsError {
    fn from(e: RadialError) -> Self {
        AsymptoticsError::InvalidParams(e.to_string())
    }
}
