use thiserror::Error;

/// Problems with graph input or construction. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: vertex id {v} out of range for n = {n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: header declares {declared} edges but {found} were given")]
    EdgeCount {
        line: usize,
        declared: usize,
        found: usize,
    },
    #[error("graph is disconnected: vertex {unreachable} is not reachable from vertex 0")]
    Disconnected { unreachable: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("invalid parameters for family {family}: {reason}")]
    InvalidFamily { family: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinerError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("k = {k} is out of range for n = {n} (need {min} <= k <= n)")]
    KOutOfRange { k: usize, n: usize, min: usize },
    #[error("terminal set is invalid: {0}")]
    InvalidTerminals(String),
    #[error("capacity exceeded for {what}: {required} > limit {limit}")]
    Capacity {
        what: &'static str,
        required: u128,
        limit: u128,
    },
    #[error("graph is not a tree ({n} vertices, {m} edges)")]
    NotATree { n: usize, m: usize },
    #[error("graph is not modular: triple ({}, {}, {}) has no common median", .triple.0, .triple.1, .triple.2)]
    NotModular { triple: (usize, usize, usize) },
    #[error("identity {name} violated: lhs {lhs} != rhs {rhs}")]
    IdentityViolation {
        name: &'static str,
        lhs: String,
        rhs: String,
    },
}

pub type Result<T, E = SteinerError> = std::result::Result<T, E>;
