//! JSON report emitted by `compute` and `verify`. Exact values are always
//! strings: integers in decimal, rationals as `p/q` in lowest terms.

use serde::Serialize;
use steiner_core::ExactRatio;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "metric", rename_all = "kebab-case")]
pub enum Metric {
    Wiener {
        value: String,
    },
    Betweenness {
        per_vertex: Vec<String>,
        sum: String,
    },
    SteinerWiener {
        k: usize,
        value: String,
        average: String,
    },
    SteinerBetweenness {
        k: usize,
        per_vertex: Vec<String>,
        sum: String,
        average: String,
        identity_residual: String,
    },
    TotalSteinerWiener {
        value: String,
        average: String,
    },
    TotalSteinerBetweenness {
        per_vertex: Vec<String>,
        sum: String,
        average: String,
        identity_residual: String,
    },
    Modularity {
        is_modular: bool,
        is_median: bool,
        is_bipartite: bool,
        violating_triple: Option<[usize; 3]>,
        ambiguous_triple: Option<[usize; 3]>,
        /// `(n - 2) W / 2`, present for modular graphs (or always with `--force`).
        sw3_via_wiener: Option<String>,
        /// `SW_3` by the Steiner DP, present with `--force`.
        #[serde(skip_serializing_if = "Option::is_none")]
        sw3_direct: Option<String>,
        average_b3: Option<String>,
    },
    TreeDecompositions {
        k: usize,
        edge: String,
        vertex: String,
        vertex_terms: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub pass: bool,
}

impl IdentityCheck {
    /// Scalar identity `lhs = rhs`; residual is `lhs - rhs`.
    pub fn scalar(name: &str, statement: &str, k: Option<usize>, lhs: ExactRatio, rhs: ExactRatio) -> Self {
        let residual = &lhs - &rhs;
        IdentityCheck {
            name: name.into(),
            statement: statement.into(),
            k,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: residual.is_zero(),
            residual: residual.to_string(),
        }
    }

    /// Per-vertex identity; residual is the sum of absolute differences.
    pub fn vector(name: &str, statement: &str, k: Option<usize>, lhs: &[ExactRatio], rhs: &[ExactRatio]) -> Self {
        let residual: ExactRatio = lhs
            .iter()
            .zip(rhs)
            .map(|(a, b)| {
                let d = a - b;
                if d.is_negative() {
                    -d
                } else {
                    d
                }
            })
            .sum();
        let pass = residual.is_zero() && lhs.len() == rhs.len();
        IdentityCheck {
            name: name.into(),
            statement: statement.into(),
            k,
            lhs: join(lhs),
            rhs: join(rhs),
            residual: residual.to_string(),
            pass,
        }
    }
}

fn join(values: &[ExactRatio]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Both sides of an identity whose hypothesis does not hold for this graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub check: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub name: String,
    pub ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub graph: GraphSummary,
    pub metrics: Vec<Metric>,
    pub identities: Vec<IdentityCheck>,
    pub diagnostics: Vec<Diagnostic>,
    pub skipped: Vec<Skipped>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_passed: Option<bool>,
    /// Wall-clock timings; only present when requested, since they make
    /// reports non-reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<Timing>>,
}

impl Report {
    pub fn new(command: &str, graph: GraphSummary) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            graph,
            metrics: Vec::new(),
            identities: Vec::new(),
            diagnostics: Vec::new(),
            skipped: Vec::new(),
            all_passed: None,
            timings_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.identities.iter().filter(|c| !c.pass)
    }
}

pub(crate) fn strings(values: &[ExactRatio]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}
