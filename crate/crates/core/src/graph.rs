//! Simple undirected connected graphs on vertices `0..n`, the edge-list text
//! format, and the seeded family generators.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::GraphError;
use crate::rng::SplitMix64;

/// Immutable simple undirected connected graph.
///
/// Adjacency lists are sorted and edges are stored once as `(u, v)` with
/// `u < v`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates,
    /// out-of-range ids and disconnected results. Reported line numbers are
    /// the 1-based index of the offending edge plus one (the header line).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let lines: Vec<usize> = (0..edges.len()).map(|i| i + 2).collect();
        Self::build(n, edges, &lines)
    }

    fn build(n: usize, edges: &[(usize, usize)], lines: &[usize]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); n];
        for (&(u, v), &line) in edges.iter().zip(lines) {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { line, v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, v: u });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let g = Graph {
            n,
            adjacency,
            edges: seen.into_iter().collect(),
        };
        if let Some(unreachable) = g.first_unreachable() {
            return Err(GraphError::Disconnected { unreachable });
        }
        Ok(g)
    }

    fn first_unreachable(&self) -> Option<usize> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Connected with `m = n - 1`.
    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n
    }

    /// Neighbor bitmasks; only meaningful for `n <= 64`.
    pub(crate) fn neighbor_masks(&self) -> Vec<u64> {
        self.adjacency
            .iter()
            .map(|nbrs| nbrs.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect()
    }

    /// Sizes of the connected components left after deleting `removed`
    /// (vertices) and `cut` (one edge), in order of their smallest vertex.
    pub fn component_sizes_without(
        &self,
        removed: Option<usize>,
        cut: Option<(usize, usize)>,
    ) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        if let Some(r) = removed {
            seen[r] = true;
        }
        let is_cut = |a: usize, b: usize| cut.is_some_and(|(x, y)| (a, b) == (x, y) || (a, b) == (y, x));
        let mut sizes = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut size = 0;
            while let Some(u) = stack.pop() {
                size += 1;
                for &v in &self.adjacency[u] {
                    if !seen[v] && !is_cut(u, v) {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            sizes.push(size);
        }
        sizes
    }

    /// Renders the edge-list format: header `n m`, then one `u v` line per
    /// edge, newline separated, no trailing newline.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}", self.n, self.m());
        for &(u, v) in &self.edges {
            out.push_str(&format!("\n{u} {v}"));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Parses the edge-list format: header `n m`, then exactly `m` lines `u v`.
/// Everything after a `#` is a comment; blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        reason: "missing header line \"n m\"".into(),
    })?;
    let (n, m) = parse_pair(header_line, header, "header \"n m\"")?;

    let mut edges = Vec::with_capacity(m);
    let mut line_nos = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(GraphError::EdgeCount {
                line,
                declared: m,
                found: m + 1,
            });
        }
        edges.push(parse_pair(line, content, "edge \"u v\"")?);
        line_nos.push(line);
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCount {
            line: last_line,
            declared: m,
            found: edges.len(),
        });
    }
    Graph::build(n, &edges, &line_nos)
}

fn parse_pair(line: usize, content: &str, what: &str) -> Result<(usize, usize), GraphError> {
    let malformed = || GraphError::Malformed {
        line,
        reason: format!("expected {what}, found {content:?}"),
    };
    let mut fields = content.split_whitespace();
    let a = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
    let b = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
    if fields.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

impl FromStr for Graph {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_edge_list(s)
    }
}

/// Generated graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `[n]`: path 0-1-…-(n-1).
    Path,
    /// `[n]`, n ≥ 3.
    Cycle,
    /// `[n]`: center 0 joined to 1..n-1.
    Star,
    /// `[n]`.
    Complete,
    /// `[a, b]`: parts `0..a` and `a..a+b`.
    CompleteBipartite,
    /// `[d]`: vertices are d-bit words, adjacent at Hamming distance 1.
    Hypercube,
    /// `[rows, cols]`: vertex `r * cols + c`.
    Grid,
    /// `[n]` plus seed: uniform labelled tree decoded from a random Prüfer word.
    RandomTree,
    /// `[n]` or `[n, percent]` plus seed: G(n, p) with `p = percent / 100`
    /// (default 50), resampled until connected.
    GnpConnected,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Path,
        Family::Cycle,
        Family::Star,
        Family::Complete,
        Family::CompleteBipartite,
        Family::Hypercube,
        Family::Grid,
        Family::RandomTree,
        Family::GnpConnected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete-bipartite",
            Family::Hypercube => "hypercube",
            Family::Grid => "grid",
            Family::RandomTree => "random-tree",
            Family::GnpConnected => "gnp-connected",
        }
    }

    pub fn is_seeded(self) -> bool {
        matches!(self, Family::RandomTree | Family::GnpConnected)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| GraphError::InvalidFamily {
                family: s.to_string(),
                reason: "unknown family".into(),
            })
    }
}

const MAX_HYPERCUBE_DIM: usize = 20;
const MAX_GNP_ATTEMPTS: usize = 100_000;

/// Deterministic generator: same family, params and seed give the same graph.
/// The seed is ignored by unseeded families and defaults to 0 for seeded ones.
pub fn generate_family(family: Family, params: &[usize], seed: Option<u64>) -> Result<Graph, GraphError> {
    let bad = |reason: String| GraphError::InvalidFamily {
        family: family.name().to_string(),
        reason,
    };
    let expect = |count: std::ops::RangeInclusive<usize>| {
        if count.contains(&params.len()) {
            Ok(())
        } else {
            Err(bad(format!(
                "expected {} parameter(s), got {}",
                if count.start() == count.end() {
                    count.start().to_string()
                } else {
                    format!("{}..={}", count.start(), count.end())
                },
                params.len()
            )))
        }
    };
    let at_least = |name: &str, value: usize, min: usize| {
        if value >= min {
            Ok(())
        } else {
            Err(bad(format!("{name} must be >= {min}, got {value}")))
        }
    };

    let (n, edges): (usize, Vec<(usize, usize)>) = match family {
        Family::Path => {
            expect(1..=1)?;
            let n = params[0];
            at_least("n", n, 1)?;
            (n, (1..n).map(|v| (v - 1, v)).collect())
        }
        Family::Cycle => {
            expect(1..=1)?;
            let n = params[0];
            at_least("n", n, 3)?;
            let mut e: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            e.push((0, n - 1));
            (n, e)
        }
        Family::Star => {
            expect(1..=1)?;
            let n = params[0];
            at_least("n", n, 1)?;
            (n, (1..n).map(|v| (0, v)).collect())
        }
        Family::Complete => {
            expect(1..=1)?;
            let n = params[0];
            at_least("n", n, 1)?;
            (n, all_pairs(n).collect())
        }
        Family::CompleteBipartite => {
            expect(2..=2)?;
            let (a, b) = (params[0], params[1]);
            at_least("a", a, 1)?;
            at_least("b", b, 1)?;
            let e = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
            (a + b, e)
        }
        Family::Hypercube => {
            expect(1..=1)?;
            let d = params[0];
            at_least("d", d, 1)?;
            if d > MAX_HYPERCUBE_DIM {
                return Err(bad(format!("d must be <= {MAX_HYPERCUBE_DIM}, got {d}")));
            }
            let n = 1usize << d;
            let e = (0..n)
                .flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))))
                .filter(|&(u, v)| u < v)
                .collect();
            (n, e)
        }
        Family::Grid => {
            expect(2..=2)?;
            let (rows, cols) = (params[0], params[1]);
            at_least("rows", rows, 1)?;
            at_least("cols", cols, 1)?;
            let mut e = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        e.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        e.push((v, v + cols));
                    }
                }
            }
            (rows * cols, e)
        }
        Family::RandomTree => {
            expect(1..=1)?;
            let n = params[0];
            at_least("n", n, 1)?;
            let mut rng = SplitMix64::new(seed.unwrap_or(0));
            (n, random_tree_edges(n, &mut rng))
        }
        Family::GnpConnected => {
            expect(1..=2)?;
            let n = params[0];
            at_least("n", n, 1)?;
            let percent = params.get(1).copied().unwrap_or(50);
            if !(1..=100).contains(&percent) {
                return Err(bad(format!("edge percent must be in 1..=100, got {percent}")));
            }
            let mut rng = SplitMix64::new(seed.unwrap_or(0));
            for _ in 0..MAX_GNP_ATTEMPTS {
                let e: Vec<_> = all_pairs(n).filter(|_| rng.below(100) < percent as u64).collect();
                if let Ok(g) = Graph::from_edges(n, &e) {
                    return Ok(g);
                }
            }
            return Err(bad(format!(
                "no connected sample within {MAX_GNP_ATTEMPTS} attempts"
            )));
        }
    };
    Graph::from_edges(n, &edges).map_err(|e| bad(e.to_string()))
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Prüfer decoding of `n - 2` uniform draws from `0..n`.
fn random_tree_edges(n: usize, rng: &mut SplitMix64) -> Vec<(usize, usize)> {
    if n <= 2 {
        return (1..n).map(|v| (0, v)).collect();
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.below(n as u64) as usize).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves.pop_first().expect("Prüfer decoding always has a leaf");
        edges.push((leaf.min(c), leaf.max(c)));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges
}
