//! Command implementations shared by the binary and the test suites.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use steiner_core::counting::{average_k_check, average_total_check, SteinerCounter};
use steiner_core::modular::{compare_sw3_with_wiener, is_bipartite};
use steiner_core::steiner::SubsetSteinerTable;
use steiner_core::tree::vertex_terms;
use steiner_core::{
    average_b3_modular, binomial, classify_modularity, generate_family, geodesic_betweenness,
    hypercube_b3, parse_edge_list, steiner_wiener_k, sw3_via_wiener, sw_k_edge_decomposition,
    sw_k_vertex_decomposition, total_steiner_wiener, wiener_index, BigCount, ExactRatio, Family,
    Graph, GraphError, Limits, SteinerError,
};

use crate::report::{strings, Diagnostic, GraphSummary, IdentityCheck, Metric, Report, Skipped, Timing};

/// Environment variable overriding `Limits::max_subsets`.
pub const MAX_SUBSETS_ENV: &str = "STEINER_MAX_SUBSETS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad input or arguments (exit 2).
    Input(String),
    /// A capacity guard refused the work (exit 3).
    Capacity(String),
    /// An internal identity check failed (exit 1).
    Identity(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Identity(_) => 1,
            CliError::Input(_) => 2,
            CliError::Capacity(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Capacity(m) | CliError::Identity(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<SteinerError> for CliError {
    fn from(e: SteinerError) -> Self {
        match e {
            SteinerError::Capacity { .. } => CliError::Capacity(e.to_string()),
            SteinerError::IdentityViolation { .. } => CliError::Identity(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Limits with the environment override applied.
pub fn limits_from_env() -> Result<Limits, CliError> {
    let mut limits = Limits::default();
    if let Ok(raw) = std::env::var(MAX_SUBSETS_ENV) {
        let max = raw
            .trim()
            .parse::<u128>()
            .map_err(|_| CliError::Input(format!("{MAX_SUBSETS_ENV} must be a nonnegative integer, got {raw:?}")))?;
        limits = limits.with_max_subsets(max);
    }
    Ok(limits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    File(String),
    Family {
        family: Family,
        params: Vec<usize>,
        seed: Option<u64>,
    },
}

impl GraphSource {
    pub fn load(&self) -> Result<(Graph, GraphSummary), CliError> {
        match self {
            GraphSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?;
                let g = parse_edge_list(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                let summary = GraphSummary {
                    n: g.n(),
                    m: g.m(),
                    family: None,
                    params: None,
                    seed: None,
                    file: Some(path.clone()),
                };
                Ok((g, summary))
            }
            GraphSource::Family { family, params, seed } => {
                let g = generate_family(*family, params, *seed)?;
                let summary = GraphSummary {
                    n: g.n(),
                    m: g.m(),
                    family: Some(family.name().into()),
                    params: Some(params.clone()),
                    seed: family.is_seeded().then(|| seed.unwrap_or(0)),
                    file: None,
                };
                Ok((g, summary))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricName {
    Wiener,
    Betweenness,
    SteinerWiener,
    SteinerBetweenness,
    TotalSteinerWiener,
    TotalSteinerBetweenness,
    Modularity,
    TreeDecompositions,
}

impl MetricName {
    pub const ALL: [MetricName; 8] = [
        MetricName::Wiener,
        MetricName::Betweenness,
        MetricName::SteinerWiener,
        MetricName::SteinerBetweenness,
        MetricName::TotalSteinerWiener,
        MetricName::TotalSteinerBetweenness,
        MetricName::Modularity,
        MetricName::TreeDecompositions,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricName::Wiener => "wiener",
            MetricName::Betweenness => "betweenness",
            MetricName::SteinerWiener => "steiner-wiener",
            MetricName::SteinerBetweenness => "steiner-betweenness",
            MetricName::TotalSteinerWiener => "total-steiner-wiener",
            MetricName::TotalSteinerBetweenness => "total-steiner-betweenness",
            MetricName::Modularity => "modularity",
            MetricName::TreeDecompositions => "tree-decompositions",
        }
    }

    fn needs_k(self) -> bool {
        matches!(
            self,
            MetricName::SteinerWiener | MetricName::SteinerBetweenness | MetricName::TreeDecompositions
        )
    }
}

impl FromStr for MetricName {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MetricName::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| CliError::Input(format!("unknown metric {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputeOptions {
    pub metrics: Vec<MetricName>,
    pub k: Option<usize>,
    /// Compute both sides of the SW_3 shortcut even on non-modular graphs.
    pub force: bool,
    pub timings: bool,
}

fn timed<T>(timings: &mut Vec<Timing>, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.push(Timing {
        name: name.into(),
        ms: start.elapsed().as_millis(),
    });
    out
}

pub fn compute(source: &GraphSource, opts: &ComputeOptions, limits: &Limits) -> Result<Report, CliError> {
    let (g, summary) = source.load()?;
    let mut report = Report::new("compute", summary);
    let mut timings = Vec::new();
    let counter = SteinerCounter::new(&g, *limits)?;
    for &metric in &opts.metrics {
        let k = match (metric.needs_k(), opts.k) {
            (true, None) => return Err(CliError::Input(format!("metric {} requires -k", metric.name()))),
            (_, k) => k.unwrap_or(0),
        };
        let entry = timed(&mut timings, metric.name(), || compute_metric(&g, &counter, metric, k, opts.force, limits))?;
        report.metrics.push(entry);
    }
    if opts.timings {
        report.timings_ms = Some(timings);
    }
    Ok(report)
}

fn compute_metric(
    g: &Graph,
    counter: &SteinerCounter,
    metric: MetricName,
    k: usize,
    force: bool,
    limits: &Limits,
) -> Result<Metric, CliError> {
    Ok(match metric {
        MetricName::Wiener => Metric::Wiener {
            value: wiener_index(g).to_string(),
        },
        MetricName::Betweenness => {
            let b = geodesic_betweenness(g);
            Metric::Betweenness {
                sum: b.iter().sum::<ExactRatio>().to_string(),
                per_vertex: strings(&b),
            }
        }
        MetricName::SteinerWiener => {
            let s = steiner_wiener_k(g, k, limits)?;
            Metric::SteinerWiener {
                k,
                value: s.value.to_string(),
                average: s.average.to_string(),
            }
        }
        MetricName::SteinerBetweenness => {
            let r = counter.k_steiner_betweenness(k)?;
            Metric::SteinerBetweenness {
                k,
                per_vertex: strings(&r.per_vertex),
                sum: r.sum.to_string(),
                average: r.average.to_string(),
                identity_residual: r.identity_residual.to_string(),
            }
        }
        MetricName::TotalSteinerWiener => {
            let s = total_steiner_wiener(g, limits)?;
            Metric::TotalSteinerWiener {
                value: s.value.to_string(),
                average: s.average.to_string(),
            }
        }
        MetricName::TotalSteinerBetweenness => {
            let r = counter.total_steiner_betweenness()?;
            Metric::TotalSteinerBetweenness {
                per_vertex: strings(&r.per_vertex),
                sum: r.sum.to_string(),
                average: r.average.to_string(),
                identity_residual: r.identity_residual.to_string(),
            }
        }
        MetricName::Modularity => modularity_metric(g, force, limits)?,
        MetricName::TreeDecompositions => Metric::TreeDecompositions {
            k,
            edge: sw_k_edge_decomposition(g, k)?.to_string(),
            vertex: sw_k_vertex_decomposition(g, k)?.to_string(),
            vertex_terms: vertex_terms(g, k)?.iter().map(ToString::to_string).collect(),
        },
    })
}

fn triple(t: Option<(usize, usize, usize)>) -> Option<[usize; 3]> {
    t.map(|(a, b, c)| [a, b, c])
}

fn modularity_metric(g: &Graph, force: bool, limits: &Limits) -> Result<Metric, CliError> {
    let w = classify_modularity(g);
    let mut metric = Metric::Modularity {
        is_modular: w.is_modular,
        is_median: w.is_median,
        is_bipartite: is_bipartite(g),
        violating_triple: triple(w.violating_triple),
        ambiguous_triple: triple(w.ambiguous_triple),
        sw3_via_wiener: None,
        sw3_direct: None,
        average_b3: None,
    };
    if let Metric::Modularity {
        sw3_via_wiener: via,
        sw3_direct,
        average_b3,
        ..
    } = &mut metric
    {
        if g.n() >= 3 && w.is_modular {
            *via = Some(sw3_via_wiener(g)?.to_string());
            *average_b3 = Some(average_b3_modular(g)?.to_string());
        }
        if g.n() >= 3 && force {
            let cmp = compare_sw3_with_wiener(g, limits)?;
            *via = Some(cmp.via_wiener.to_string());
            *sw3_direct = Some(cmp.sw3.to_string());
        }
    }
    Ok(metric)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Tree,
    General,
    Modular,
    Total,
    All,
}

impl FromStr for Suite {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "tree" => Suite::Tree,
            "general" => Suite::General,
            "modular" => Suite::Modular,
            "total" => Suite::Total,
            "all" => Suite::All,
            _ => return Err(CliError::Input(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub suite: Suite,
    /// Inclusive k range, clipped to `2..=n`. Defaults to `2..=min(n, 5)`.
    pub k_range: Option<(usize, usize)>,
}

fn ratio(c: &BigCount) -> ExactRatio {
    ExactRatio::from_count(c)
}

/// Runs the identity checks of a suite. In `all` mode, suites that do not
/// apply (a non-tree for `tree`) or that exceed a capacity guard are listed
/// under `skipped`; when a suite is requested explicitly those conditions
/// are errors.
pub fn verify(source: &GraphSource, opts: &VerifyOptions, limits: &Limits) -> Result<Report, CliError> {
    let (g, summary) = source.load()?;
    let mut report = Report::new("verify", summary.clone());
    let n = g.n();
    let (lo, hi) = opts.k_range.unwrap_or((2, 5));
    if lo > hi {
        return Err(CliError::Input(format!("empty k range {lo}..={hi}")));
    }
    let ks: Vec<usize> = (lo.max(2)..=hi.min(n)).collect();
    let counter = SteinerCounter::new(&g, *limits)?;
    let ctx = VerifyContext {
        g: &g,
        counter: &counter,
        limits,
        ks: &ks,
        summary: &summary,
    };

    let suites: &[Suite] = match opts.suite {
        Suite::All => &[Suite::Tree, Suite::General, Suite::Modular, Suite::Total],
        ref s => std::slice::from_ref(s),
    };
    let lenient = opts.suite == Suite::All;
    for &suite in suites {
        let name = match suite {
            Suite::Tree => "tree",
            Suite::General => "general",
            Suite::Modular => "modular",
            Suite::Total => "total",
            Suite::All => unreachable!(),
        };
        let mut local = Report::new("verify", summary.clone());
        let outcome = match suite {
            Suite::Tree => ctx.tree_suite(&mut local),
            Suite::General => ctx.general_suite(&mut local),
            Suite::Modular => ctx.modular_suite(&mut local),
            Suite::Total => ctx.total_suite(&mut local),
            Suite::All => unreachable!(),
        };
        match outcome {
            Ok(()) => {
                report.metrics.extend(local.metrics);
                report.identities.extend(local.identities);
                report.diagnostics.extend(local.diagnostics);
                report.skipped.extend(local.skipped);
            }
            Err(e @ (CliError::Capacity(_) | CliError::Input(_))) if lenient => report.skipped.push(Skipped {
                check: format!("{name} suite"),
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    let passed = report.identities.iter().all(|c| c.pass);
    report.all_passed = Some(passed);
    Ok(report)
}

struct VerifyContext<'a> {
    g: &'a Graph,
    counter: &'a SteinerCounter<'a>,
    limits: &'a Limits,
    ks: &'a [usize],
    summary: &'a GraphSummary,
}

impl VerifyContext<'_> {
    fn tree_suite(&self, r: &mut Report) -> Result<(), CliError> {
        let g = self.g;
        if !g.is_tree() {
            return Err(SteinerError::NotATree { n: g.n(), m: g.m() }.into());
        }
        for &k in self.ks {
            let sw = ratio(&steiner_wiener_k(g, k, self.limits)?.value);
            r.identities.push(IdentityCheck::scalar(
                "tree-edge-decomposition",
                "sum over edges e of N_k(T - e) = SW_k(T)",
                Some(k),
                ratio(&sw_k_edge_decomposition(g, k)?),
                sw.clone(),
            ));
            r.identities.push(IdentityCheck::scalar(
                "tree-vertex-decomposition",
                "sum over vertices v of N_k(T - v) + (k-1) C(n,k) = SW_k(T)",
                Some(k),
                ratio(&sw_k_vertex_decomposition(g, k)?),
                sw,
            ));
            let terms: Vec<ExactRatio> = vertex_terms(g, k)?.iter().map(ratio).collect();
            match self.counter.k_steiner_betweenness(k) {
                Ok(b) => r.identities.push(IdentityCheck::vector(
                    "tree-vertex-terms-are-betweenness",
                    "N_k(T - v) = B_k(v) for every vertex v",
                    Some(k),
                    &terms,
                    &b.per_vertex,
                )),
                Err(e @ SteinerError::Capacity { .. }) => r.skipped.push(Skipped {
                    check: format!("tree-vertex-terms-are-betweenness k={k}"),
                    reason: e.to_string(),
                }),
                Err(e) => return Err(e.into()),
            }
        }
        if self.ks.contains(&2) {
            let by_edges: usize = g
                .edges()
                .iter()
                .map(|&e| g.component_sizes_without(None, Some(e)).iter().product::<usize>())
                .sum();
            r.identities.push(IdentityCheck::scalar(
                "tree-wiener-edge-formula",
                "sum over edges e of n(T_1) n(T_2) = W(T)",
                None,
                ExactRatio::from_int(by_edges),
                ratio(&wiener_index(g)),
            ));
        }
        Ok(())
    }

    fn general_suite(&self, r: &mut Report) -> Result<(), CliError> {
        let g = self.g;
        let n = g.n();
        for &k in self.ks {
            let b = self.counter.k_steiner_betweenness(k)?;
            let sw = steiner_wiener_k(g, k, self.limits)?.value;
            let offset = ratio(&(BigCount::from(k - 1) * binomial(n as u64, k as u64)));
            r.identities.push(IdentityCheck::scalar(
                "steiner-betweenness-decomposition",
                "sum over v of B_k(v) + (k-1) C(n,k) = SW_k(G)",
                Some(k),
                &b.sum + &offset,
                ratio(&sw),
            ));
            let avg = average_k_check(&b, n, k);
            r.identities.push(IdentityCheck::scalar(
                "average-steiner-betweenness",
                "mean of B_k = C(n,k)/n (average SW_k - k + 1)",
                Some(k),
                avg.direct,
                avg.formula,
            ));
            if k == 2 {
                let wiener = ratio(&wiener_index(g));
                let geodesic = geodesic_betweenness(g);
                r.identities.push(IdentityCheck::scalar(
                    "sw2-is-wiener",
                    "SW_2(G) = W(G)",
                    Some(2),
                    ratio(&sw),
                    wiener.clone(),
                ));
                r.identities.push(IdentityCheck::vector(
                    "b2-is-geodesic-betweenness",
                    "B_2(v) = B(v) for every vertex v",
                    Some(2),
                    &b.per_vertex,
                    &geodesic,
                ));
                r.identities.push(IdentityCheck::scalar(
                    "betweenness-sum-is-wiener",
                    "sum over v of B(v) = W(G) - C(n,2)",
                    None,
                    geodesic.iter().sum(),
                    &wiener - &ratio(&binomial(n as u64, 2)),
                ));
            }
        }
        Ok(())
    }

    fn modular_suite(&self, r: &mut Report) -> Result<(), CliError> {
        let g = self.g;
        let n = g.n();
        let witness = classify_modularity(g);
        r.metrics.push(modularity_metric(g, false, self.limits)?);
        if n < 3 {
            r.skipped.push(Skipped {
                check: "sw3-wiener-shortcut".into(),
                reason: format!("needs at least 3 vertices, graph has {n}"),
            });
            return Ok(());
        }
        let cmp = compare_sw3_with_wiener(g, self.limits)?;
        if !witness.is_modular {
            let (x, y, z) = witness.violating_triple.expect("non-modular graphs carry a witness");
            r.diagnostics.push(Diagnostic {
                name: "sw3-wiener-shortcut".into(),
                lhs: cmp.sw3.to_string(),
                rhs: cmp.via_wiener.to_string(),
                difference: (&ratio(&cmp.sw3) - &cmp.via_wiener).to_string(),
                note: format!("graph is not modular: triple ({x}, {y}, {z}) has no median"),
            });
            return Ok(());
        }
        r.identities.push(IdentityCheck::scalar(
            "sw3-wiener-shortcut",
            "SW_3(G) = (n-2)/2 W(G) on modular graphs",
            Some(3),
            ratio(&cmp.sw3),
            cmp.via_wiener,
        ));
        match self.counter.k_steiner_betweenness(3) {
            Ok(b3) => {
                r.identities.push(IdentityCheck::scalar(
                    "average-b3-modular",
                    "mean of B_3 = (1/n)((n-2)/2 W(G) - 2 C(n,3)) on modular graphs",
                    Some(3),
                    b3.average.clone(),
                    average_b3_modular(g)?,
                ));
                if let (Some("hypercube"), Some([d])) = (self.summary.family.as_deref(), self.summary.params.as_deref()) {
                    let closed = hypercube_b3(*d as u32)?;
                    r.identities.push(IdentityCheck::vector(
                        "hypercube-b3-closed-form",
                        "B_3(v) = (2^(d-1) - 1)(d 2^(d-2) - (2^(d+1) - 2)/3) for every vertex of Q_d",
                        Some(3),
                        &b3.per_vertex,
                        &vec![closed; n],
                    ));
                }
            }
            Err(e @ SteinerError::Capacity { .. }) => r.skipped.push(Skipped {
                check: "average-b3-modular".into(),
                reason: e.to_string(),
            }),
            Err(e) => return Err(e.into()),
        }
        Ok(())
    }

    fn total_suite(&self, r: &mut Report) -> Result<(), CliError> {
        let g = self.g;
        let n = g.n();
        let bs = self.counter.total_steiner_betweenness()?;
        let offset = steiner_core::counting::total_offset(n);
        r.identities.push(IdentityCheck::scalar(
            "total-steiner-betweenness-decomposition",
            "sum over v of B_S(v) + 2^(n-1)(n-2) + 1 = SW(G)",
            None,
            &bs.sum + &offset,
            ratio(&bs.steiner_wiener),
        ));
        let avg = average_total_check(&bs, n);
        r.identities.push(IdentityCheck::scalar(
            "average-total-steiner-betweenness",
            "mean of B_S = (1/n)((2^n - n - 1) average SW - 2^(n-1)(n-2) - 1)",
            None,
            avg.direct,
            avg.formula,
        ));
        let table = SubsetSteinerTable::new(g, self.limits)?;
        let mut by_k = BigCount::default();
        for k in 2..=n {
            by_k += steiner_wiener_k(g, k, self.limits)?.value;
        }
        let total: BigCount = table.sw_by_k().iter().sum();
        r.identities.push(IdentityCheck::scalar(
            "total-is-sum-of-sw-k",
            "SW(G) = sum over k of SW_k(G)",
            None,
            ratio(&total),
            ratio(&by_k),
        ));
        Ok(())
    }
}

/// Edge-list text of a generated family.
pub fn generate(family: Family, params: &[usize], seed: Option<u64>) -> Result<String, CliError> {
    Ok(generate_family(family, params, seed)?.to_edge_list())
}
