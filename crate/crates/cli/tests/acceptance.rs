//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails. All checks are exact: every
//! residual must be zero.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use steiner_cli::{verify, GraphSource, Suite, VerifyOptions};
use steiner_core::catalog::connected_graphs;
use steiner_core::modular::compare_sw3_with_wiener;
use steiner_core::rng::SplitMix64;
use steiner_core::steiner::SubsetSteinerTable;
use steiner_core::subsets::KSubsets;
use steiner_core::{
    average_k_steiner_betweenness, binomial, classify_modularity, enumerate_min_steiner_trees,
    generate_family, geodesic_betweenness, hypercube_b3, k_steiner_betweenness, steiner_wiener_k,
    sw3_via_wiener, sw_k_edge_decomposition, sw_k_vertex_decomposition, total_steiner_betweenness,
    wiener_index, BigCount, ExactRatio, Family, Graph, Limits, SteinerCounter, SteinerError, TerminalSet,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fam(f: Family, p: &[usize]) -> Graph {
    generate_family(f, p, None).unwrap()
}

/// 200 connected graphs, n in [4, 9], edge percentage cycling through 20..=90.
fn corpus() -> Vec<Graph> {
    (0..200u64)
        .map(|i| {
            let n = 4 + (i % 6) as usize;
            let percent = 20 + ((i * 37) % 71) as usize;
            generate_family(Family::GnpConnected, &[n, percent], Some(1000 + i)).unwrap()
        })
        .collect()
}

fn within(start: Instant, budget: Duration) -> Outcome {
    let spent = start.elapsed();
    ensure!(spent < budget, "took {spent:?}, budget {budget:?}");
    Ok(format!("{:.1}s", spent.as_secs_f64()))
}

fn criterion_1(corpus: &[Graph]) -> Outcome {
    let start = Instant::now();
    let l = Limits::default();
    let mut checks = 0;
    for g in corpus {
        let n = g.n();
        for k in 2..=n.min(5) {
            let b = k_steiner_betweenness(g, k, &l).map_err(|e| e.to_string())?;
            let sw = steiner_wiener_k(g, k, &l).map_err(|e| e.to_string())?.value;
            let lhs = &b.sum + &ExactRatio::from_count(&(BigCount::from(k - 1) * binomial(n as u64, k as u64)));
            let residual = &lhs - &ExactRatio::from_count(&sw);
            ensure!(residual.is_zero(), "{g}\nk={k}: residual {residual}");
            checks += 1;
        }
    }
    let t = within(start, Duration::from_secs(300))?;
    Ok(format!("{checks} (graph, k) pairs, residual 0, {t}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let l = Limits::default();
    let mut checks = 0;
    for i in 0..100u64 {
        let n = 2 + (i % 11) as usize;
        let t = generate_family(Family::RandomTree, &[n], Some(2000 + i)).unwrap();
        for k in 2..=n.min(6) {
            let dp = steiner_wiener_k(&t, k, &l).map_err(|e| e.to_string())?.value;
            let edge = sw_k_edge_decomposition(&t, k).map_err(|e| e.to_string())?;
            let vertex = sw_k_vertex_decomposition(&t, k).map_err(|e| e.to_string())?;
            ensure!(edge == dp && vertex == dp, "{t}\nk={k}: edge {edge} vertex {vertex} dp {dp}");
            checks += 1;
        }
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("{checks} (tree, k) pairs, {t}"))
}

fn criterion_3(corpus: &[Graph]) -> Outcome {
    let l = Limits::default();
    for g in corpus {
        let w = wiener_index(g);
        let sw2 = steiner_wiener_k(g, 2, &l).map_err(|e| e.to_string())?.value;
        ensure!(sw2 == w, "{g}\nSW_2 {sw2} != W {w}");
        let geodesic = geodesic_betweenness(g);
        let b2 = k_steiner_betweenness(g, 2, &l).map_err(|e| e.to_string())?.per_vertex;
        ensure!(b2 == geodesic, "{g}\nB_2 != B");
        let sum: ExactRatio = geodesic.iter().sum();
        let rhs = ExactRatio::from_count(&w) - ExactRatio::from_count(&binomial(g.n() as u64, 2));
        ensure!(sum == rhs, "{g}\nsum B = {sum}, W - C(n,2) = {rhs}");
    }
    Ok(format!("{} graphs", corpus.len()))
}

fn counts_match(g: &Graph, counter: &SteinerCounter, a: &TerminalSet) -> Result<(), String> {
    let c = counter.count(a).map_err(|e| e.to_string())?;
    let trees = enumerate_min_steiner_trees(g, a).map_err(|e| e.to_string())?;
    ensure!(c.sigma == BigCount::from(trees.len()), "{g}\n{a:?}: sigma {} vs {} trees", c.sigma, trees.len());
    for v in (0..g.n()).filter(|&v| !a.contains(v)) {
        let through = trees.iter().filter(|t| t.iter().any(|&(x, y)| x == v || y == v)).count();
        ensure!(c.through[v] == BigCount::from(through), "{g}\n{a:?}: sigma_A({v}) {} vs {through}", c.through[v]);
    }
    Ok(())
}

fn criterion_4(corpus: &[Graph]) -> Outcome {
    let start = Instant::now();
    let mut sets = 0;
    let mut graphs = 0;
    for n in 2..=6 {
        for g in connected_graphs(n) {
            let counter = SteinerCounter::new(&g, Limits::default()).unwrap();
            for k in 2..=n {
                for mask in KSubsets::new(n, k) {
                    counts_match(&g, &counter, &TerminalSet::from_mask(mask, n).unwrap())?;
                    sets += 1;
                }
            }
            graphs += 1;
        }
    }
    let mut rng = SplitMix64::new(4);
    for g in corpus.iter().filter(|g| g.n() == 7 || g.n() == 8) {
        let n = g.n();
        let counter = SteinerCounter::new(g, Limits::default()).unwrap();
        for _ in 0..200 {
            let mask = loop {
                let m = rng.next_u64() & ((1 << n) - 1);
                if m.count_ones() >= 2 {
                    break m;
                }
            };
            counts_match(g, &counter, &TerminalSet::from_mask(mask, n).unwrap())?;
            sets += 1;
        }
        graphs += 1;
    }
    let t = within(start, Duration::from_secs(600))?;
    Ok(format!("{graphs} graphs, {sets} terminal sets, {t}"))
}

fn criterion_5() -> Outcome {
    let l = Limits::default();
    let mut gs: Vec<Graph> = (0..30u64)
        .map(|i| generate_family(Family::RandomTree, &[3 + (i % 10) as usize], Some(5000 + i)).unwrap())
        .collect();
    gs.push(fam(Family::Path, &[12]));
    gs.push(fam(Family::Star, &[12]));
    for r in 1..=4 {
        for c in r..=4 {
            if r * c >= 3 {
                gs.push(fam(Family::Grid, &[r, c]));
            }
        }
    }
    for a in 1..=7 {
        for b in a..=8 - a {
            if a + b >= 3 {
                gs.push(fam(Family::CompleteBipartite, &[a, b]));
            }
        }
    }
    gs.push(fam(Family::Hypercube, &[2]));
    gs.push(fam(Family::Hypercube, &[3]));
    for g in &gs {
        ensure!(classify_modularity(g).is_modular, "{g}\nnot modular");
        let shortcut = sw3_via_wiener(g).map_err(|e| e.to_string())?;
        let dp = steiner_wiener_k(g, 3, &l).map_err(|e| e.to_string())?.value;
        ensure!(shortcut == dp, "{g}\n(n-2)W/2 = {shortcut}, SW_3 = {dp}");
    }
    let c5 = fam(Family::Cycle, &[5]);
    ensure!(
        matches!(sw3_via_wiener(&c5), Err(SteinerError::NotModular { .. })),
        "C_5 was not rejected"
    );
    let cmp = compare_sw3_with_wiener(&c5, &l).unwrap();
    ensure!(cmp.sw3 == BigCount::from(25u8), "C_5 SW_3 = {}", cmp.sw3);
    ensure!(cmp.via_wiener == ExactRatio::new(45, 2), "C_5 (n-2)W/2 = {}", cmp.via_wiener);
    Ok(format!("{} modular graphs; C_5 rejected, SW_3 = 25 vs 45/2", gs.len()))
}

fn criterion_6() -> Outcome {
    let l = Limits::default();
    let q3 = fam(Family::Hypercube, &[3]);
    ensure!(wiener_index(&q3) == BigCount::from(48u8), "W(Q_3) = {}", wiener_index(&q3));
    let closed = hypercube_b3(3).unwrap();
    ensure!(closed == ExactRatio::from_int(4), "closed form at d=3 is {closed}");
    let b3 = k_steiner_betweenness(&q3, 3, &l).unwrap();
    ensure!(b3.per_vertex.len() == 8, "Q_3 has {} vertices", b3.per_vertex.len());
    ensure!(b3.per_vertex.iter().all(|b| *b == closed), "per-vertex B_3 = {:?}", b3.per_vertex);
    let q2 = fam(Family::Hypercube, &[2]);
    let avg = average_k_steiner_betweenness(&q2, 3, &l).unwrap();
    ensure!(avg.is_zero() && hypercube_b3(2).unwrap().is_zero(), "Q_2 average B_3 = {avg}");
    Ok("B_3 = 4 on all 8 vertices of Q_3; Q_2 average 0".into())
}

fn criterion_7(corpus: &[Graph]) -> Outcome {
    let l = Limits::default();
    let mut gs: Vec<Graph> = corpus.iter().filter(|g| g.n() <= 7).cloned().collect();
    gs.push(fam(Family::Complete, &[2]));
    gs.push(fam(Family::Complete, &[3]));
    gs.push(fam(Family::Star, &[4]));
    gs.push(fam(Family::Path, &[5]));
    gs.push(fam(Family::Cycle, &[6]));
    for g in &gs {
        let r = total_steiner_betweenness(g, &l).map_err(|e| e.to_string())?;
        ensure!(r.identity_residual.is_zero(), "{g}\nresidual {}", r.identity_residual);
    }
    Ok(format!("{} graphs, residual 0", gs.len()))
}

fn criterion_8() -> Outcome {
    let l = Limits::default();
    let mut graphs = 0;
    let mut triples: u64 = 0;
    for n in 1..=6 {
        for g in connected_graphs(n) {
            let t = SubsetSteinerTable::new(&g, &l).unwrap();
            let all = 1u64 << n;
            for a in 0..all {
                ensure!((t.delta(a) == 0) == (a.count_ones() <= 1), "{g}\n(D1) fails at {a:b}");
            }
            for a in 0..all {
                for b in 1..all {
                    let ab = t.delta(a | b);
                    for c in 0..all {
                        ensure!(ab + t.delta(b | c) >= t.delta(a | c), "{g}\n(D2) fails at {a:b} {b:b} {c:b}");
                    }
                }
            }
            triples += all * (all - 1) * all;
            graphs += 1;
        }
    }
    Ok(format!("{graphs} graphs, {triples} subset triples"))
}

fn standard_matrix() -> Vec<GraphSource> {
    let fixed: &[(Family, &[usize])] = &[
        (Family::Path, &[2]),
        (Family::Path, &[6]),
        (Family::Cycle, &[4]),
        (Family::Cycle, &[5]),
        (Family::Cycle, &[7]),
        (Family::Star, &[6]),
        (Family::Complete, &[5]),
        (Family::CompleteBipartite, &[2, 3]),
        (Family::CompleteBipartite, &[3, 3]),
        (Family::Grid, &[2, 3]),
        (Family::Grid, &[3, 3]),
        (Family::Hypercube, &[1]),
        (Family::Hypercube, &[2]),
        (Family::Hypercube, &[3]),
    ];
    let mut sources: Vec<GraphSource> = fixed
        .iter()
        .map(|&(family, params)| GraphSource::Family {
            family,
            params: params.to_vec(),
            seed: None,
        })
        .collect();
    for seed in 0..25 {
        sources.push(GraphSource::Family {
            family: if seed % 2 == 0 { Family::RandomTree } else { Family::GnpConnected },
            params: vec![5 + (seed as usize % 4)],
            seed: Some(seed),
        });
    }
    sources
}

fn criterion_9() -> Outcome {
    let l = Limits::default();
    let opts = VerifyOptions {
        suite: Suite::All,
        k_range: None,
    };
    let max = std::thread::available_parallelism().map_or(4, |n| n.get()).max(4);
    let matrix = standard_matrix();
    for source in &matrix {
        let mut outputs = Vec::new();
        for threads in [1, 2, max] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let report = pool.install(|| verify(source, &opts, &l)).map_err(|e| format!("{source:?}: {e}"))?;
            ensure!(report.all_passed == Some(true), "{source:?}: identity failure");
            outputs.push(report.to_json());
        }
        ensure!(outputs.windows(2).all(|w| w[0] == w[1]), "{source:?}: reports differ across thread counts");
    }

    // the binary, end to end
    for args in [
        ["--family", "hypercube", "--params", "3", "--seed", "0"],
        ["--family", "gnp-connected", "--params", "8", "--seed", "11"],
    ] {
        let mut outputs = Vec::new();
        for threads in ["1", "2", &max.to_string()] {
            let out = Command::new(env!("CARGO_BIN_EXE_steiner"))
                .args(["--threads", threads, "verify", "--suite", "all"])
                .args(if args[1] == "hypercube" { &args[..4] } else { &args[..] })
                .env_remove("STEINER_MAX_SUBSETS")
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(out.status.success(), "{args:?} exit {:?}", out.status.code());
            outputs.push(out.stdout);
        }
        ensure!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}: CLI output differs across thread counts");
    }
    Ok(format!("{} graphs at 1, 2, {max} threads; byte-identical, all pass", matrix.len()))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 k-Steiner betweenness decomposition", Box::new(|| criterion_1(&corpus))),
        ("2 tree edge/vertex decompositions", Box::new(criterion_2)),
        ("3 k=2 degeneration", Box::new(|| criterion_3(&corpus))),
        ("4 counting oracle equivalence", Box::new(|| criterion_4(&corpus))),
        ("5 modular SW_3 theorem", Box::new(criterion_5)),
        ("6 hypercube closed form", Box::new(criterion_6)),
        ("7 total Steiner decomposition", Box::new(|| criterion_7(&corpus))),
        ("8 diversity axioms", Box::new(criterion_8)),
        ("9 determinism across thread counts", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
