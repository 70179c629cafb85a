use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use steiner_core::Family;
use steiner_cli::{
    compute, generate, limits_from_env, verify, CliError, ComputeOptions, GraphSource, MetricName, Report, Suite,
    VerifyOptions,
};

/// Exact Steiner Wiener indices and Steiner betweenness centrality.
#[derive(Parser)]
#[command(name = "steiner", version)]
struct Cli {
    /// Worker threads (default: all available cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Edge-list file ("n m" header, then m lines "u v").
    #[arg(long, conflicts_with_all = ["family", "params", "seed"])]
    file: Option<String>,
    /// Graph family: path, cycle, star, complete, complete-bipartite, hypercube, grid, random-tree, gnp-connected.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// Family parameters, e.g. `--params 3 4` for a 3x4 grid.
    #[arg(long, num_args = 1.., requires = "family")]
    params: Vec<usize>,
    /// Seed for random-tree and gnp-connected (default 0).
    #[arg(long, requires = "family")]
    seed: Option<u64>,
}

impl Source {
    fn resolve(self) -> Result<GraphSource, CliError> {
        match (self.file, self.family) {
            (Some(path), None) => Ok(GraphSource::File(path)),
            (None, Some(family)) => Ok(GraphSource::Family {
                family,
                params: self.params,
                seed: self.seed,
            }),
            _ => Err(CliError::Input("give either --file or --family".into())),
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: steiner_core::GraphError| e.to_string())
}

fn parse_metric(s: &str) -> Result<MetricName, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Compute metrics and print a JSON report.
    Compute {
        #[command(flatten)]
        source: Source,
        /// wiener, betweenness, steiner-wiener, steiner-betweenness, total-steiner-wiener,
        /// total-steiner-betweenness, modularity, tree-decompositions.
        #[arg(long = "metric", required = true, value_delimiter = ',', value_parser = parse_metric)]
        metrics: Vec<MetricName>,
        /// Subset size for steiner-wiener and steiner-betweenness.
        #[arg(short = 'k')]
        k: Option<usize>,
        /// Report both sides of the SW_3 / Wiener shortcut even on non-modular graphs.
        #[arg(long)]
        force: bool,
        /// Include wall-clock timings (makes the report non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Check the decomposition identities; exit 1 if any fails.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Identity suite: tree, general, modular, total or all.
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Inclusive k range, e.g. `-k 2 5`.
        #[arg(short = 'k', num_args = 2, value_names = ["LO", "HI"])]
        k: Option<Vec<usize>>,
    },
    /// Print a generated graph in edge-list format.
    Generate {
        /// Graph family (same names as for compute).
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// Family parameters.
        #[arg(long, num_args = 1..)]
        params: Vec<usize>,
        /// Seed for the random families (default 0).
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn run(cli: Cli) -> Result<Option<Report>, CliError> {
    let limits = limits_from_env()?;
    match cli.command {
        Command::Compute {
            source,
            metrics,
            k,
            force,
            timings,
        } => {
            let opts = ComputeOptions {
                metrics,
                k,
                force,
                timings,
            };
            compute(&source.resolve()?, &opts, &limits).map(Some)
        }
        Command::Verify { source, suite, k } => {
            let opts = VerifyOptions {
                suite,
                k_range: k.map(|v| (v[0], v[1])),
            };
            verify(&source.resolve()?, &opts, &limits).map(Some)
        }
        Command::Generate { family, params, seed } => {
            println!("{}", generate(family, &params, seed)?);
            Ok(None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(Some(report)) => {
            print!("{}", report.to_json());
            let failed: Vec<_> = report.failures().collect();
            if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                for f in failed {
                    eprintln!("identity failed: {} (k = {:?}): {} != {}", f.name, f.k, f.lhs, f.rhs);
                }
                ExitCode::from(1)
            }
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
