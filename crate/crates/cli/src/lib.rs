//! Library side of the `steiner` command: report types and the `compute`,
//! `verify` and `generate` commands.

pub mod report;
pub mod run;

pub use report::{Report, SCHEMA_VERSION};
pub use run::{
    compute, generate, limits_from_env, verify, CliError, ComputeOptions, GraphSource, MetricName, Suite,
    VerifyOptions,
};
