//! Experiment orchestration: configuration, seeded multi-run execution,
//! checkpointed regret traces, summaries and the reference lower bound.

mod bound;
mod config;
mod output;
mod runner;

pub use bound::lower_bound_curve;
pub use config::{
    default_checkpoints, ExperimentConfig, OutputPaths, PolicyKind, PolicySpec, PolyhedronSource, ThetaSpec,
    DEFAULT_HORIZON,
};
pub use output::{summarize, write_raw_csv, write_summary_json, LowerBoundCurve, PolicySummary, Summary};
pub use runner::{run_experiment, run_policy, BlockEvent, RegretPoint, RegretTrace};

use crate::env::EnvError;
use crate::policies::PolicyError;
use crate::polytope::PolytopeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("run {run}: theta {theta:?} has a tied optimum (gap {delta:e})")]
    TiedOptimum { run: u64, theta: Vec<f64>, delta: f64 },
    #[error("lower bound needs a unique largest coordinate of theta")]
    TiedTheta,
    #[error("lower bound needs R > 0, got {0}")]
    BadNoiseScale(f64),
    #[error("policy emitted an empty block")]
    EmptyBlock,
    #[error("policy {policy}, run {run}: {source}")]
    Run { policy: String, run: u64, source: Box<HarnessError> },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
