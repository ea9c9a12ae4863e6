//! Sequential decision policies.
//!
//! A policy hands out [`Decision`]s, each covering a block of identical
//! consecutive plays, and receives [`Feedback`] for blocks whose rewards it
//! uses. The explore/exploit policies emit long exploitation blocks that the
//! runner can account for in O(1).

mod linear;
mod phased;
mod ucb;

pub use linear::{OptimisticLinear, RadiusRule};
pub use phased::{CycleRecord, ExplorationMode, PhasedPolicy, PolicyState, Schedule};
pub use ucb::ExtremalUcb;

use crate::estimators::EstimatorError;
use crate::lp::LpError;
use crate::polytope::PolytopeError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest exploitation block a policy will emit.
pub const DEFAULT_BLOCK_CAP: u64 = 1 << 62;

#[derive(Debug, Error)]
pub enum PolicyError {
    #[error("invalid policy parameter: {0}")]
    InvalidParameter(String),
    #[error("next decision requested before feedback for the previous one")]
    MissingFeedback,
    #[error("feedback received but no decision is waiting for it")]
    UnexpectedFeedback,
    #[error("greedy linear program did not reach an optimum")]
    GreedyFailed,
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Explore,
    Exploit,
}

/// Play `arm` for `block_length` consecutive rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub arm: Vec<f64>,
    pub phase: Phase,
    pub block_length: u64,
    /// Whether the policy wants the rewards of this block back.
    pub uses_reward: bool,
}

/// Rewards observed over the executed part of a block.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Feedback {
    pub plays: u64,
    pub reward_sum: f64,
    pub reward_sq_sum: f64,
}

impl Feedback {
    pub fn single(reward: f64) -> Self {
        Self { plays: 1, reward_sum: reward, reward_sq_sum: reward * reward }
    }
}

pub trait Policy: Send {
    fn name(&self) -> &str;

    fn next_decision(&mut self) -> Result<Decision, PolicyError>;

    /// Must be called after every decision with `uses_reward` set, before
    /// the next call to [`Policy::next_decision`].
    fn observe(&mut self, feedback: &Feedback) -> Result<(), PolicyError>;

    /// Per-cycle estimation log; empty for policies without cycles.
    fn cycle_log(&self) -> &[CycleRecord] {
        &[]
    }
}

/// `⌊2^exponent⌋` clamped to `[1, cap]`, exact when the exponent is integral.
pub fn pow2_block(exponent: f64, cap: u64) -> u64 {
    if exponent.is_nan() || exponent <= 0.0 {
        return 1;
    }
    if exponent >= 63.0 {
        return cap.max(1);
    }
    let len = if exponent.fract() == 0.0 { 1u64 << (exponent as u32) } else { exponent.exp2().floor() as u64 };
    len.clamp(1, cap.max(1))
}
