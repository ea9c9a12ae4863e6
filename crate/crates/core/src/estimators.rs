//! Component-wise estimators of the hidden parameter from exploration plays.
//!
//! All estimators divide by the number of plays actually observed, so they
//! stay unbiased however many cycles were skipped or truncated.

use crate::linalg::{condition_number, Lu};
use crate::polytope::ExplorationBasis;
use thiserror::Error;

/// Matrices with a larger 1-norm condition number are rejected.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimatorError {
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("arm {0} has no observations yet")]
    ZeroCount(usize),
    #[error("anchor arm has no observations yet")]
    ZeroAnchorCount,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("estimator needs an origin-anchored basis")]
    NotOriginAnchored,
    #[error("arm offset {0} is zero")]
    ZeroOffset(usize),
    #[error("estimation system is singular or ill-conditioned (condition {0:e})")]
    Singular(f64),
}

/// Running reward sums per exploration arm, plus the anchor arm when the
/// basis is not anchored at the origin.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParameterEstimate {
    pub sums: Vec<f64>,
    pub counts: Vec<u64>,
    pub anchor_sum: f64,
    pub anchor_count: u64,
}

impl ParameterEstimate {
    pub fn new(dim: usize) -> Self {
        Self { sums: vec![0.0; dim], counts: vec![0; dim], anchor_sum: 0.0, anchor_count: 0 }
    }

    pub fn dim(&self) -> usize {
        self.sums.len()
    }

    pub fn update_axis(&mut self, axis: usize, reward: f64) -> Result<(), EstimatorError> {
        self.update_axis_block(axis, reward, 1)
    }

    /// Adds `plays` observations of arm `axis` whose rewards sum to `reward_sum`.
    pub fn update_axis_block(&mut self, axis: usize, reward_sum: f64, plays: u64) -> Result<(), EstimatorError> {
        if axis >= self.dim() {
            return Err(EstimatorError::AxisOutOfRange { axis, dim: self.dim() });
        }
        self.sums[axis] += reward_sum;
        self.counts[axis] += plays;
        Ok(())
    }

    pub fn update_anchor(&mut self, reward_sum: f64, plays: u64) {
        self.anchor_sum += reward_sum;
        self.anchor_count += plays;
    }

    pub fn mean_rewards(&self) -> Result<Vec<f64>, EstimatorError> {
        self.sums
            .iter()
            .zip(&self.counts)
            .enumerate()
            .map(|(n, (&s, &c))| if c == 0 { Err(EstimatorError::ZeroCount(n)) } else { Ok(s / c as f64) })
            .collect()
    }

    fn check_basis(&self, basis: &ExplorationBasis) -> Result<(), EstimatorError> {
        if basis.dim() != self.dim() {
            return Err(EstimatorError::DimensionMismatch { expected: self.dim(), got: basis.dim() });
        }
        Ok(())
    }

    /// `θ̂_n = sums_n / (counts_n · z_n)` for arms `z_n e_n`.
    pub fn estimate_origin(&self, basis: &ExplorationBasis) -> Result<Vec<f64>, EstimatorError> {
        self.check_basis(basis)?;
        if basis.anchor.iter().any(|&x| x != 0.0) {
            return Err(EstimatorError::NotOriginAnchored);
        }
        Ok(self.mean_rewards()?.iter().zip(&basis.reaches).map(|(m, z)| m / z).collect())
    }

    /// `θ̂_n = (mean(x̄ + z_n e_n) − mean(x̄)) / z_n`.
    pub fn estimate_difference(&self, basis: &ExplorationBasis) -> Result<Vec<f64>, EstimatorError> {
        self.check_basis(basis)?;
        if self.anchor_count == 0 {
            return Err(EstimatorError::ZeroAnchorCount);
        }
        let anchor_mean = self.anchor_sum / self.anchor_count as f64;
        Ok(self.mean_rewards()?.iter().zip(&basis.reaches).map(|(m, z)| (m - anchor_mean) / z).collect())
    }
}

/// Recovers `θ` from mean rewards of the arms `x̄ + α_n e_n` without playing
/// `x̄` itself, by solving `(𝟙 x̄' + diag(α)) θ = r̂` directly.
pub fn estimate_linear_system(mean_rewards: &[f64], anchor: &[f64], alphas: &[f64]) -> Result<Vec<f64>, EstimatorError> {
    let n = mean_rewards.len();
    for len in [anchor.len(), alphas.len()] {
        if len != n {
            return Err(EstimatorError::DimensionMismatch { expected: n, got: len });
        }
    }
    if let Some(i) = alphas.iter().position(|&a| a == 0.0) {
        return Err(EstimatorError::ZeroOffset(i));
    }
    let m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| anchor[j] + if i == j { alphas[i] } else { 0.0 }).collect())
        .collect();
    let cond = condition_number(&m).unwrap_or(f64::INFINITY);
    if cond > MAX_CONDITION {
        return Err(EstimatorError::Singular(cond));
    }
    let lu = Lu::factor(&m).ok_or(EstimatorError::Singular(cond))?;
    Ok(lu.solve(mean_rewards))
}
