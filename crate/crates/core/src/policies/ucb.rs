//! UCB-Normal over the vertex set: each extremal point is an arm of a
//! K-armed bandit.

use super::{Decision, Feedback, Phase, Policy, PolicyError};
use crate::polytope::Polyhedron;

/// Index policy `mean_j + sqrt(16·v_j·ln t / n_j)` where `v_j` is the
/// sample variance of arm `j`. Arms seen once use `variance_prior` instead.
/// Every vertex is played once before the index takes over.
#[derive(Debug, Clone)]
pub struct ExtremalUcb {
    name: String,
    vertices: Vec<Vec<f64>>,
    counts: Vec<u64>,
    sums: Vec<f64>,
    sq_sums: Vec<f64>,
    means: Vec<f64>,
    /// `sqrt(16·v_j / n_j)`, so the index is `mean + sqrt(ln t)·width`.
    widths: Vec<f64>,
    variance_prior: f64,
    total: u64,
    pending: Option<usize>,
}

impl ExtremalUcb {
    pub fn new(poly: &Polyhedron, variance_prior: f64) -> Result<Self, PolicyError> {
        Self::from_vertices(poly.enumerate_vertices()?.vertices, variance_prior)
    }

    pub fn from_vertices(vertices: Vec<Vec<f64>>, variance_prior: f64) -> Result<Self, PolicyError> {
        if !(variance_prior >= 0.0 && variance_prior.is_finite()) {
            return Err(PolicyError::InvalidParameter(format!("variance prior must be finite and >= 0, got {variance_prior}")));
        }
        if vertices.is_empty() {
            return Err(PolicyError::InvalidParameter("no arms".into()));
        }
        let k = vertices.len();
        Ok(Self {
            name: "UCB-Normal".into(),
            vertices,
            counts: vec![0; k],
            sums: vec![0.0; k],
            sq_sums: vec![0.0; k],
            means: vec![0.0; k],
            widths: vec![0.0; k],
            variance_prior,
            total: 0,
            pending: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_arms(&self) -> usize {
        self.vertices.len()
    }

    fn select(&self) -> usize {
        if let Some(j) = self.counts.iter().position(|&c| c == 0) {
            return j;
        }
        let s = (self.total as f64).ln().max(0.0).sqrt();
        let mut best = 0;
        let mut best_idx = f64::NEG_INFINITY;
        for (j, (m, w)) in self.means.iter().zip(&self.widths).enumerate() {
            let idx = m + s * w;
            if idx > best_idx {
                best_idx = idx;
                best = j;
            }
        }
        best
    }
}

impl Policy for ExtremalUcb {
    fn name(&self) -> &str {
        &self.name
    }

    fn next_decision(&mut self) -> Result<Decision, PolicyError> {
        if self.pending.is_some() {
            return Err(PolicyError::MissingFeedback);
        }
        let initializing = self.counts.contains(&0);
        let j = self.select();
        self.pending = Some(j);
        Ok(Decision {
            arm: self.vertices[j].clone(),
            phase: if initializing { Phase::Explore } else { Phase::Exploit },
            block_length: 1,
            uses_reward: true,
        })
    }

    fn observe(&mut self, fb: &Feedback) -> Result<(), PolicyError> {
        let j = self.pending.take().ok_or(PolicyError::UnexpectedFeedback)?;
        self.counts[j] += fb.plays;
        self.sums[j] += fb.reward_sum;
        self.sq_sums[j] += fb.reward_sq_sum;
        self.total += fb.plays;
        let n = self.counts[j] as f64;
        let mean = self.sums[j] / n;
        let var = if self.counts[j] >= 2 {
            ((self.sq_sums[j] - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            self.variance_prior
        };
        self.means[j] = mean;
        self.widths[j] = (16.0 * var / n).sqrt();
        Ok(())
    }
}
