//! Optimistic linear policies over the vertex set: LinUCB and the
//! self-normalized confidence-ellipsoid rule.
//!
//! Both keep the regularized design `V = λI + Σ x xᵀ`, the ridge estimate
//! `θ̂ = V⁻¹ Σ r x`, and play the vertex maximizing `θ̂ᵀv + β_t ‖v‖_{V⁻¹}`.
//! They differ only in the radius `β_t`. `V⁻¹` and the per-vertex quadratic
//! forms `vᵀV⁻¹v` are updated by Sherman–Morrison, and recomputed from
//! scratch periodically to shed rounding drift.

use super::{Decision, Feedback, Phase, Policy, PolicyError};
use crate::linalg::{dot, Lu};
use crate::polytope::Polyhedron;

const REFRESH_EVERY: u64 = 8192;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusRule {
    /// `β = 1 + sqrt(ln(2/δ)/2)`.
    LinUcb { delta: f64 },
    /// `β_t = R·sqrt(2 ln(det(V)^{1/2} det(λI)^{-1/2} / δ)) + √λ·S`.
    SelfNormalized { r: f64, delta: f64, s: f64 },
}

#[derive(Debug, Clone)]
pub struct OptimisticLinear {
    name: String,
    rule: RadiusRule,
    lambda: f64,
    dim: usize,
    vertices: Vec<Vec<f64>>,
    /// Column-major copy of `vertices` (coordinate `i` of every vertex is
    /// contiguous) so the per-step sweeps vectorize across vertices.
    columns: Vec<f64>,
    scratch: Vec<f64>,
    design: Vec<Vec<f64>>,
    design_inv: Vec<Vec<f64>>,
    xty: Vec<f64>,
    quad: Vec<f64>,
    log_det: f64,
    steps: u64,
    pending: Option<usize>,
}

impl OptimisticLinear {
    fn new(vertices: Vec<Vec<f64>>, rule: RadiusRule, lambda: f64, name: &str) -> Result<Self, PolicyError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(PolicyError::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        let delta = match rule {
            RadiusRule::LinUcb { delta } | RadiusRule::SelfNormalized { delta, .. } => delta,
        };
        if !(delta > 0.0 && delta < 1.0) {
            return Err(PolicyError::InvalidParameter(format!("confidence delta must lie in (0,1), got {delta}")));
        }
        let n = vertices.first().map(Vec::len).ok_or_else(|| PolicyError::InvalidParameter("no arms".into()))?;
        let design: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { lambda } else { 0.0 }).collect()).collect();
        let design_inv: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 / lambda } else { 0.0 }).collect()).collect();
        let quad = vertices.iter().map(|v| dot(v, v) / lambda).collect();
        Ok(Self {
            name: name.into(),
            rule,
            lambda,
            dim: n,
            columns: (0..n).flat_map(|i| vertices.iter().map(move |v| v[i])).collect(),
            scratch: vec![0.0; vertices.len()],
            vertices,
            design,
            design_inv,
            xty: vec![0.0; n],
            quad,
            log_det: n as f64 * lambda.ln(),
            steps: 0,
            pending: None,
        })
    }

    /// LinUCB with `λ = 1` and confidence parameter `delta`.
    pub fn lin_ucb(poly: &Polyhedron, delta: f64) -> Result<Self, PolicyError> {
        Self::lin_ucb_on(poly.enumerate_vertices()?.vertices, delta)
    }

    pub fn lin_ucb_on(vertices: Vec<Vec<f64>>, delta: f64) -> Result<Self, PolicyError> {
        Self::new(vertices, RadiusRule::LinUcb { delta }, 1.0, "LinUCB")
    }

    /// Self-normalized ellipsoid rule with noise scale `r`, `λ = 1` and
    /// `S = √N` (the norm bound for `θ ∈ [−1,1]ᴺ`).
    pub fn self_normalized(poly: &Polyhedron, r: f64, delta: f64) -> Result<Self, PolicyError> {
        Self::self_normalized_on(poly.enumerate_vertices()?.vertices, r, delta)
    }

    pub fn self_normalized_on(vertices: Vec<Vec<f64>>, r: f64, delta: f64) -> Result<Self, PolicyError> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(PolicyError::InvalidParameter(format!("R must be finite and >= 0, got {r}")));
        }
        let s = (vertices.first().map_or(0, Vec::len) as f64).sqrt();
        Self::new(vertices, RadiusRule::SelfNormalized { r, delta, s }, 1.0, "SelfNormalized")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn radius(&self) -> f64 {
        match self.rule {
            RadiusRule::LinUcb { delta } => 1.0 + ((2.0 / delta).ln() / 2.0).sqrt(),
            RadiusRule::SelfNormalized { r, delta, s } => {
                let log_ratio = 0.5 * (self.log_det - self.dim as f64 * self.lambda.ln());
                r * (2.0 * (log_ratio - delta.ln())).sqrt() + self.lambda.sqrt() * s
            }
        }
    }

    /// `out[j] = w · v_j` for every vertex.
    fn project(columns: &[f64], w: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (col, &wi) in columns.chunks_exact(out.len()).zip(w) {
            for (o, &c) in out.iter_mut().zip(col) {
                *o += wi * c;
            }
        }
    }

    pub fn theta_hat(&self) -> Vec<f64> {
        self.design_inv.iter().map(|row| dot(row, &self.xty)).collect()
    }

    fn refresh(&mut self) {
        if let Some(lu) = Lu::factor(&self.design) {
            self.design_inv = lu.inverse();
            for (q, v) in self.quad.iter_mut().zip(&self.vertices) {
                let w: Vec<f64> = self.design_inv.iter().map(|row| dot(row, v)).collect();
                *q = dot(v, &w);
            }
        }
    }
}

impl Policy for OptimisticLinear {
    fn name(&self) -> &str {
        &self.name
    }

    fn next_decision(&mut self) -> Result<Decision, PolicyError> {
        if self.pending.is_some() {
            return Err(PolicyError::MissingFeedback);
        }
        let theta = self.theta_hat();
        let beta = self.radius();
        Self::project(&self.columns, &theta, &mut self.scratch);
        for (m, q) in self.scratch.iter_mut().zip(&self.quad) {
            *m += beta * q.max(0.0).sqrt();
        }
        let mut best = 0;
        let mut best_idx = f64::NEG_INFINITY;
        for (j, &idx) in self.scratch.iter().enumerate() {
            if idx > best_idx {
                best_idx = idx;
                best = j;
            }
        }
        self.pending = Some(best);
        Ok(Decision { arm: self.vertices[best].clone(), phase: Phase::Exploit, block_length: 1, uses_reward: true })
    }

    fn observe(&mut self, fb: &Feedback) -> Result<(), PolicyError> {
        let j = self.pending.take().ok_or(PolicyError::UnexpectedFeedback)?;
        let x = &self.vertices[j];
        let plays = fb.plays as f64;
        for (b, xi) in self.xty.iter_mut().zip(x) {
            *b += fb.reward_sum * xi;
        }
        for _ in 0..fb.plays {
            let u: Vec<f64> = self.design_inv.iter().map(|row| dot(row, x)).collect();
            let denom = 1.0 + dot(x, &u);
            for (i, row) in self.design_inv.iter_mut().enumerate() {
                for (k, e) in row.iter_mut().enumerate() {
                    *e -= u[i] * u[k] / denom;
                }
            }
            Self::project(&self.columns, &u, &mut self.scratch);
            let inv = 1.0 / denom;
            for (q, vu) in self.quad.iter_mut().zip(&self.scratch) {
                *q -= vu * vu * inv;
            }
            self.log_det += denom.ln();
        }
        for (i, row) in self.design.iter_mut().enumerate() {
            for (k, e) in row.iter_mut().enumerate() {
                *e += plays * x[i] * x[k];
            }
        }
        self.steps += fb.plays;
        if self.steps.is_multiple_of(REFRESH_EVERY) {
            self.refresh();
        }
        Ok(())
    }
}
