//! Cycle-based explore-then-exploit policies.
//!
//! Every cycle plays a fixed set of exploration arms, re-estimates the
//! parameter, solves one LP for the greedy arm and commits to it for a block
//! whose length grows with the cycle index. The variants differ in three
//! independent knobs: the exploitation [`Schedule`], the
//! [`ExplorationMode`] (which arms are played and how they are turned into an
//! estimate), and whether each arm is played `2c+1` times or once per cycle.

use super::{pow2_block, Decision, Feedback, Phase, Policy, PolicyError, DEFAULT_BLOCK_CAP};
use crate::estimators::ParameterEstimate;
use crate::linalg::dot;
use crate::lp::{self, LpProblem};
use crate::polytope::{ExplorationBasis, Polyhedron, VertexSet};
use serde::Serialize;

/// Length of the exploitation block of cycle `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Schedule {
    /// `⌊2^{c²/(1+ε)}⌋` plays.
    SuperExponential { epsilon: f64 },
    /// `2^c` plays.
    Doubling,
    /// `⌊2^{κ(c)·c}⌋` plays with `κ(c) = a·Δ̂(c)/2`.
    Adaptive { a_const: f64 },
}

/// Which exploration arms are played and how they become an estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExplorationMode {
    /// Arms `z_n e_n` from the origin; sample-mean estimator.
    Origin,
    /// Anchor `x̄` plus arms `x̄ + z_n e_n`; difference estimator.
    Anchored,
    /// Like `Anchored`, but each cycle re-centres the anchor a fraction
    /// `lambda` of the way from the last greedy vertex back to the interior
    /// anchor. Per-cycle difference estimates are pooled, weighted by plays.
    Shifting { lambda: f64 },
}

/// Snapshot of a phased policy between decisions.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyState {
    pub cycle: u64,
    pub start_cycle: u64,
    pub phase: Phase,
    /// Next exploration slot (the anchor is slot 0 when it is played).
    pub phase_position: usize,
    pub epsilon: Option<f64>,
    pub a_const: Option<f64>,
    pub kappa: Option<f64>,
    pub delta_hat: Option<f64>,
    pub greedy_arm: Option<Vec<f64>>,
    pub basis: ExplorationBasis,
    /// Observations feeding the estimator: cumulative for fixed bases,
    /// current cycle only for a shifting basis.
    pub estimate: ParameterEstimate,
}

/// What a policy did at the end of one exploration interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleRecord {
    pub cycle: u64,
    pub theta_hat: Vec<f64>,
    pub greedy_arm: Vec<f64>,
    pub delta_hat: Option<f64>,
    pub kappa: Option<f64>,
    pub exploit_length: u64,
    /// Exploration plays of each basis arm up to and including this cycle.
    pub exploration_plays_per_arm: u64,
    pub anchor: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct PhasedPolicy {
    name: String,
    poly: Polyhedron,
    schedule: Schedule,
    mode: ExplorationMode,
    once_per_cycle: bool,
    base_basis: ExplorationBasis,
    vertices: Option<VertexSet>,
    state: PolicyState,
    pending_slot: Option<usize>,
    pooled_sum: Vec<f64>,
    pooled_weight: Vec<f64>,
    plays_per_arm_total: u64,
    block_cap: u64,
    history: Vec<CycleRecord>,
}

fn check_positive(name: &str, v: f64) -> Result<(), PolicyError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(PolicyError::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
    }
}

impl PhasedPolicy {
    fn build(
        name: &str,
        poly: &Polyhedron,
        schedule: Schedule,
        mode: ExplorationMode,
        once_per_cycle: bool,
        start_cycle: u64,
    ) -> Result<Self, PolicyError> {
        let basis = poly.exploration_basis(matches!(mode, ExplorationMode::Origin))?;
        Self::with_basis(name, poly, basis, schedule, mode, once_per_cycle, start_cycle)
    }

    fn with_basis(
        name: &str,
        poly: &Polyhedron,
        basis: ExplorationBasis,
        schedule: Schedule,
        mode: ExplorationMode,
        once_per_cycle: bool,
        start_cycle: u64,
    ) -> Result<Self, PolicyError> {
        let n = poly.dim();
        let vertices = match schedule {
            Schedule::Adaptive { .. } => Some(poly.enumerate_vertices()?),
            _ => None,
        };
        let state = PolicyState {
            cycle: start_cycle,
            start_cycle,
            phase: Phase::Explore,
            phase_position: 0,
            epsilon: match schedule {
                Schedule::SuperExponential { epsilon } => Some(epsilon),
                _ => None,
            },
            a_const: match schedule {
                Schedule::Adaptive { a_const } => Some(a_const),
                _ => None,
            },
            kappa: None,
            delta_hat: None,
            greedy_arm: None,
            basis: basis.clone(),
            estimate: ParameterEstimate::new(n),
        };
        Ok(Self {
            name: name.to_string(),
            poly: poly.clone(),
            schedule,
            mode,
            once_per_cycle,
            base_basis: basis,
            vertices,
            state,
            pending_slot: None,
            pooled_sum: vec![0.0; n],
            pooled_weight: vec![0.0; n],
            plays_per_arm_total: 0,
            block_cap: DEFAULT_BLOCK_CAP,
            history: Vec::new(),
        })
    }

    /// SEE: origin basis, `2c+1` plays per arm, `⌊2^{c²/(1+ε)}⌋` exploitation.
    pub fn see(poly: &Polyhedron, epsilon: f64, start_cycle: u64) -> Result<Self, PolicyError> {
        check_positive("epsilon", epsilon)?;
        Self::build("SEE", poly, Schedule::SuperExponential { epsilon }, ExplorationMode::Origin, false, start_cycle)
    }

    /// SEE2: as SEE but exploits for `2^c` plays.
    pub fn see2(poly: &Polyhedron, start_cycle: u64) -> Result<Self, PolicyError> {
        Self::build("SEE2", poly, Schedule::Doubling, ExplorationMode::Origin, false, start_cycle)
    }

    /// PolyLin: one play per basis arm per cycle and an exploitation
    /// exponent that adapts to the estimated gap. `r` is the noise scale.
    pub fn polylin(poly: &Polyhedron, r: f64, start_cycle: u64) -> Result<Self, PolicyError> {
        check_positive("R", r)?;
        let basis = poly.exploration_basis(true)?;
        let a_const = basis.reaches.iter().map(|z| z * z / (r * r)).fold(f64::INFINITY, f64::min);
        Self::with_basis(
            "PolyLin",
            poly,
            basis,
            Schedule::Adaptive { a_const },
            ExplorationMode::Origin,
            true,
            start_cycle,
        )
    }

    /// SEE for polyhedra without the origin inside: plays the interior
    /// anchor too and estimates from reward differences.
    pub fn general_see(poly: &Polyhedron, epsilon: f64, start_cycle: u64) -> Result<Self, PolicyError> {
        check_positive("epsilon", epsilon)?;
        Self::build(
            "GeneralSEE",
            poly,
            Schedule::SuperExponential { epsilon },
            ExplorationMode::Anchored,
            false,
            start_cycle,
        )
    }

    pub fn general_see2(poly: &Polyhedron, start_cycle: u64) -> Result<Self, PolicyError> {
        Self::build("GeneralSEE2", poly, Schedule::Doubling, ExplorationMode::Anchored, false, start_cycle)
    }

    /// SEE2 whose exploration anchor follows the last greedy vertex,
    /// shifted inward by `lambda ∈ (0,1]` towards the interior anchor.
    pub fn improved_see2(poly: &Polyhedron, lambda: f64, start_cycle: u64) -> Result<Self, PolicyError> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(PolicyError::InvalidParameter(format!("lambda must lie in (0,1], got {lambda}")));
        }
        Self::build("Improved-SEE2", poly, Schedule::Doubling, ExplorationMode::Shifting { lambda }, false, start_cycle)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_block_cap(mut self, cap: u64) -> Self {
        self.block_cap = cap.max(1);
        self
    }

    pub fn state(&self) -> &PolicyState {
        &self.state
    }

    pub fn history(&self) -> &[CycleRecord] {
        &self.history
    }

    fn anchored(&self) -> bool {
        !matches!(self.mode, ExplorationMode::Origin)
    }

    fn num_slots(&self) -> usize {
        self.state.basis.dim() + usize::from(self.anchored())
    }

    fn plays_per_arm(&self) -> u64 {
        if self.once_per_cycle {
            1
        } else {
            2 * self.state.cycle + 1
        }
    }

    fn slot_arm(&self, slot: usize) -> Vec<f64> {
        if self.anchored() {
            if slot == 0 {
                self.state.basis.anchor.clone()
            } else {
                self.state.basis.arms[slot - 1].clone()
            }
        } else {
            self.state.basis.arms[slot].clone()
        }
    }

    fn estimate_theta(&mut self) -> Result<Vec<f64>, PolicyError> {
        let st = &self.state;
        Ok(match self.mode {
            ExplorationMode::Origin => st.estimate.estimate_origin(&st.basis)?,
            ExplorationMode::Anchored => st.estimate.estimate_difference(&st.basis)?,
            ExplorationMode::Shifting { .. } => {
                let cycle_est = st.estimate.estimate_difference(&st.basis)?;
                for (n, d) in cycle_est.iter().enumerate() {
                    let w = st.estimate.counts[n].min(st.estimate.anchor_count) as f64;
                    self.pooled_sum[n] += w * d;
                    self.pooled_weight[n] += w;
                }
                self.pooled_sum.iter().zip(&self.pooled_weight).map(|(s, w)| s / w).collect()
            }
        })
    }

    /// End of an exploration interval: estimate, pick the greedy arm and
    /// fix the exploitation length.
    fn commit(&mut self) -> Result<u64, PolicyError> {
        let theta_hat = self.estimate_theta()?;
        let sol = lp::maximize(&LpProblem::new(theta_hat.clone(), &self.poly))?;
        if !sol.is_optimal() {
            return Err(PolicyError::GreedyFailed);
        }
        let greedy = sol.point;
        let c = self.state.cycle as f64;
        let (len, delta_hat, kappa) = match self.schedule {
            Schedule::SuperExponential { epsilon } => (pow2_block(c * c / (1.0 + epsilon), self.block_cap), None, None),
            Schedule::Doubling => (pow2_block(c, self.block_cap), None, None),
            Schedule::Adaptive { a_const } => {
                let vs = self.vertices.as_ref().expect("adaptive schedule enumerates vertices");
                let here = vs.position(&greedy);
                let second = vs.best_value_excluding(&theta_hat, here).map_or(f64::NEG_INFINITY, |(_, v)| v);
                let delta_hat = dot(&theta_hat, &greedy) - second;
                let kappa = a_const * delta_hat / 2.0;
                let len = if delta_hat > 0.0 { pow2_block(kappa * c, self.block_cap) } else { 1 };
                (len, Some(delta_hat), Some(kappa))
            }
        };
        self.plays_per_arm_total += self.plays_per_arm();
        self.history.push(CycleRecord {
            cycle: self.state.cycle,
            theta_hat,
            greedy_arm: greedy.clone(),
            delta_hat,
            kappa,
            exploit_length: len,
            exploration_plays_per_arm: self.plays_per_arm_total,
            anchor: self.state.basis.anchor.clone(),
        });
        self.state.greedy_arm = Some(greedy);
        self.state.delta_hat = delta_hat;
        self.state.kappa = kappa;
        Ok(len)
    }

    fn start_next_cycle(&mut self) {
        self.state.cycle += 1;
        self.state.phase = Phase::Explore;
        self.state.phase_position = 0;
        if let ExplorationMode::Shifting { lambda } = self.mode {
            let greedy = self.state.greedy_arm.as_ref().expect("a cycle has completed");
            let anchor: Vec<f64> =
                greedy.iter().zip(&self.base_basis.anchor).map(|(g, a)| g + lambda * (a - g)).collect();
            self.state.basis = ExplorationBasis::at_anchor(&self.poly, anchor, true)
                .unwrap_or_else(|_| self.base_basis.clone());
            self.state.estimate = ParameterEstimate::new(self.poly.dim());
        }
    }
}

impl Policy for PhasedPolicy {
    fn name(&self) -> &str {
        &self.name
    }

    fn next_decision(&mut self) -> Result<Decision, PolicyError> {
        if self.pending_slot.is_some() {
            return Err(PolicyError::MissingFeedback);
        }
        if self.state.phase == Phase::Exploit {
            self.start_next_cycle();
        }
        let slot = self.state.phase_position;
        if slot < self.num_slots() {
            self.state.phase_position += 1;
            self.pending_slot = Some(slot);
            return Ok(Decision {
                arm: self.slot_arm(slot),
                phase: Phase::Explore,
                block_length: self.plays_per_arm(),
                uses_reward: true,
            });
        }
        let len = self.commit()?;
        self.state.phase = Phase::Exploit;
        Ok(Decision {
            arm: self.state.greedy_arm.clone().expect("set by commit"),
            phase: Phase::Exploit,
            block_length: len,
            uses_reward: false,
        })
    }

    fn observe(&mut self, feedback: &Feedback) -> Result<(), PolicyError> {
        let slot = self.pending_slot.take().ok_or(PolicyError::UnexpectedFeedback)?;
        if self.anchored() {
            if slot == 0 {
                self.state.estimate.update_anchor(feedback.reward_sum, feedback.plays);
            } else {
                self.state.estimate.update_axis_block(slot - 1, feedback.reward_sum, feedback.plays)?;
            }
        } else {
            self.state.estimate.update_axis_block(slot, feedback.reward_sum, feedback.plays)?;
        }
        Ok(())
    }

    fn cycle_log(&self) -> &[CycleRecord] {
        &self.history
    }
}
