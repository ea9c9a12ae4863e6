use super::{ExperimentConfig, HarnessError};
use crate::env::Environment;
use crate::policies::{Feedback, Phase, Policy};
use crate::polytope::DEFAULT_TOL;
use crate::rng::{stream, NOISE_STREAM};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegretPoint {
    pub t: u64,
    pub pseudo: f64,
    pub realized: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegretTrace {
    pub run: u64,
    pub policy: String,
    pub checkpoints: Vec<RegretPoint>,
}

impl RegretTrace {
    pub fn final_pseudo(&self) -> f64 {
        self.checkpoints.last().map_or(0.0, |p| p.pseudo)
    }
}

/// One executed block, reported to the `on_block` observer of [`run_policy`].
#[derive(Debug, Clone, Copy)]
pub struct BlockEvent<'a> {
    /// Steps completed before this block.
    pub start: u64,
    /// Plays actually executed (the last block may be cut by the horizon).
    pub plays: u64,
    pub arm: &'a [f64],
    pub phase: Phase,
    pub gap: f64,
}

/// Pseudo-regret as `Σ count_g · g` over distinct per-step gaps `g`, so the
/// block-wise total does not depend on how plays were grouped into blocks.
#[derive(Default)]
struct GapLedger {
    counts: BTreeMap<u64, u64>,
}

impl GapLedger {
    fn add(&mut self, gap: f64, plays: u64) {
        if gap > 0.0 && plays > 0 {
            *self.counts.entry(gap.to_bits()).or_insert(0) += plays;
        }
    }

    fn total(&self) -> f64 {
        self.counts.iter().map(|(&g, &c)| c as f64 * f64::from_bits(g)).sum()
    }
}

/// Drives `policy` against `env` for `horizon` steps and records cumulative
/// pseudo-regret (and, if `realized`, realized regret) at each checkpoint.
///
/// Rewards are only sampled for blocks the policy reads, unless realized
/// regret is requested. Checkpoints beyond `horizon` are ignored.
pub fn run_policy(
    policy: &mut dyn Policy,
    env: &mut Environment,
    horizon: u64,
    checkpoints: &[u64],
    realized: bool,
    mut on_block: impl FnMut(&BlockEvent<'_>),
) -> Result<Vec<RegretPoint>, HarnessError> {
    let mut ledger = GapLedger::default();
    let mut reward_total = 0.0;
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next_ck = checkpoints.iter().copied().filter(|&c| c <= horizon).peekable();
    let opt = env.optimal_value();
    let mut t = 0u64;
    while t < horizon {
        let d = policy.next_decision()?;
        if d.block_length == 0 {
            return Err(HarnessError::EmptyBlock);
        }
        let plays = d.block_length.min(horizon - t);
        let gap = env.instantaneous_regret(&d.arm)?.max(0.0);
        let gap = if gap <= DEFAULT_TOL * 1e-3 { 0.0 } else { gap };
        let end = t + plays;

        let mut fb = Feedback { plays, reward_sum: 0.0, reward_sq_sum: 0.0 };
        let sample = d.uses_reward || realized;
        let mut cursor = t;
        while let Some(&ck) = next_ck.peek() {
            if ck > end {
                break;
            }
            let mut point = RegretPoint { t: ck, pseudo: 0.0, realized: None };
            if realized {
                let (s, q) = env.pull_block(&d.arm, ck - cursor)?;
                fb.reward_sum += s;
                fb.reward_sq_sum += q;
                cursor = ck;
                point.realized = Some(ck as f64 * opt - (reward_total + fb.reward_sum));
            }
            let mut partial = GapLedger { counts: ledger.counts.clone() };
            partial.add(gap, ck - t);
            point.pseudo = partial.total();
            out.push(point);
            next_ck.next();
        }
        if sample && cursor < end {
            let (s, q) = env.pull_block(&d.arm, end - cursor)?;
            fb.reward_sum += s;
            fb.reward_sq_sum += q;
        }
        reward_total += fb.reward_sum;
        ledger.add(gap, plays);
        on_block(&BlockEvent { start: t, plays, arm: &d.arm, phase: d.phase, gap });
        if d.uses_reward {
            policy.observe(&fb)?;
        }
        t = end;
    }
    Ok(out)
}

/// Runs every (policy, run) pair of `config`, using up to `parallel` worker
/// threads. Traces come back ordered by policy, then run, whatever the
/// thread count.
pub fn run_experiment(config: &ExperimentConfig, parallel: usize) -> Result<Vec<RegretTrace>, HarnessError> {
    config.validate()?;
    let poly = config.polyhedron.build()?;
    let vertices = poly.enumerate_vertices()?;
    let thetas: Vec<Vec<f64>> = (0..config.runs).map(|r| config.theta.for_run(poly.dim(), config.seed, r)).collect();
    for (run, theta) in thetas.iter().enumerate() {
        if theta.len() != poly.dim() {
            return Err(HarnessError::Config(format!("theta has {} entries, polyhedron dimension is {}", theta.len(), poly.dim())));
        }
        let gap = vertices.gap(theta).map_err(|_| HarnessError::TiedOptimum { run: run as u64, theta: theta.clone(), delta: 0.0 })?;
        if gap.delta <= DEFAULT_TOL {
            return Err(HarnessError::TiedOptimum { run: run as u64, theta: theta.clone(), delta: gap.delta });
        }
    }
    let grid = config.checkpoint_grid();
    let shared_vertices = config.any_vertex_policy().then_some(&vertices);
    let jobs: Vec<(usize, u64)> =
        (0..config.policies.len()).flat_map(|p| (0..config.runs).map(move |r| (p, r))).collect();

    let job = |&(p, run): &(usize, u64)| -> Result<RegretTrace, HarnessError> {
        let spec = &config.policies[p];
        let wrap = |e: HarnessError| HarnessError::Run { policy: spec.label(), run, source: Box::new(e) };
        let mut env = Environment::new(
            thetas[run as usize].clone(),
            poly.clone(),
            config.noise,
            stream(config.seed, run, NOISE_STREAM),
        )
        .map_err(|e| wrap(e.into()))?;
        let mut policy = spec.build(&poly, shared_vertices, config.noise).map_err(wrap)?;
        let checkpoints =
            run_policy(policy.as_mut(), &mut env, config.horizon, &grid, config.realized, |_| {}).map_err(wrap)?;
        log::debug!("{} run {run}: final pseudo-regret {:.3}", spec.label(), checkpoints.last().map_or(0.0, |c| c.pseudo));
        Ok(RegretTrace { run, policy: spec.label(), checkpoints })
    };

    let threads = parallel.max(1);
    if threads == 1 {
        return jobs.iter().map(job).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?;
    pool.install(|| jobs.par_iter().map(job).collect())
}
