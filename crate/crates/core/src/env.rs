//! The simulated bandit: hidden parameter, reward noise, ground truth.

use crate::linalg::{dot, norm_inf};
use crate::lp::{self, LpProblem, LpStatus};
use crate::polytope::{Polyhedron, PolytopeError, DEFAULT_TOL};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Uniform};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("theta has {got} entries, polyhedron dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("theta must lie in [-1,1]^N (sup norm {0}); rescale it by its sup norm")]
    ThetaOutOfRange(f64),
    #[error("arm {0:?} is outside the polyhedron")]
    ArmOutside(Vec<f64>),
    #[error("noise parameter must be positive and finite, got {0}")]
    BadNoise(f64),
    #[error("linear program for {0} did not reach an optimum")]
    Lp(&'static str),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKind {
    Gaussian,
    UniformBounded,
    None,
}

/// Zero-mean, `r`-sub-Gaussian reward noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    #[serde(rename = "R", alias = "r", default = "one")]
    pub r: f64,
}

fn one() -> f64 {
    1.0
}

impl NoiseModel {
    pub fn gaussian(r: f64) -> Self {
        Self { kind: NoiseKind::Gaussian, r }
    }

    pub fn uniform(r: f64) -> Self {
        Self { kind: NoiseKind::UniformBounded, r }
    }

    pub fn none() -> Self {
        Self { kind: NoiseKind::None, r: 0.0 }
    }

    /// Sub-Gaussian scale actually in effect (zero for noiseless rewards).
    pub fn effective_r(&self) -> f64 {
        match self.kind {
            NoiseKind::None => 0.0,
            _ => self.r,
        }
    }

    fn validate(&self) -> Result<(), EnvError> {
        if self.kind != NoiseKind::None && !(self.r > 0.0 && self.r.is_finite()) {
            return Err(EnvError::BadNoise(self.r));
        }
        Ok(())
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self.kind {
            NoiseKind::Gaussian => Normal::new(0.0, self.r).expect("validated").sample(rng),
            NoiseKind::UniformBounded => Uniform::new_inclusive(-self.r, self.r).sample(rng),
            NoiseKind::None => 0.0,
        }
    }
}

/// One bandit instance with its own random stream.
#[derive(Debug, Clone)]
pub struct Environment {
    theta: Vec<f64>,
    poly: Polyhedron,
    noise: NoiseModel,
    rng: ChaCha8Rng,
    optimal_arm: Vec<f64>,
    optimal_value: f64,
    max_reward: f64,
}

impl Environment {
    pub fn new(theta: Vec<f64>, poly: Polyhedron, noise: NoiseModel, rng: ChaCha8Rng) -> Result<Self, EnvError> {
        if theta.len() != poly.dim() {
            return Err(EnvError::DimensionMismatch { expected: poly.dim(), got: theta.len() });
        }
        let sup = norm_inf(&theta);
        if sup > 1.0 + DEFAULT_TOL {
            return Err(EnvError::ThetaOutOfRange(sup));
        }
        noise.validate()?;
        let best = lp::maximize(&LpProblem::new(theta.clone(), &poly)).map_err(PolytopeError::from)?;
        let neg: Vec<f64> = theta.iter().map(|t| -t).collect();
        let worst = lp::maximize(&LpProblem::new(neg, &poly)).map_err(PolytopeError::from)?;
        if best.status != LpStatus::Optimal || worst.status != LpStatus::Optimal {
            return Err(EnvError::Lp("the optimal arm"));
        }
        let max_reward = best.value.abs().max(worst.value.abs());
        Ok(Self {
            optimal_value: best.value,
            optimal_arm: best.point,
            max_reward,
            theta,
            poly,
            noise,
            rng,
        })
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn polyhedron(&self) -> &Polyhedron {
        &self.poly
    }

    pub fn noise(&self) -> NoiseModel {
        self.noise
    }

    pub fn optimal_arm(&self) -> &[f64] {
        &self.optimal_arm
    }

    pub fn optimal_value(&self) -> f64 {
        self.optimal_value
    }

    /// `R_m`: largest absolute expected reward over the arm set.
    pub fn max_reward(&self) -> f64 {
        self.max_reward
    }

    pub fn mean_reward(&self, x: &[f64]) -> f64 {
        dot(&self.theta, x)
    }

    fn check_arm(&self, x: &[f64]) -> Result<(), EnvError> {
        if self.poly.contains(x, DEFAULT_TOL)? {
            Ok(())
        } else {
            Err(EnvError::ArmOutside(x.to_vec()))
        }
    }

    /// Plays `x` once: `θ'x` plus a fresh noise draw.
    pub fn pull(&mut self, x: &[f64]) -> Result<f64, EnvError> {
        self.check_arm(x)?;
        Ok(self.mean_reward(x) + self.noise.sample(&mut self.rng))
    }

    /// Draws `plays` rewards of a single arm, returning `(Σr, Σr²)`.
    pub fn pull_block(&mut self, x: &[f64], plays: u64) -> Result<(f64, f64), EnvError> {
        self.check_arm(x)?;
        let mean = self.mean_reward(x);
        let mut sum = 0.0;
        let mut sq = 0.0;
        for _ in 0..plays {
            let r = mean + self.noise.sample(&mut self.rng);
            sum += r;
            sq += r * r;
        }
        Ok((sum, sq))
    }

    /// Per-step pseudo-regret of `x`: `θ'x* − θ'x`.
    pub fn instantaneous_regret(&self, x: &[f64]) -> Result<f64, EnvError> {
        self.check_arm(x)?;
        Ok(self.optimal_value - self.mean_reward(x))
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Draws `θ` with every coordinate uniform on `[0,1]`.
pub fn uniform01_theta(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand_chacha::rand_core::SeedableRng;

    fn env(theta: Vec<f64>, noise: NoiseModel, seed: u64) -> Environment {
        Environment::new(theta, Polyhedron::hypercube(2), noise, ChaCha8Rng::seed_from_u64(seed)).unwrap()
    }

    #[test]
    fn noiseless_pull_is_exact() {
        let mut e = env(vec![0.5, 0.5], NoiseModel::none(), 0);
        assert_eq!(e.pull(&[1.0, 0.0]).unwrap(), 0.5);
        assert_eq!(e.pull(&[1.0, 1.0]).unwrap(), 1.0);
        assert!(matches!(e.pull(&[2.0, 0.0]), Err(EnvError::ArmOutside(_))));
    }

    #[test]
    fn ground_truth() {
        let e = env(vec![0.3, 0.5], NoiseModel::none(), 0);
        assert_eq!(e.optimal_arm(), &[1.0, 1.0]);
        assert!((e.optimal_value() - 0.8).abs() < 1e-12);
        assert!((e.max_reward() - 0.8).abs() < 1e-12);
        assert_eq!(e.instantaneous_regret(&[1.0, 1.0]).unwrap(), 0.0);
        assert!((e.instantaneous_regret(&[0.0, 1.0]).unwrap() - 0.3).abs() < 1e-12);
        assert!((e.instantaneous_regret(&[0.0, 0.0]).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn theta_outside_unit_box_is_rejected() {
        let r = Environment::new(vec![1.5, 0.0], Polyhedron::hypercube(2), NoiseModel::none(), ChaCha8Rng::seed_from_u64(0));
        assert!(matches!(r, Err(EnvError::ThetaOutOfRange(_))));
        let r = Environment::new(vec![0.5, 0.0], Polyhedron::hypercube(2), NoiseModel::gaussian(0.0), ChaCha8Rng::seed_from_u64(0));
        assert!(matches!(r, Err(EnvError::BadNoise(_))));
    }

    #[test]
    fn gaussian_mean_matches_clt_bound() {
        // Mean of 1e5 pulls within 3/sqrt(1e5) of 1.0 in at least 99 of 100 seeds.
        let mut hits = 0;
        for seed in 0..100 {
            let mut e = env(vec![0.5, 0.5], NoiseModel::gaussian(1.0), seed);
            let (sum, _) = e.pull_block(&[1.0, 1.0], 100_000).unwrap();
            if (sum / 1e5 - 1.0).abs() <= 3.0 / 1e5_f64.sqrt() {
                hits += 1;
            }
        }
        assert!(hits >= 99, "{hits}");
    }

    #[test]
    fn gaussian_and_uniform_variance() {
        for (noise, var) in [(NoiseModel::gaussian(2.0), 4.0), (NoiseModel::uniform(1.0), 1.0 / 3.0)] {
            let mut e = env(vec![0.0, 0.0], noise, 11);
            let (s, q) = e.pull_block(&[0.0, 0.0], 100_000).unwrap();
            let n = 1e5;
            let v = (q - s * s / n) / (n - 1.0);
            assert!(v >= 0.94 * var && v <= 1.06 * var, "{v}");
            if noise.kind == NoiseKind::Gaussian {
                assert!(v <= 1.06 * noise.r * noise.r);
            }
        }
    }

    #[test]
    fn same_seed_same_rewards() {
        let draw = |run| {
            let mut e = Environment::new(
                vec![0.2, 0.4],
                Polyhedron::hypercube(2),
                NoiseModel::gaussian(1.0),
                rng::stream(42, run, rng::NOISE_STREAM),
            )
            .unwrap();
            (0..10).map(|_| e.pull(&[1.0, 0.0]).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(draw(0), draw(0));
        assert_ne!(draw(0), draw(1));
    }
}
