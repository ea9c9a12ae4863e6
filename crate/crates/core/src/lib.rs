//! Stochastic linear bandits over bounded polyhedral arm sets.
//!
//! Arms are the points of `{x : Ax ≤ b}`; pulling `x` yields `θ'x` plus
//! sub-Gaussian noise. The crate provides the polyhedral geometry and the LP
//! solver the policies depend on, the explore/exploit policies
//! ([`PhasedPolicy`]) together with the baselines they are compared against,
//! and a seeded experiment harness that records cumulative regret.
//!
//! ```
//! use polybandit::{Environment, NoiseModel, PhasedPolicy, Polyhedron, run_policy};
//!
//! let square = Polyhedron::hypercube(2);
//! let mut env = Environment::new(vec![0.3, 0.5], square.clone(), NoiseModel::none(), polybandit::rng::stream(7, 0, 1)).unwrap();
//! let mut see = PhasedPolicy::see(&square, 0.3, 0).unwrap();
//! let trace = run_policy(&mut see, &mut env, 1000, &[10, 100, 1000], false, |_| {}).unwrap();
//! assert_eq!(trace.len(), 3);
//! ```

pub mod env;
pub mod estimators;
pub mod harness;
pub(crate) mod linalg;
pub mod lp;
pub mod policies;
pub mod polytope;
pub mod rng;

pub use env::{EnvError, Environment, NoiseKind, NoiseModel};
pub use estimators::{estimate_linear_system, EstimatorError, ParameterEstimate};
pub use harness::{
    lower_bound_curve, run_experiment, run_policy, summarize, ExperimentConfig, HarnessError, PolicyKind, PolicySpec,
    RegretPoint, RegretTrace, Summary,
};
pub use lp::{maximize, LpError, LpProblem, LpSolution, LpStatus};
pub use policies::{
    CycleRecord, Decision, ExplorationMode, ExtremalUcb, Feedback, OptimisticLinear, Phase, PhasedPolicy, Policy,
    PolicyError, PolicyState, RadiusRule, Schedule,
};
pub use polytope::{ExplorationBasis, Gap, InteriorAnchor, Polyhedron, PolytopeError, VertexSet};
