use super::HarnessError;
use crate::env::{uniform01_theta, NoiseModel};
use crate::policies::{ExtremalUcb, OptimisticLinear, PhasedPolicy, Policy};
use crate::polytope::{Polyhedron, VertexSet};
use crate::rng::{stream, THETA_STREAM};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const DEFAULT_HORIZON: u64 = 200_000;
const CHECKPOINTS_PER_DECADE: f64 = 40.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PolyhedronSource {
    File(PathBuf),
    Hypercube { n: usize },
    Simplex { n: usize },
    Random { n: usize, m: usize, seed: u64 },
}

impl PolyhedronSource {
    pub fn build(&self) -> Result<Polyhedron, HarnessError> {
        Ok(match self {
            Self::File(path) => Polyhedron::load(path)?,
            Self::Hypercube { n } => Polyhedron::hypercube(*n),
            Self::Simplex { n } => Polyhedron::simplex(*n),
            Self::Random { n, m, seed } => Polyhedron::random(*n, *m, *seed)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedTheta {
    #[serde(rename = "uniform01")]
    Uniform01,
}

/// Either a fixed vector or `"uniform01"`, redrawn for every run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaSpec {
    Explicit(Vec<f64>),
    Named(NamedTheta),
}

impl ThetaSpec {
    pub fn for_run(&self, dim: usize, master: u64, run: u64) -> Vec<f64> {
        match self {
            Self::Explicit(v) => v.clone(),
            Self::Named(NamedTheta::Uniform01) => uniform01_theta(dim, &mut stream(master, run, THETA_STREAM)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    See,
    See2,
    Polylin,
    GeneralSee,
    GeneralSee2,
    ImprovedSee2,
    #[serde(alias = "ucb_normal")]
    ExtremalUcb,
    Linucb,
    SelfNormalized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicySpec {
    pub kind: PolicyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default = "default_start_cycle")]
    pub start_cycle: u64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    /// Noise scale the policy assumes; defaults to the environment's.
    #[serde(default, rename = "R", alias = "r", skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
}

fn default_start_cycle() -> u64 {
    5
}

fn default_delta() -> f64 {
    0.001
}

impl PolicySpec {
    pub fn new(kind: PolicyKind) -> Self {
        Self { kind, name: None, epsilon: None, lambda: None, start_cycle: 5, delta: 0.001, r: None }
    }

    pub fn label(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        match self.kind {
            PolicyKind::See => "SEE",
            PolicyKind::See2 => "SEE2",
            PolicyKind::Polylin => "PolyLin",
            PolicyKind::GeneralSee => "GeneralSEE",
            PolicyKind::GeneralSee2 => "GeneralSEE2",
            PolicyKind::ImprovedSee2 => "Improved-SEE2",
            PolicyKind::ExtremalUcb => "UCB-Normal",
            PolicyKind::Linucb => "LinUCB",
            PolicyKind::SelfNormalized => "SelfNormalized",
        }
        .to_string()
    }

    /// `vertices` is only consulted by the vertex-indexed baselines.
    pub fn build(
        &self,
        poly: &Polyhedron,
        vertices: Option<&VertexSet>,
        noise: NoiseModel,
    ) -> Result<Box<dyn Policy>, HarnessError> {
        let eps = self.epsilon.unwrap_or(0.3);
        // A noiseless environment still needs a positive scale for PolyLin's `a`.
        let r = self.r.unwrap_or_else(|| noise.effective_r());
        let positive_r = if r > 0.0 { r } else { 1.0 };
        let start = self.start_cycle;
        let owned;
        let vs = match vertices {
            Some(v) => v,
            None => {
                owned = poly.enumerate_vertices()?;
                &owned
            }
        };
        let p: Box<dyn Policy> = match self.kind {
            PolicyKind::See => Box::new(PhasedPolicy::see(poly, eps, start)?.with_name(self.label())),
            PolicyKind::See2 => Box::new(PhasedPolicy::see2(poly, start)?.with_name(self.label())),
            PolicyKind::Polylin => Box::new(PhasedPolicy::polylin(poly, positive_r, start)?.with_name(self.label())),
            PolicyKind::GeneralSee => Box::new(PhasedPolicy::general_see(poly, eps, start)?.with_name(self.label())),
            PolicyKind::GeneralSee2 => Box::new(PhasedPolicy::general_see2(poly, start)?.with_name(self.label())),
            PolicyKind::ImprovedSee2 => Box::new(
                PhasedPolicy::improved_see2(poly, self.lambda.unwrap_or(0.1), start)?.with_name(self.label()),
            ),
            PolicyKind::ExtremalUcb => {
                Box::new(ExtremalUcb::from_vertices(vs.vertices.clone(), r * r)?.with_name(self.label()))
            }
            PolicyKind::Linucb => {
                Box::new(OptimisticLinear::lin_ucb_on(vs.vertices.clone(), self.delta)?.with_name(self.label()))
            }
            PolicyKind::SelfNormalized => Box::new(
                OptimisticLinear::self_normalized_on(vs.vertices.clone(), r, self.delta)?.with_name(self.label()),
            ),
        };
        Ok(p)
    }

    fn needs_vertices(&self) -> bool {
        matches!(self.kind, PolicyKind::ExtremalUcb | PolicyKind::Linucb | PolicyKind::SelfNormalized)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default = "default_raw")]
    pub raw: PathBuf,
    #[serde(default = "default_summary")]
    pub summary: PathBuf,
}

fn default_raw() -> PathBuf {
    "raw.csv".into()
}

fn default_summary() -> PathBuf {
    "summary.json".into()
}

impl Default for OutputPaths {
    fn default() -> Self {
        Self { raw: default_raw(), summary: default_summary() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub polyhedron: PolyhedronSource,
    pub theta: ThetaSpec,
    #[serde(default = "default_noise")]
    pub noise: NoiseModel,
    pub policies: Vec<PolicySpec>,
    #[serde(default = "default_horizon")]
    pub horizon: u64,
    #[serde(default = "default_runs")]
    pub runs: u64,
    #[serde(default)]
    pub seed: u64,
    /// Defaults to a geometric grid with 40 points per decade.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoints: Option<Vec<u64>>,
    /// Also sample and record realized regret inside exploitation blocks.
    #[serde(default)]
    pub realized: bool,
    #[serde(default)]
    pub lower_bound: bool,
    #[serde(default)]
    pub output: OutputPaths,
}

fn default_noise() -> NoiseModel {
    NoiseModel::gaussian(1.0)
}

fn default_horizon() -> u64 {
    DEFAULT_HORIZON
}

fn default_runs() -> u64 {
    10
}

/// `round(10^{k/40})` for `k = 0, 1, …`, deduplicated, ending exactly at `horizon`.
pub fn default_checkpoints(horizon: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let mut k = 0.0;
    loop {
        let t = 10f64.powf(k / CHECKPOINTS_PER_DECADE).round() as u64;
        if t >= horizon {
            break;
        }
        if out.last() != Some(&t) {
            out.push(t);
        }
        k += 1.0;
    }
    out.push(horizon);
    out
}

impl ExperimentConfig {
    pub fn from_json_str(s: &str) -> Result<Self, HarnessError> {
        Ok(serde_json::from_str(s)?)
    }

    /// Reads a config file; a relative polyhedron path is resolved against
    /// the config file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        let path = path.as_ref();
        let mut cfg = Self::from_json_str(&std::fs::read_to_string(path)?)?;
        if let PolyhedronSource::File(p) = &mut cfg.polyhedron {
            if p.is_relative() {
                if let Some(dir) = path.parent() {
                    *p = dir.join(&*p);
                }
            }
        }
        Ok(cfg)
    }

    pub fn checkpoint_grid(&self) -> Vec<u64> {
        self.checkpoints.clone().unwrap_or_else(|| default_checkpoints(self.horizon))
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.horizon < 1 {
            return bad("horizon must be at least 1".into());
        }
        if self.runs < 1 {
            return bad("runs must be at least 1".into());
        }
        if self.policies.is_empty() {
            return bad("no policies configured".into());
        }
        let grid = self.checkpoint_grid();
        if grid.is_empty() {
            return bad("checkpoint grid is empty".into());
        }
        if grid[0] < 1 || grid.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("checkpoint grid must be strictly increasing positive integers, got {grid:?}"));
        }
        if *grid.last().unwrap() > self.horizon {
            return bad(format!("last checkpoint {} exceeds horizon {}", grid.last().unwrap(), self.horizon));
        }
        let mut labels: Vec<String> = self.policies.iter().map(PolicySpec::label).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return bad(format!("duplicate policy name {:?}; set distinct names", w[0]));
        }
        if self.lower_bound && !matches!(self.theta, ThetaSpec::Explicit(_)) {
            return bad("lower_bound needs an explicit theta".into());
        }
        Ok(())
    }

    pub(crate) fn any_vertex_policy(&self) -> bool {
        self.policies.iter().any(PolicySpec::needs_vertices)
    }

    /// Copy with defaults made explicit, for the summary echo.
    pub fn resolved(&self) -> Self {
        let mut c = self.clone();
        c.checkpoints = Some(self.checkpoint_grid());
        c
    }
}
