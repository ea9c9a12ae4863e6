use super::{ExperimentConfig, HarnessError, RegretTrace};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Mean and sample standard deviation of cumulative pseudo-regret across
/// runs, per checkpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicySummary {
    pub policy: String,
    pub runs: usize,
    pub t: Vec<u64>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realized_mean: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundCurve {
    pub t: Vec<u64>,
    pub value: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub config: ExperimentConfig,
    pub policies: Vec<PolicySummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<LowerBoundCurve>,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Groups traces by policy name (in order of first appearance).
pub fn summarize(traces: &[RegretTrace]) -> Result<Vec<PolicySummary>, HarnessError> {
    let mut names: Vec<&str> = Vec::new();
    for tr in traces {
        if !names.contains(&tr.policy.as_str()) {
            names.push(&tr.policy);
        }
    }
    names
        .into_iter()
        .map(|name| {
            let group: Vec<&RegretTrace> = traces.iter().filter(|t| t.policy == name).collect();
            let t: Vec<u64> = group[0].checkpoints.iter().map(|p| p.t).collect();
            if group.iter().any(|g| g.checkpoints.len() != t.len() || g.checkpoints.iter().zip(&t).any(|(p, &s)| p.t != s))
            {
                return Err(HarnessError::Config(format!("traces of {name} use different checkpoint grids")));
            }
            let column = |k: usize| -> Vec<f64> { group.iter().map(|g| g.checkpoints[k].pseudo).collect() };
            let (mean, std) = (0..t.len()).map(|k| mean_std(&column(k))).unzip();
            let realized_mean = group.iter().all(|g| g.checkpoints.iter().all(|p| p.realized.is_some())).then(|| {
                (0..t.len())
                    .map(|k| group.iter().map(|g| g.checkpoints[k].realized.unwrap()).sum::<f64>() / group.len() as f64)
                    .collect()
            });
            Ok(PolicySummary { policy: name.to_string(), runs: group.len(), t, mean, std, realized_mean })
        })
        .collect()
}

#[derive(Serialize)]
struct RawRow<'a> {
    policy: &'a str,
    run: u64,
    t: u64,
    pseudo_regret: f64,
    realized_regret: Option<f64>,
}

/// One row per (policy, run, checkpoint); `realized_regret` is empty when
/// it was not recorded.
pub fn write_raw_csv(path: impl AsRef<Path>, traces: &[RegretTrace]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path)?;
    for tr in traces {
        for p in &tr.checkpoints {
            w.serialize(RawRow {
                policy: &tr.policy,
                run: tr.run,
                t: p.t,
                pseudo_regret: p.pseudo,
                realized_regret: p.realized,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_json(path: impl AsRef<Path>, summary: &Summary) -> Result<(), HarnessError> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, summary)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}
