use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use polybandit::harness::{write_raw_csv, write_summary_json, LowerBoundCurve, Summary, ThetaSpec};
use polybandit::polytope::DEFAULT_TOL;
use polybandit::{lower_bound_curve, run_experiment, summarize, ExperimentConfig, Polyhedron};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "polybandit", version, about = "Linear bandit experiments over polyhedral arm sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write raw.csv and summary.json.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the master seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Print the Gaussian-KL regret lower bound at the given horizons.
    LowerBound {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        theta: Vec<f64>,
        #[arg(long = "R")]
        r: f64,
        #[arg(long = "T", value_delimiter = ',', num_args = 1.., required = true)]
        t: Vec<u64>,
    },
    /// Check a polyhedron file (or, with --config, an experiment config).
    Validate {
        path: PathBuf,
        #[arg(long)]
        config: bool,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = dispatch(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, out, seed, parallel } => run(config, out, seed, parallel),
        Command::LowerBound { theta, r, t } => {
            let values = lower_bound_curve(&theta, r, &t)?;
            for (t, v) in t.iter().zip(values) {
                println!("{t}\t{v}");
            }
            Ok(())
        }
        Command::Validate { path, config } => {
            if config {
                validate_config(path)
            } else {
                validate_polyhedron(path)
            }
        }
    }
}

fn run(config_path: PathBuf, out: PathBuf, seed: Option<u64>, parallel: usize) -> Result<()> {
    let mut cfg =
        ExperimentConfig::load(&config_path).with_context(|| format!("reading config {}", config_path.display()))?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;

    let started = Instant::now();
    let traces = run_experiment(&cfg, parallel)?;
    log::info!("{} traces in {:.1}s", traces.len(), started.elapsed().as_secs_f64());

    let lower_bound = if cfg.lower_bound {
        let ThetaSpec::Explicit(theta) = &cfg.theta else { bail!("lower_bound needs an explicit theta") };
        let t = cfg.checkpoint_grid();
        let value = lower_bound_curve(theta, cfg.noise.effective_r(), &t)?;
        Some(LowerBoundCurve { t, value })
    } else {
        None
    };
    let summary = Summary { config: cfg.resolved(), policies: summarize(&traces)?, lower_bound };

    let raw_path = out.join(&cfg.output.raw);
    let summary_path = out.join(&cfg.output.summary);
    write_raw_csv(&raw_path, &traces).with_context(|| format!("writing {}", raw_path.display()))?;
    write_summary_json(&summary_path, &summary).with_context(|| format!("writing {}", summary_path.display()))?;

    for p in &summary.policies {
        let last = p.t.len() - 1;
        println!("{:<16} T={:<10} regret {:.2} ± {:.2} ({} runs)", p.policy, p.t[last], p.mean[last], p.std[last], p.runs);
    }
    println!("wrote {} and {}", raw_path.display(), summary_path.display());
    Ok(())
}

fn validate_polyhedron(path: PathBuf) -> Result<()> {
    let poly = Polyhedron::load(&path).with_context(|| format!("{} is not a valid polyhedron", path.display()))?;
    println!("ok: N={} M={}, bounded", poly.dim(), poly.num_constraints());
    match poly.exploration_basis(true) {
        Ok(b) => println!("origin basis reaches: {:?}", b.reaches),
        Err(e) => println!("origin basis unavailable ({e}); general variants required"),
    }
    let anchor = poly.interior_anchor(DEFAULT_TOL)?;
    println!("interior anchor {:?}, min reach {:.6}", anchor.point, anchor.alpha);
    match poly.enumerate_vertices() {
        Ok(v) => println!("{} vertices", v.len()),
        Err(e) => println!("vertex enumeration skipped: {e}"),
    }
    Ok(())
}

fn validate_config(path: PathBuf) -> Result<()> {
    let cfg = ExperimentConfig::load(&path).with_context(|| format!("reading config {}", path.display()))?;
    cfg.validate()?;
    let poly = cfg.polyhedron.build()?;
    println!(
        "ok: N={} M={}, {} policies, T={}, {} runs",
        poly.dim(),
        poly.num_constraints(),
        cfg.policies.len(),
        cfg.horizon,
        cfg.runs
    );
    Ok(())
}
