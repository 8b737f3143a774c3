use std::fs;
use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};

use rcrsbg::benchmark::output::{write_diagnostics, write_episodes, write_metrics};
use rcrsbg::benchmark::{generate_scenario, reports_from_records, run_episode, run_sweep, EpisodeRecord, ExecuteMode, ExperimentConfig, MetricsReport, PlannerKind};

use crate::error::CliError;
use crate::manifest::{sha256_hex, RunManifest, CONFIG_FILE};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: Option<PathBuf>,
    pub planners: Vec<String>,
    pub betas: Vec<f64>,
    pub trials: Option<usize>,
    /// Run only this trial id instead of `0..trials`.
    pub trial: Option<u64>,
    pub seed: Option<u64>,
    pub iterations: Option<usize>,
    pub jobs: usize,
    pub execute_mode: Option<ExecuteMode>,
    /// Results directory; a fresh `<results_root>/<run-id>` when absent.
    pub out: Option<PathBuf>,
    pub results_root: PathBuf,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub dir: PathBuf,
    pub manifest: RunManifest,
    pub reports: Vec<MetricsReport>,
}

pub fn load_config(path: Option<&Path>) -> Result<ExperimentConfig, CliError> {
    match path {
        None => Ok(ExperimentConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
            ExperimentConfig::from_toml(&text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
    }
}

/// Config with the command-line overrides applied and validated.
pub fn effective_config(opts: &RunOptions) -> Result<ExperimentConfig, CliError> {
    let mut cfg = load_config(opts.config.as_deref())?;
    if !opts.planners.is_empty() {
        cfg.sweep.planners = opts.planners.iter().map(|p| p.parse::<PlannerKind>()).collect::<Result<_, _>>()?;
    }
    if !opts.betas.is_empty() {
        cfg.sweep.betas = opts.betas.clone();
    }
    if let Some(t) = opts.trials {
        cfg.scenario.trials = t;
    }
    if let Some(s) = opts.seed {
        cfg.scenario.seed = s;
    }
    if let Some(i) = opts.iterations {
        cfg.planner.iterations = i;
    }
    if let Some(m) = opts.execute_mode {
        cfg.execute = m;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn fresh_dir(root: &Path, base: &str) -> PathBuf {
    let mut dir = root.join(base);
    let mut n = 2;
    while dir.exists() {
        dir = root.join(format!("{base}-{n}"));
        n += 1;
    }
    dir
}

fn single_trial(cfg: &ExperimentConfig, trial: u64) -> Result<Vec<EpisodeRecord>, CliError> {
    let instance = generate_scenario(cfg, trial)?;
    let mut out = Vec::new();
    for &planner in &cfg.sweep.planners {
        for &beta in &cfg.sweep.betas {
            out.push(run_episode(&instance, planner, beta, cfg)?);
        }
    }
    Ok(out)
}

pub fn cmd_run(opts: &RunOptions) -> Result<RunSummary, CliError> {
    let cfg = effective_config(opts)?;
    let config_text = cfg.to_toml();
    let config_hash = sha256_hex(config_text.as_bytes());
    let started = Utc::now();

    let (records, trials) = match opts.trial {
        Some(t) => (single_trial(&cfg, t)?, vec![t]),
        None => {
            let res = run_sweep(&cfg, &cfg.sweep.betas, &cfg.sweep.planners, opts.jobs.max(1))?;
            (res.records, (0..cfg.scenario.trials as u64).collect())
        }
    };
    let reports = reports_from_records(&records, cfg.planner.tau_a, cfg.scenario.max_time)?;

    let run_id = format!("{}-{}", started.format("%Y%m%dT%H%M%SZ"), &config_hash[..8]);
    let dir = match &opts.out {
        Some(d) => d.clone(),
        None => fresh_dir(&opts.results_root, &run_id),
    };
    fs::create_dir_all(&dir)?;
    fs::write(dir.join(CONFIG_FILE), &config_text)?;
    write_episodes(&dir.join("episodes.csv"), &records, cfg.planner.tau_a)?;
    write_metrics(&dir.join("metrics.csv"), &reports)?;
    write_diagnostics(&dir.join("diagnostics"), &records)?;
    let manifest = RunManifest {
        run_id: dir.file_name().map_or(run_id.clone(), |n| n.to_string_lossy().into_owned()),
        config_hash,
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        started_at: started.to_rfc3339_opts(SecondsFormat::Secs, true),
        finished_at: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
        seed: cfg.scenario.seed,
        planners: cfg.sweep.planners.iter().map(|p| p.to_string()).collect(),
        betas: cfg.sweep.betas.clone(),
        trials,
    };
    manifest.write(&dir)?;
    Ok(RunSummary { dir, manifest, reports })
}
