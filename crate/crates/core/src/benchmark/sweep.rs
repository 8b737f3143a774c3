use rayon::prelude::*;

use super::config::{ExperimentConfig, PlannerKind};
use super::episode::{run_episode, EpisodeRecord};
use super::metrics::{compute_report, MetricsReport};
use super::scenario::generate_scenario;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SweepResult {
    /// Ordered by planner, beta, trial.
    pub records: Vec<EpisodeRecord>,
    pub reports: Vec<MetricsReport>,
}

/// Trial instance with recovery: scenario generation failures surface as errors.
fn cell_records(cfg: &ExperimentConfig, planner: PlannerKind, beta: f64, trials: &[u64], jobs: usize) -> Result<Vec<EpisodeRecord>> {
    let run = |&trial: &u64| -> Result<EpisodeRecord> {
        let instance = generate_scenario(cfg, trial)?;
        run_episode(&instance, planner, beta, cfg)
    };
    if jobs <= 1 {
        trials.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| trials.par_iter().map(run).collect())
    }
}

/// Runs every `(planner, beta)` cell on the same trials and reports per cell.
pub fn run_sweep(cfg: &ExperimentConfig, betas: &[f64], planners: &[PlannerKind], jobs: usize) -> Result<SweepResult> {
    cfg.validate()?;
    let trials: Vec<u64> = (0..cfg.scenario.trials as u64).collect();
    let mut records = Vec::new();
    let mut reports = Vec::new();
    for &planner in planners {
        for &beta in betas {
            let cell = cell_records(cfg, planner, beta, &trials, jobs)?;
            reports.push(compute_report(planner.name(), beta, &cell, cfg.planner.tau_a, cfg.scenario.max_time)?);
            records.extend(cell);
        }
    }
    Ok(SweepResult { records, reports })
}

/// Reports of every cell present in `records`, in first-seen order.
pub fn reports_from_records(records: &[EpisodeRecord], tau_a: f64, t_max: f64) -> Result<Vec<MetricsReport>> {
    if records.is_empty() {
        return Err(Error::Contract("no episodes".into()));
    }
    let mut cells: Vec<(PlannerKind, f64)> = Vec::new();
    for r in records {
        if !cells.iter().any(|&(p, b)| p == r.planner && b == r.beta) {
            cells.push((r.planner, r.beta));
        }
    }
    cells
        .into_iter()
        .map(|(p, b)| {
            let cell: Vec<EpisodeRecord> = records.iter().filter(|r| r.planner == p && r.beta == b).cloned().collect();
            compute_report(p.name(), b, &cell, tau_a, t_max)
        })
        .collect()
}
