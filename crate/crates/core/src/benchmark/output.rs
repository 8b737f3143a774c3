//! Results directory layout.
//!
//! - `episodes.csv`: `trial,planner,beta,outcome,length,violations,duration,initial_state,scenario_seed,planner_seed,error`
//! - `metrics.csv`: `planner,beta,episodes,excluded,p_suc,p_col,p_max,t_suc,beta_star,t_w`
//! - `diagnostics/<trial>.json`: per-step policies of every episode of the trial

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::PlannerKind;
use super::episode::{EpisodeRecord, EpisodeSeeds, Outcome, StepDiagnostics};
use super::metrics::MetricsReport;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct EpisodeRow {
    trial: u64,
    planner: String,
    beta: f64,
    outcome: String,
    length: u32,
    violations: u32,
    duration: f64,
    initial_state: String,
    scenario_seed: u64,
    planner_seed: u64,
    error: String,
}

pub fn write_episodes(path: &Path, records: &[EpisodeRecord], tau_a: f64) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in records {
        w.serialize(EpisodeRow {
            trial: r.trial,
            planner: r.planner.to_string(),
            beta: r.beta,
            outcome: r.outcome.to_string(),
            length: r.length,
            violations: r.violations,
            duration: r.length as f64 * tau_a,
            initial_state: format!("{:016x}", r.initial_fingerprint),
            scenario_seed: r.seeds.scenario,
            planner_seed: r.seeds.planner,
            error: r.error.clone().unwrap_or_default(),
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Episode records as far as the CSV carries them (no traces or diagnostics).
pub fn read_episodes(path: &Path) -> Result<Vec<EpisodeRecord>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for (i, row) in r.deserialize::<EpisodeRow>().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Parse(format!("{}: row {line}: {e}", path.display())))?;
        let bad = |m: String| Error::Parse(format!("{}: row {line}: {m}", path.display()));
        let planner: PlannerKind = row.planner.parse().map_err(|e: Error| bad(e.to_string()))?;
        let outcome: Outcome = row.outcome.parse().map_err(|e: Error| bad(e.to_string()))?;
        if row.violations > row.length {
            return Err(bad("violations exceed length".into()));
        }
        let fingerprint = u64::from_str_radix(&row.initial_state, 16).map_err(|e| bad(format!("initial_state: {e}")))?;
        out.push(EpisodeRecord {
            trial: row.trial,
            planner,
            beta: row.beta,
            outcome,
            length: row.length,
            violations: row.violations,
            envelope_trace: Vec::new(),
            diagnostics: Vec::new(),
            seeds: EpisodeSeeds { scenario: row.scenario_seed, planner: row.planner_seed, execute: 0, belief: 0 },
            initial_fingerprint: fingerprint,
            error: (!row.error.is_empty()).then_some(row.error),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct MetricsRow {
    planner: String,
    beta: f64,
    episodes: usize,
    excluded: usize,
    p_suc: f64,
    p_col: f64,
    p_max: f64,
    t_suc: Option<f64>,
    beta_star: f64,
    t_w: Option<f64>,
}

pub fn write_metrics(path: &Path, reports: &[MetricsReport]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for m in reports {
        w.serialize(MetricsRow {
            planner: m.planner.clone(),
            beta: m.beta,
            episodes: m.episodes,
            excluded: m.excluded,
            p_suc: m.p_suc,
            p_col: m.p_col,
            p_max: m.p_max,
            t_suc: m.t_suc,
            beta_star: m.beta_star,
            t_w: m.t_w,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_metrics(path: &Path) -> Result<Vec<MetricsReport>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize::<MetricsRow>()
        .enumerate()
        .map(|(i, row)| {
            let m = row.map_err(|e| Error::Parse(format!("{}: row {}: {e}", path.display(), i + 2)))?;
            Ok(MetricsReport {
                planner: m.planner,
                beta: m.beta,
                episodes: m.episodes,
                excluded: m.excluded,
                p_suc: m.p_suc,
                p_col: m.p_col,
                p_max: m.p_max,
                t_suc: m.t_suc,
                beta_star: m.beta_star,
                t_w: m.t_w,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeDiagnostics {
    pub planner: PlannerKind,
    pub beta: f64,
    pub outcome: Outcome,
    pub envelope_trace: Vec<bool>,
    pub steps: Vec<StepDiagnostics>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialDiagnostics {
    pub schema_version: u32,
    pub trial: u64,
    pub episodes: Vec<EpisodeDiagnostics>,
}

/// Writes one `diagnostics/<trial>.json` per trial.
pub fn write_diagnostics(dir: &Path, records: &[EpisodeRecord]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut by_trial: BTreeMap<u64, Vec<EpisodeDiagnostics>> = BTreeMap::new();
    for r in records {
        by_trial.entry(r.trial).or_default().push(EpisodeDiagnostics {
            planner: r.planner,
            beta: r.beta,
            outcome: r.outcome,
            envelope_trace: r.envelope_trace.clone(),
            steps: r.diagnostics.clone(),
        });
    }
    for (trial, episodes) in by_trial {
        let doc = TrialDiagnostics { schema_version: crate::planner::DIAGNOSTICS_SCHEMA, trial, episodes };
        fs::write(dir.join(format!("{trial}.json")), serde_json::to_string(&doc)?)?;
    }
    Ok(())
}
