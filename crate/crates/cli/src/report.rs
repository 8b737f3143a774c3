use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use rcrsbg::benchmark::output::{read_episodes, write_metrics};
use rcrsbg::benchmark::{reports_from_records, ExperimentConfig, MetricsReport};

use crate::error::CliError;
use crate::manifest::CONFIG_FILE;
use crate::svg::{line_chart, stacked_bars, Series};

#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    pub dir: PathBuf,
    pub svg: bool,
    /// Step length and scenario time limit; read from the stored config when absent.
    pub tau_a: Option<f64>,
    pub max_time: Option<f64>,
}

#[derive(Serialize)]
struct CurveRow<'a> {
    series: &'a str,
    beta: f64,
    value: Option<f64>,
}

#[derive(Serialize)]
struct OutcomeRow<'a> {
    planner: &'a str,
    beta: f64,
    p_suc: f64,
    p_col: f64,
    p_max: f64,
}

fn timing(opts: &ReportOptions) -> Result<(f64, f64), CliError> {
    let stored = opts.dir.join(CONFIG_FILE);
    let defaults = if stored.exists() {
        let text = fs::read_to_string(&stored)?;
        ExperimentConfig::from_toml(&text).map_err(|e| CliError::Runtime(format!("{}: {e}", stored.display())))?
    } else {
        ExperimentConfig::default()
    };
    Ok((opts.tau_a.unwrap_or(defaults.planner.tau_a), opts.max_time.unwrap_or(defaults.scenario.max_time)))
}

fn planners(reports: &[MetricsReport]) -> Vec<&str> {
    let mut out: Vec<&str> = Vec::new();
    for r in reports {
        if !out.contains(&r.planner.as_str()) {
            out.push(&r.planner);
        }
    }
    out
}

fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Plot data of the observed-risk, waiting-time and outcome figures.
fn write_plots(dir: &Path, reports: &[MetricsReport], svg: bool) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let names = planners(reports);
    let mut betas: Vec<f64> = reports.iter().map(|r| r.beta).collect();
    betas.sort_by(f64::total_cmp);
    betas.dedup();
    let mut diagonal = vec![0.0];
    diagonal.extend(betas.iter().copied().filter(|&b| b > 0.0 && b < 1.0));
    diagonal.push(1.0);

    let mut risk_rows: Vec<CurveRow> = diagonal.iter().map(|&b| CurveRow { series: "beta = beta*", beta: b, value: Some(b) }).collect();
    let mut wait_rows = Vec::new();
    let mut outcome_rows = Vec::new();
    for r in reports {
        risk_rows.push(CurveRow { series: &r.planner, beta: r.beta, value: Some(r.beta_star) });
        wait_rows.push(CurveRow { series: &r.planner, beta: r.beta, value: r.t_w });
        outcome_rows.push(OutcomeRow { planner: &r.planner, beta: r.beta, p_suc: r.p_suc, p_col: r.p_col, p_max: r.p_max });
    }
    write_rows(&dir.join("beta_star.csv"), &risk_rows)?;
    write_rows(&dir.join("waiting_time.csv"), &wait_rows)?;
    write_rows(&dir.join("outcomes.csv"), &outcome_rows)?;
    if !svg {
        return Ok(());
    }

    let curve = |pick: &dyn Fn(&MetricsReport) -> Option<f64>| -> Vec<Series> {
        names
            .iter()
            .map(|&n| {
                let mut points: Vec<(f64, f64)> =
                    reports.iter().filter(|r| r.planner == n).filter_map(|r| pick(r).map(|v| (r.beta, v))).collect();
                points.sort_by(|a, b| a.0.total_cmp(&b.0));
                Series { name: n.to_string(), points, dashed: false }
            })
            .collect()
    };
    let mut risk = vec![Series { name: "beta = beta*".into(), points: diagonal.iter().map(|&b| (b, b)).collect(), dashed: true }];
    risk.extend(curve(&|r| Some(r.beta_star)));
    fs::write(dir.join("beta_star.svg"), line_chart("Observed envelope violation risk", "beta", "beta*", &risk))?;
    fs::write(dir.join("waiting_time.svg"), line_chart("Expected scenario waiting time", "beta", "t_w [s]", &curve(&|r| r.t_w)))?;
    let bars: Vec<(String, Vec<f64>)> =
        reports.iter().map(|r| (format!("{} {}", r.planner, r.beta), vec![r.p_suc, r.p_col, r.p_max])).collect();
    fs::write(dir.join("outcomes.svg"), stacked_bars("Episode outcomes", "fraction", &["success", "collision", "max time"], &bars))?;
    Ok(())
}

/// Recomputes `metrics.csv` and the plot data from `episodes.csv` of a results directory.
pub fn cmd_report(opts: &ReportOptions) -> Result<Vec<MetricsReport>, CliError> {
    let episodes = opts.dir.join("episodes.csv");
    if !episodes.exists() {
        return Err(CliError::Runtime(format!("{} not found", episodes.display())));
    }
    let records = read_episodes(&episodes)?;
    if records.is_empty() {
        return Err(CliError::Runtime(format!("{}: no episodes", episodes.display())));
    }
    let (tau_a, max_time) = timing(opts)?;
    let reports = reports_from_records(&records, tau_a, max_time)?;
    write_metrics(&opts.dir.join("metrics.csv"), &reports)?;
    write_plots(&opts.dir.join("plots"), &reports, opts.svg)?;
    Ok(reports)
}

pub fn format_reports(reports: &[MetricsReport]) -> String {
    let mut out = format!(
        "{:<16} {:>5} {:>5} {:>6} {:>6} {:>6} {:>7} {:>7} {:>8}\n",
        "planner", "beta", "n", "P_suc", "P_col", "P_max", "T_suc", "beta*", "t_w"
    );
    let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.2}"));
    for r in reports {
        out.push_str(&format!(
            "{:<16} {:>5.2} {:>5} {:>6.2} {:>6.2} {:>6.2} {:>7} {:>7.3} {:>8}\n",
            r.planner,
            r.beta,
            r.episodes - r.excluded,
            r.p_suc,
            r.p_col,
            r.p_max,
            opt(r.t_suc),
            r.beta_star,
            opt(r.t_w)
        ));
        if r.excluded > 0 {
            out.push_str(&format!("  {} episode(s) excluded after planner errors\n", r.excluded));
        }
    }
    out
}
