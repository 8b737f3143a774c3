use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rcrsbg::benchmark::output::TrialDiagnostics;
use rcrsbg::planner::{StochasticPolicy, DIAGNOSTICS_SCHEMA};

use crate::error::CliError;

#[derive(Debug, Clone, Copy)]
pub struct InspectOptions {
    /// Step of each episode to show; the first planned step when absent.
    pub step: Option<u32>,
    pub all_steps: bool,
    pub eps_col: f64,
}

impl Default for InspectOptions {
    fn default() -> Self {
        Self { step: None, all_steps: false, eps_col: 0.01 }
    }
}

fn check(ok: bool) -> &'static str {
    if ok {
        "OK"
    } else {
        "EXCEEDED"
    }
}

/// Per-action table, expected-risk summary and multiplier trace of one policy.
pub fn policy_table(p: &StochasticPolicy, eps_col: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "planner {}  beta {:.3}  iterations {}", p.planner, p.beta, p.iterations);
    let _ = writeln!(
        out,
        "{:<20} {:>8} {:>7} {:>9} {:>8} {:>8} {:>9} {:>3}",
        "action", "visits", "prob", "Q_R", "rho_env", "rho_col", "Q_lambda", "A*"
    );
    for a in &p.per_action {
        let _ = writeln!(
            out,
            "{:<20} {:>8} {:>7.3} {:>9.4} {:>8.4} {:>8.4} {:>9.4} {:>3}",
            a.label,
            a.visits,
            a.probability,
            a.q_r,
            a.rho_env,
            a.rho_col,
            a.q_lambda,
            if a.in_equal_set { "*" } else { "" }
        );
    }
    let _ = writeln!(out, "rho_env_exp {:.4} <= beta {:.4} {}", p.rho_env_exp, p.beta, check(p.rho_env_exp <= p.beta + 1e-9));
    let _ = writeln!(out, "rho_col_exp {:.4} <= eps_col {:.4} {}", p.rho_col_exp, eps_col, check(p.rho_col_exp <= eps_col + 1e-9));
    let _ = writeln!(out, "expected return {:.4}{}", p.expected_return, if p.fallback { "  (fallback: no feasible mixture)" } else { "" });
    let _ = write!(out, "lambda_env {:.4}  lambda_col {:.4}", p.lambda_env, p.lambda_col);
    if !p.lambda_trace.is_empty() {
        let n = p.lambda_trace.len();
        let picks: Vec<String> = (0..n.min(8))
            .map(|i| if n <= 8 { i } else { i * (n - 1) / 7 })
            .map(|i| format!("{:.3}/{:.3}", p.lambda_trace[i][0], p.lambda_trace[i][1]))
            .collect();
        let _ = write!(out, "\nlambda trace ({n} samples, env/col): {}", picks.join(" "));
    }
    out.push('\n');
    out
}

fn schema_of(v: &serde_json::Value) -> Result<(), CliError> {
    match v.get("schema_version").and_then(|s| s.as_u64()) {
        Some(s) if s == DIAGNOSTICS_SCHEMA as u64 => Ok(()),
        Some(s) => Err(CliError::Runtime(format!("diagnostics schema {s}, expected {DIAGNOSTICS_SCHEMA}"))),
        None => Err(CliError::Runtime("diagnostics lack schema_version".into())),
    }
}

fn trial_tables(doc: &TrialDiagnostics, opts: InspectOptions) -> String {
    let mut out = String::new();
    for (i, ep) in doc.episodes.iter().enumerate() {
        let _ = writeln!(
            out,
            "trial {} episode {i}: {} beta {:.2} -> {} after {} steps, {} violating",
            doc.trial,
            ep.planner,
            ep.beta,
            ep.outcome,
            ep.steps.len(),
            ep.envelope_trace.iter().filter(|v| **v).count()
        );
        let chosen: Vec<_> = ep
            .steps
            .iter()
            .filter(|s| s.policy.is_some())
            .filter(|s| opts.all_steps || opts.step.is_none_or(|k| s.step == k))
            .take(if opts.all_steps || opts.step.is_some() { usize::MAX } else { 1 })
            .collect();
        if chosen.is_empty() {
            out.push_str("  no planned step selected\n");
        }
        for s in chosen {
            let _ = writeln!(out, "step {} executed {}", s.step, s.action);
            out.push_str(&policy_table(s.policy.as_ref().expect("filtered"), opts.eps_col));
        }
        out.push('\n');
    }
    out
}

/// Renders a policy file or a `diagnostics/<trial>.json` file.
pub fn cmd_inspect(path: &Path, opts: InspectOptions) -> Result<String, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    schema_of(&value)?;
    if value.get("episodes").is_some() {
        let doc: TrialDiagnostics = serde_json::from_value(value).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
        Ok(trial_tables(&doc, opts))
    } else {
        let p: StochasticPolicy = serde_json::from_value(value).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
        Ok(policy_table(&p, opts.eps_col))
    }
}
