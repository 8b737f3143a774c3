use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::config::PlannerConfig;
use super::lagrange::LagrangeState;
use super::lp::solve_lp;
use crate::error::{contract, Error, Result};
use crate::seed::Rng;

pub const DIAGNOSTICS_SCHEMA: u32 = 1;

/// Root statistics of one ego action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionDiagnostics {
    pub action: usize,
    pub label: String,
    pub visits: u32,
    pub q_r: f64,
    pub rho_env: f64,
    pub rho_col: f64,
    pub q_lambda: f64,
    pub in_equal_set: bool,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StochasticPolicy {
    pub schema_version: u32,
    pub planner: String,
    pub beta: f64,
    pub iterations: usize,
    pub per_action: Vec<ActionDiagnostics>,
    pub rho_env_exp: f64,
    pub rho_col_exp: f64,
    pub expected_return: f64,
    /// Set when no distribution over the equal-valued set met the constraints.
    pub fallback: bool,
    pub lambda_env: f64,
    pub lambda_col: f64,
    /// `[lambda_env, lambda_col]` sampled over the search.
    pub lambda_trace: Vec<[f64; 2]>,
}

impl StochasticPolicy {
    pub fn probabilities(&self) -> Vec<f64> {
        self.per_action.iter().map(|a| a.probability).collect()
    }

    pub fn probability_of(&self, action: usize) -> f64 {
        self.per_action.iter().find(|a| a.action == action).map_or(0.0, |a| a.probability)
    }

    /// Most probable action, ties to the earlier entry.
    pub fn mode(&self) -> usize {
        let mut best = &self.per_action[0];
        for a in &self.per_action[1..] {
            if a.probability > best.probability {
                best = a;
            }
        }
        best.action
    }

    pub fn sample(&self, rng: &mut Rng) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for a in &self.per_action {
            acc += a.probability;
            if u < acc {
                return a.action;
            }
        }
        self.per_action.iter().rev().find(|a| a.probability > 0.0).unwrap_or(&self.per_action[0]).action
    }

    pub fn satisfies_constraints(&self, eps_col: f64, eps_lp: f64) -> bool {
        self.rho_env_exp <= self.beta + eps_lp && self.rho_col_exp <= eps_col + eps_lp
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        match v.get("schema_version").and_then(|s| s.as_u64()) {
            Some(s) if s == DIAGNOSTICS_SCHEMA as u64 => Ok(serde_json::from_value(v)?),
            Some(s) => Err(Error::Parse(format!("diagnostics schema {s}, expected {DIAGNOSTICS_SCHEMA}"))),
            None => Err(Error::Parse("diagnostics lack schema_version".into())),
        }
    }

    pub(crate) fn fill_expectations(&mut self) {
        let (mut env, mut col, mut ret) = (0.0, 0.0, 0.0);
        for a in &self.per_action {
            env += a.probability * a.rho_env;
            col += a.probability * a.rho_col;
            ret += a.probability * a.q_r;
        }
        self.rho_env_exp = env;
        self.rho_col_exp = col;
        self.expected_return = ret;
    }
}

/// Raw root statistics, input of [`solve_root_policy`].
#[derive(Debug, Clone, PartialEq)]
pub struct RootStats {
    pub action: usize,
    pub label: String,
    pub visits: u32,
    pub q_r: f64,
    pub rho_env: f64,
    pub rho_col: f64,
}

fn q_lambda(s: &RootStats, l: &LagrangeState) -> f64 {
    s.q_r - l.weighted_risk(s.rho_env, s.rho_col)
}

/// Membership of each action in the equal-valued set.
pub fn equal_valued_set(stats: &[RootStats], lagrange: &LagrangeState, c_tol: f64) -> Vec<bool> {
    let visited = || stats.iter().filter(|s| s.visits > 0);
    let best = visited().map(|s| q_lambda(s, lagrange)).fold(f64::NEG_INFINITY, f64::max);
    let hi = visited().map(|s| s.q_r).fold(f64::NEG_INFINITY, f64::max);
    let lo = visited().map(|s| s.q_r).fold(f64::INFINITY, f64::min);
    let range = (hi - lo).max(1e-3);
    stats
        .iter()
        .map(|s| s.visits > 0 && q_lambda(s, lagrange) >= best - c_tol * range / (s.visits as f64).sqrt())
        .collect()
}

/// Mixes over equal-valued actions by the constrained LP, falling back to the
/// action of least multiplier-weighted risk when the LP is infeasible.
pub fn solve_root_policy(stats: &[RootStats], lagrange: &LagrangeState, config: &PlannerConfig) -> Result<StochasticPolicy> {
    if !stats.iter().any(|s| s.visits > 0) {
        return Err(contract("root has no visited action"));
    }
    let members = equal_valued_set(stats, lagrange, config.c_tol);
    let support: Vec<usize> = (0..stats.len()).filter(|&i| members[i]).collect();
    let pick = |f: fn(&RootStats) -> f64| support.iter().map(|&i| f(&stats[i])).collect::<Vec<_>>();
    let lp = solve_lp(
        &pick(|s| s.q_r),
        &pick(|s| s.rho_env),
        &pick(|s| s.rho_col),
        config.beta,
        config.eps_col,
        config.eps_lp,
    );
    let mut probs = vec![0.0; stats.len()];
    let fallback = lp.is_none();
    match lp {
        Some(pi) => {
            for (k, &i) in support.iter().enumerate() {
                probs[i] = pi[k];
            }
        }
        None => {
            let key = |s: &RootStats| (lagrange.weighted_risk(s.rho_env, s.rho_col), s.rho_env + s.rho_col, -s.q_r);
            let mut best: Option<usize> = None;
            for (i, s) in stats.iter().enumerate().filter(|(_, s)| s.visits > 0) {
                if best.is_none_or(|b| key(s).partial_cmp(&key(&stats[b])) == Some(std::cmp::Ordering::Less)) {
                    best = Some(i);
                }
            }
            probs[best.expect("a visited action exists")] = 1.0;
        }
    }
    let per_action = stats
        .iter()
        .zip(&members)
        .zip(&probs)
        .map(|((s, &m), &p)| ActionDiagnostics {
            action: s.action,
            label: s.label.clone(),
            visits: s.visits,
            q_r: s.q_r,
            rho_env: s.rho_env,
            rho_col: s.rho_col,
            q_lambda: q_lambda(s, lagrange),
            in_equal_set: m,
            probability: p,
        })
        .collect();
    let mut policy = StochasticPolicy {
        schema_version: DIAGNOSTICS_SCHEMA,
        planner: "rcrsbg".into(),
        beta: config.beta,
        iterations: 0,
        per_action,
        rho_env_exp: 0.0,
        rho_col_exp: 0.0,
        expected_return: 0.0,
        fallback,
        lambda_env: lagrange.lambda_env,
        lambda_col: lagrange.lambda_col,
        lambda_trace: Vec::new(),
    };
    policy.fill_expectations();
    Ok(policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stat(action: usize, visits: u32, q_r: f64, rho_env: f64, rho_col: f64) -> RootStats {
        RootStats { action, label: format!("a{action}"), visits, q_r, rho_env, rho_col }
    }

    #[test]
    fn feasible_set_gives_max_return() {
        let cfg = PlannerConfig { beta: 0.2, ..Default::default() };
        let l = LagrangeState::new(1.0, 100.0);
        let s = [stat(0, 1_000_000, 1.0, 0.1, 0.0), stat(1, 1_000_000, 0.9999, 0.0, 0.0)];
        let p = solve_root_policy(&s, &l, &cfg).unwrap();
        assert_eq!(p.probabilities(), vec![1.0, 0.0]);
        assert!(!p.fallback);
    }

    #[test]
    fn safe_risky_lp() {
        let cfg = PlannerConfig { beta: 0.2, ..Default::default() };
        let l = LagrangeState { lambda_env: 2.0, ..LagrangeState::new(1.0, 100.0) };
        let s = [stat(0, 10_000, 0.0, 0.0, 0.0), stat(1, 10_000, 1.0, 0.5, 0.0)];
        let p = solve_root_policy(&s, &l, &cfg).unwrap();
        assert!((p.probabilities()[0] - 0.6).abs() < 1e-12);
        assert!((p.expected_return - 0.4).abs() < 1e-12);
        assert!((p.rho_env_exp - 0.2).abs() < 1e-12);
    }

    #[test]
    fn colliding_everywhere_falls_back() {
        let cfg = PlannerConfig::default();
        let l = LagrangeState { lambda_env: 1.0, lambda_col: 5.0, ..LagrangeState::new(1.0, 100.0) };
        let s = [stat(0, 100, 1.0, 0.1, 0.99), stat(1, 100, 0.5, 0.0, 0.95), stat(2, 100, 0.0, 0.0, 0.97)];
        let p = solve_root_policy(&s, &l, &cfg).unwrap();
        assert!(p.fallback);
        assert_eq!(p.mode(), 1);
        assert_eq!(p.probability_of(1), 1.0);
    }

    #[test]
    fn equal_set_invariant_to_reward_shift() {
        let l = LagrangeState::new(1.0, 100.0);
        let s = [stat(0, 50, 0.3, 0.2, 0.0), stat(1, 400, 0.35, 0.0, 0.0), stat(2, 9, 0.1, 0.0, 0.0)];
        let shifted: Vec<RootStats> = s.iter().map(|x| RootStats { q_r: x.q_r + 7.5, ..x.clone() }).collect();
        assert_eq!(equal_valued_set(&s, &l, 1.0), equal_valued_set(&shifted, &l, 1.0));
    }

    #[test]
    fn diagnostics_round_trip_and_schema_check() {
        let cfg = PlannerConfig::default();
        let l = LagrangeState::new(1.0, 100.0);
        let p = solve_root_policy(&[stat(0, 3, 1.0, 0.0, 0.0)], &l, &cfg).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(StochasticPolicy::from_json(&text).unwrap(), p);
        let old = text.replace("\"schema_version\":1", "\"schema_version\":0");
        assert!(matches!(StochasticPolicy::from_json(&old), Err(Error::Parse(_))));
    }
}
