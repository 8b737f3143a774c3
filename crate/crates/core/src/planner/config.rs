use serde::{Deserialize, Serialize};

use crate::baselines::{CooperationConfig, ShapedRewardConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RolloutPolicy {
    /// Ego picks uniformly among valid actions; others follow the prediction.
    #[default]
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlannerConfig {
    /// Allowed envelope violation risk.
    pub beta: f64,
    pub iterations: usize,
    pub d_max: usize,
    pub tau_a: f64,
    pub t_plan: f64,
    /// Number of behavior hypotheses.
    pub hypotheses: usize,
    pub gamma: f64,
    pub exploration: f64,
    pub k_pw: f64,
    pub alpha_pw: f64,
    /// Scale of the count-based tolerance defining the equal-valued set.
    pub c_tol: f64,
    pub eps_lp: f64,
    pub eps_col: f64,
    pub lambda_max: f64,
    pub alpha_0: f64,
    pub rollout: RolloutPolicy,
    pub shaped: ShapedRewardConfig,
    pub cooperation: CooperationConfig,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            beta: 0.2,
            iterations: 20_000,
            d_max: 10,
            tau_a: 0.2,
            t_plan: 11.0,
            hypotheses: 16,
            gamma: 0.95,
            exploration: 1.0,
            k_pw: 4.0,
            alpha_pw: 0.25,
            c_tol: 1.0,
            eps_lp: 1e-9,
            eps_col: 0.01,
            lambda_max: 100.0,
            alpha_0: 1.0,
            rollout: RolloutPolicy::Random,
            shaped: ShapedRewardConfig::default(),
            cooperation: CooperationConfig::default(),
        }
    }
}

impl PlannerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(0.0..=1.0).contains(&self.beta) {
            return bad("beta must lie in [0, 1]");
        }
        if self.iterations == 0 {
            return bad("iterations must be at least 1");
        }
        if self.d_max == 0 || self.hypotheses == 0 {
            return bad("d_max and hypotheses must be positive");
        }
        if !(self.tau_a > 0.0 && self.t_plan > 0.0) {
            return bad("tau_a and t_plan must be positive");
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return bad("gamma must lie in [0, 1]");
        }
        if self.exploration < 0.0 || self.k_pw <= 0.0 || !(0.0..=1.0).contains(&self.alpha_pw) {
            return bad("invalid exploration or widening constants");
        }
        if self.c_tol < 0.0 || self.eps_lp < 0.0 || self.eps_col < 0.0 {
            return bad("tolerances must be nonnegative");
        }
        if self.lambda_max <= 0.0 || self.alpha_0 <= 0.0 {
            return bad("lambda_max and alpha_0 must be positive");
        }
        self.shaped.validate()?;
        self.cooperation.validate()
    }

    /// Number of expanded actions progressive widening allows after `visits`.
    pub fn widening_limit(&self, visits: u32) -> f64 {
        self.k_pw * (visits as f64).powf(self.alpha_pw)
    }
}
