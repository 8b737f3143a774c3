//! Baseline planners on the shared search engine.
//!
//! - RSBG: hypothesis beliefs, shaped reward, others minimize the ego return.
//! - MDP: like RSBG but others draw behavior states from the whole space.
//! - Cooperative: every agent maximizes a mix of its own and the others'
//!   shaped return over a discrete action set.
//! - FullInfo: the risk-constrained planner predicting with the true models.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planner::{run_search, Game, Mode, PlannerConfig, PredictionKind, SearchSpec, StochasticPolicy};
use crate::seed::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShapedRewardConfig {
    pub w_goal: f64,
    pub w_env: f64,
    pub w_col: f64,
}

impl Default for ShapedRewardConfig {
    fn default() -> Self {
        Self { w_goal: 0.1, w_env: 0.1, w_col: 1.0 }
    }
}

impl ShapedRewardConfig {
    pub fn validate(&self) -> Result<()> {
        if self.w_goal < 0.0 || self.w_env < 0.0 || self.w_col < 0.0 {
            return Err(Error::Config("shaped reward weights must be nonnegative".into()));
        }
        Ok(())
    }

    /// `w_goal * goal - w_env * env_time / (beta * t_plan) - w_col * collision`.
    pub fn reward(&self, goal: bool, env_time: f64, collision: bool, beta: f64, t_plan: f64) -> f64 {
        let ind = |b: bool| if b { 1.0 } else { 0.0 };
        self.w_goal * ind(goal) - self.w_env * env_time / (beta * t_plan) - self.w_col * ind(collision)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CooperationConfig {
    pub factor: f64,
}

impl Default for CooperationConfig {
    fn default() -> Self {
        Self { factor: 0.1 }
    }
}

impl CooperationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.factor) {
            return Err(Error::Config("cooperation factor must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

/// Shaped reward of one step whose envelope indicator holds for `tau_predict`.
pub fn shaped_reward(
    goal: bool,
    envelope: bool,
    collision: bool,
    tau_predict: f64,
    beta: f64,
    t_plan: f64,
    config: &ShapedRewardConfig,
) -> Result<f64> {
    if beta <= 0.0 {
        return Err(Error::Config("shaped reward needs beta > 0".into()));
    }
    let env_time = if envelope { tau_predict } else { 0.0 };
    Ok(config.reward(goal, env_time, collision, beta, t_plan))
}

fn shaped_config(config: &PlannerConfig) -> Result<()> {
    if config.beta <= 0.0 {
        return Err(Error::Config("shaped-reward planners need beta > 0".into()));
    }
    Ok(())
}

pub fn plan_rsbg<G: Game>(game: &G, root: &G::State, beliefs: &[Vec<f64>], config: &PlannerConfig, rng: &mut Rng) -> Result<StochasticPolicy> {
    shaped_config(config)?;
    let spec = SearchSpec { mode: Mode::Shaped, prediction: PredictionKind::Belief };
    run_search(game, root, beliefs, config, spec, "rsbg", rng)
}

pub fn plan_mdp<G: Game>(game: &G, root: &G::State, config: &PlannerConfig, rng: &mut Rng) -> Result<StochasticPolicy> {
    shaped_config(config)?;
    let spec = SearchSpec { mode: Mode::Shaped, prediction: PredictionKind::FullSpace };
    run_search(game, root, &[], config, spec, "mdp", rng)
}

pub fn plan_cooperative<G: Game>(game: &G, root: &G::State, config: &PlannerConfig, rng: &mut Rng) -> Result<StochasticPolicy> {
    shaped_config(config)?;
    let spec = SearchSpec { mode: Mode::Cooperative, prediction: PredictionKind::FullSpace };
    run_search(game, root, &[], config, spec, "cooperative", rng)
}

pub fn plan_fullinfo<G: Game>(game: &G, root: &G::State, config: &PlannerConfig, rng: &mut Rng) -> Result<StochasticPolicy> {
    let spec = SearchSpec { mode: Mode::Constrained, prediction: PredictionKind::Truth };
    run_search(game, root, &[], config, spec, "rcrsbg-fullinfo", rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shaped_reward_examples() {
        let c = ShapedRewardConfig::default();
        assert_eq!(shaped_reward(false, false, false, 0.2, 0.2, 11.0, &c).unwrap(), 0.0);
        assert_eq!(shaped_reward(true, false, false, 0.2, 0.2, 11.0, &c).unwrap(), 0.1);
        let full = shaped_reward(false, true, false, 0.2 * 11.0, 0.2, 11.0, &c).unwrap();
        assert!((full + 0.1).abs() < 1e-15);
        assert!(matches!(shaped_reward(true, false, false, 0.2, 0.0, 11.0, &c), Err(Error::Config(_))));
    }

    #[test]
    fn envelope_penalty_is_linear_in_duration() {
        let c = ShapedRewardConfig::default();
        let one = shaped_reward(false, true, false, 0.4, 0.3, 11.0, &c).unwrap();
        let two = shaped_reward(false, true, false, 0.8, 0.3, 11.0, &c).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-15);
    }
}
