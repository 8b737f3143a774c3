//! Risk-constrained multi-agent MCTS.
//!
//! Each iteration takes a Lagrange step on the root's expected risks, draws a
//! behavior hypothesis per other agent from the belief and simulates stages
//! down to `d_max`. The ego selects actions by UCB on
//! `Q_R - lambda_env * rho_env - lambda_col * rho_col`; other agents widen
//! progressively from their hypothesis and otherwise pick the action that
//! maximizes the ego's weighted risk. The returned policy mixes over the
//! equal-valued root actions by a linear program on the root estimates.

pub mod config;
pub mod game;
pub mod lagrange;
pub mod lp;
pub mod policy;
pub mod search;
mod toy;

pub use config::{PlannerConfig, RolloutPolicy};
pub use game::{AgentOutcome, Game, Prediction, Stage};
pub use lagrange::LagrangeState;
pub use lp::solve_lp;
pub use policy::{equal_valued_set, solve_root_policy, ActionDiagnostics, RootStats, StochasticPolicy, DIAGNOSTICS_SCHEMA};
pub use search::{Mode, PredictionKind, Search, SearchSpec};

use crate::seed::Rng;
use crate::Result;

/// Plans with beliefs over hypotheses and returns the stochastic root policy.
pub fn plan<G: Game>(game: &G, root: &G::State, beliefs: &[Vec<f64>], config: &PlannerConfig, rng: &mut Rng) -> Result<StochasticPolicy> {
    let spec = SearchSpec { mode: Mode::Constrained, prediction: PredictionKind::Belief };
    run_search(game, root, beliefs, config, spec, "rcrsbg", rng)
}

pub(crate) fn run_search<G: Game>(
    game: &G,
    root: &G::State,
    beliefs: &[Vec<f64>],
    config: &PlannerConfig,
    spec: SearchSpec,
    name: &str,
    rng: &mut Rng,
) -> Result<StochasticPolicy> {
    let mut search = Search::new(game, root, beliefs, config, spec)?;
    search.run(rng)?;
    search.finish(name)
}
