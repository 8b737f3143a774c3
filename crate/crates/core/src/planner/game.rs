//! Interface between the search engine and a simulated world.

use std::fmt::Debug;

use crate::seed::Rng;
use crate::Result;

/// Source of other-agent actions during search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    /// Draw from the action distribution of hypothesis `k`.
    Hypothesis(usize),
    /// Draw a fresh behavior state from the whole hypothesized space.
    FullSpace,
    /// Draw from the agent's true behavior model.
    Truth,
}

/// Indicators of one non-ego agent over a stage.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AgentOutcome {
    pub goal: bool,
    pub env_time: f64,
    pub collision: bool,
}

/// Result of simulating one search stage.
#[derive(Debug, Clone)]
pub struct Stage<S> {
    pub state: S,
    /// Objective reward of the risk-constrained planner.
    pub reward: f64,
    /// Simulated time covered by the stage.
    pub duration: f64,
    /// Time within the stage the ego spent violating its envelope.
    pub env_time: f64,
    /// Time within the stage the ego spent in collision.
    pub col_time: f64,
    pub goal: bool,
    pub collision: bool,
    /// Per other agent indicators, only filled when requested.
    pub others: Vec<AgentOutcome>,
}

pub trait Game {
    type State: Clone;
    /// Action of a single other agent.
    type Action: Clone + PartialEq + Debug;

    /// Duration of one observation, the unit of the risk denominator.
    fn tick(&self) -> f64;

    fn is_terminal(&self, state: &Self::State) -> bool;

    /// Indices of the ego actions valid in `state`.
    fn ego_actions(&self, state: &Self::State) -> Vec<usize>;

    fn ego_action_label(&self, action: usize) -> String {
        format!("a{action}")
    }

    fn num_others(&self, state: &Self::State) -> usize;

    fn num_hypotheses(&self) -> usize;

    fn sample_other(&self, state: &Self::State, agent: usize, prediction: Prediction, rng: &mut Rng) -> Self::Action;

    /// Discrete action set used when other agents plan cooperatively.
    fn cooperative_actions(&self, state: &Self::State, agent: usize) -> Vec<Self::Action>;

    /// Simulates stage `depth` from `state`.
    fn step(
        &self,
        state: &Self::State,
        ego: usize,
        others: &[Self::Action],
        depth: usize,
        per_agent: bool,
    ) -> Result<Stage<Self::State>>;
}
