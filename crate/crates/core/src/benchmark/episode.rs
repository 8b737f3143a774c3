use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::{ExecuteMode, ExperimentConfig, PlannerKind, ScenarioKind};
use super::scenario::ScenarioInstance;
use crate::baselines::{plan_cooperative, plan_fullinfo, plan_mdp, plan_rsbg};
use crate::behavior::hypothesis::ActionContext;
use crate::behavior::{partition_hypotheses, simulate_other_agent, BeliefState};
use crate::driving::{freeway_actions, left_turn_actions, DrivingGame};
use crate::error::{Error, Result};
use crate::planner::{plan, Game, PlannerConfig, StochasticPolicy};
use crate::safety::envelope_indicator;
use crate::seed::{derive_seed, stream};
use crate::world::{step, TerminalFlag, WorldState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    Collision,
    MaxTime,
    /// The planner failed; the episode is reported but not scored.
    Excluded,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::Collision => "collision",
            Outcome::MaxTime => "max_time",
            Outcome::Excluded => "excluded",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Outcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Outcome::Success, Outcome::Collision, Outcome::MaxTime, Outcome::Excluded]
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown outcome '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeSeeds {
    pub scenario: u64,
    pub planner: u64,
    pub execute: u64,
    pub belief: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepDiagnostics {
    pub step: u32,
    pub action: String,
    /// Absent while a lane change is completing.
    pub policy: Option<StochasticPolicy>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub trial: u64,
    pub planner: PlannerKind,
    pub beta: f64,
    pub outcome: Outcome,
    /// Simulated steps.
    pub length: u32,
    /// Steps whose resulting state violates the ego envelope.
    pub violations: u32,
    pub envelope_trace: Vec<bool>,
    pub diagnostics: Vec<StepDiagnostics>,
    pub seeds: EpisodeSeeds,
    pub initial_fingerprint: u64,
    pub error: Option<String>,
}

impl EpisodeRecord {
    pub fn excluded(&self) -> bool {
        self.outcome == Outcome::Excluded
    }
}

/// Plans once with the selected planner.
pub fn plan_step(
    kind: PlannerKind,
    game: &DrivingGame,
    root: &WorldState,
    beliefs: &[Vec<f64>],
    config: &PlannerConfig,
    rng: &mut crate::seed::Rng,
) -> Result<StochasticPolicy> {
    match kind {
        PlannerKind::Rcrsbg => plan(game, root, beliefs, config, rng),
        PlannerKind::RcrsbgFullinfo => plan_fullinfo(game, root, config, rng),
        PlannerKind::Rsbg => plan_rsbg(game, root, beliefs, config, rng),
        PlannerKind::Mdp => plan_mdp(game, root, config, rng),
        PlannerKind::Cooperative => plan_cooperative(game, root, config, rng),
    }
}

pub fn driving_game(cfg: &ExperimentConfig) -> Result<DrivingGame> {
    let space = cfg.behavior.hypothesized_space()?;
    let hypotheses = partition_hypotheses(&space, cfg.planner.hypotheses)?;
    let actions = match cfg.scenario.kind {
        ScenarioKind::FreewayEnter => freeway_actions(),
        ScenarioKind::LeftTurn => left_turn_actions(),
    };
    Ok(DrivingGame::new(actions, hypotheses, space, cfg.envelope(), cfg.planner.tau_a))
}

/// Runs one closed-loop episode: replan every step, execute one ego action,
/// let the other agents act on their true behavior and update beliefs.
pub fn run_episode(instance: &ScenarioInstance, kind: PlannerKind, beta: f64, cfg: &ExperimentConfig) -> Result<EpisodeRecord> {
    run_with(instance, kind, beta, cfg, None::<fn(&WorldState, &[usize]) -> usize>)
}

/// Closed-loop episode whose ego follows `choose(state, valid actions)`
/// instead of a planner. The record is labelled with `kind`.
pub fn run_scripted_episode(
    instance: &ScenarioInstance,
    kind: PlannerKind,
    cfg: &ExperimentConfig,
    choose: impl FnMut(&WorldState, &[usize]) -> usize,
) -> Result<EpisodeRecord> {
    run_with(instance, kind, cfg.planner.beta, cfg, Some(choose))
}

fn run_with(
    instance: &ScenarioInstance,
    kind: PlannerKind,
    beta: f64,
    cfg: &ExperimentConfig,
    mut script: Option<impl FnMut(&WorldState, &[usize]) -> usize>,
) -> Result<EpisodeRecord> {
    let planner_cfg = PlannerConfig { beta, ..cfg.planner.clone() };
    planner_cfg.validate()?;
    let master = cfg.scenario.seed;
    let trial = instance.trial;
    let seeds = EpisodeSeeds {
        scenario: instance.scenario_seed,
        planner: derive_seed(master, trial, "planner", 0),
        execute: derive_seed(master, trial, "execute", 0),
        belief: derive_seed(master, trial, "belief", 0),
    };
    let mut planner_rng = stream(master, trial, "planner", 0);
    let mut exec_rng = stream(master, trial, "execute", 0);
    let mut belief_rng = stream(master, trial, "belief", 0);
    let mut game = driving_game(cfg)?;
    if kind == PlannerKind::RcrsbgFullinfo {
        game = game.with_truth(instance.truth.clone());
    }
    let mut truth = instance.truth.clone();
    let mut state = instance.state.clone();
    let mut beliefs = BeliefState::uniform(state.others().iter().map(|a| a.id), game.hypotheses.len());
    let mut record = EpisodeRecord {
        trial,
        planner: kind,
        beta,
        outcome: Outcome::MaxTime,
        length: 0,
        violations: 0,
        envelope_trace: Vec::new(),
        diagnostics: Vec::new(),
        seeds,
        initial_fingerprint: instance.state.fingerprint(),
        error: None,
    };
    let tau = planner_cfg.tau_a;
    let envelope = cfg.envelope();
    while !state.is_terminal() {
        let valid = game.ego_actions(&state);
        let (action, policy) = if let Some(choose) = script.as_mut() {
            (choose(&state, &valid), None)
        } else if valid.len() == 1 {
            (valid[0], None)
        } else {
            let root = state.clone().with_time_limit(None);
            let belief_vectors: Vec<Vec<f64>> =
                state.others().iter().map(|a| beliefs.get(a.id).expect("belief per agent").to_vec()).collect();
            match plan_step(kind, &game, &root, &belief_vectors, &planner_cfg, &mut planner_rng) {
                Ok(p) => {
                    let a = match cfg.execute {
                        ExecuteMode::Sample => p.sample(&mut exec_rng),
                        ExecuteMode::Mode => p.mode(),
                    };
                    (a, Some(p))
                }
                Err(e) => {
                    record.outcome = Outcome::Excluded;
                    record.error = Some(e.to_string());
                    return Ok(record);
                }
            }
        };
        let mut joint = Vec::with_capacity(truth.len());
        let mut contexts = Vec::with_capacity(truth.len());
        for (j, model) in truth.iter_mut().enumerate() {
            let idx = j + 1;
            contexts.push(ActionContext { speed: state.agents[idx].v, leader: state.leader_of(idx) });
            joint.push(simulate_other_agent(model, &state, idx)?);
        }
        let next = step(&state, game.actions[action], &joint, tau)?;
        for (j, (ctx, obs)) in contexts.iter().zip(&joint).enumerate() {
            let id = state.agents[j + 1].id;
            beliefs = beliefs.update(id, ctx, obs.acceleration, &game.hypotheses, &cfg.behavior.likelihood, &mut belief_rng)?;
        }
        let violated = envelope_indicator(&next, &envelope);
        record.envelope_trace.push(violated);
        record.violations += violated as u32;
        record.length += 1;
        record.diagnostics.push(StepDiagnostics { step: state.steps, action: game.ego_action_label(action), policy });
        state = next;
    }
    record.outcome = match state.terminal {
        TerminalFlag::Collision => Outcome::Collision,
        TerminalFlag::GoalReached => Outcome::Success,
        _ => Outcome::MaxTime,
    };
    Ok(record)
}
