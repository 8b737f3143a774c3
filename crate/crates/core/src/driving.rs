//! The traffic world as a search game.
//!
//! Stage `d` of a search spans `d + 1` micro-steps of `tau_a` when stage
//! growth is enabled, so a ten-stage search predicts 11 s at 0.2 s steps.
//! Other agents act with one behavior state per stage, re-evaluating the IDM
//! at every micro-step.

use rand::Rng as _;

use crate::behavior::{idm_or_brake, AgentTruthModel, BehaviorHypothesis, BehaviorSpace, IdmParameters};
use crate::error::{contract, Result};
use crate::planner::{AgentOutcome, Game, Prediction, Stage};
use crate::safety::{agent_collision_indicator, agent_envelope_indicator, envelope_indicator, EnvelopeConfig};
use crate::seed::Rng;
use crate::world::{step, EgoAction, OtherAction, TerminalFlag, WorldState, EGO};

/// Action of one other agent for a stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AgentBehavior {
    /// Follow the IDM with these parameters.
    Idm(IdmParameters),
    /// Hold a constant acceleration.
    Accel(f64),
}

pub fn freeway_actions() -> Vec<EgoAction> {
    let mut a = vec![EgoAction::LaneChangeLeft];
    a.extend([-5.0, -1.0, -2.0, 1.0, 2.0].map(EgoAction::KeepLaneAccel));
    a.push(EgoAction::GapKeepIdm);
    a
}

pub fn left_turn_actions() -> Vec<EgoAction> {
    [-5.0, -1.0, 0.0, 1.0, 2.0].map(EgoAction::KeepLaneAccel).to_vec()
}

#[derive(Debug, Clone)]
pub struct DrivingGame {
    pub actions: Vec<EgoAction>,
    pub hypotheses: Vec<BehaviorHypothesis>,
    /// Hypothesized space sampled by full-space prediction.
    pub space: BehaviorSpace,
    /// True models of the other agents, only read for privileged prediction.
    pub truth: Vec<AgentTruthModel>,
    pub envelope: EnvelopeConfig,
    pub tau_a: f64,
    pub goal_reward: f64,
    /// Lengthen later stages to `d + 1` micro-steps.
    pub stage_growth: bool,
}

impl DrivingGame {
    pub fn new(actions: Vec<EgoAction>, hypotheses: Vec<BehaviorHypothesis>, space: BehaviorSpace, envelope: EnvelopeConfig, tau_a: f64) -> Self {
        Self { actions, hypotheses, space, truth: Vec::new(), envelope, tau_a, goal_reward: 1.0, stage_growth: true }
    }

    pub fn with_truth(mut self, truth: Vec<AgentTruthModel>) -> Self {
        self.truth = truth;
        self
    }

    pub fn micro_steps(&self, depth: usize) -> usize {
        if self.stage_growth {
            depth + 1
        } else {
            1
        }
    }

    pub fn action_index(&self, action: EgoAction) -> Option<usize> {
        self.actions.iter().position(|a| *a == action)
    }

    fn other_action(state: &WorldState, idx: usize, behavior: AgentBehavior) -> OtherAction {
        let agent = &state.agents[idx];
        let acceleration = match behavior {
            AgentBehavior::Idm(p) => idm_or_brake(&p, agent.v, state.leader_of(idx)),
            AgentBehavior::Accel(a) => a,
        };
        OtherAction { agent: agent.id, acceleration }
    }
}

impl Game for DrivingGame {
    type State = WorldState;
    type Action = AgentBehavior;

    fn tick(&self) -> f64 {
        self.tau_a
    }

    fn is_terminal(&self, state: &WorldState) -> bool {
        state.is_terminal()
    }

    fn ego_actions(&self, state: &WorldState) -> Vec<usize> {
        let valid = state.valid_ego_actions(&self.actions);
        (0..self.actions.len()).filter(|&i| valid.contains(&self.actions[i])).collect()
    }

    fn ego_action_label(&self, action: usize) -> String {
        self.actions[action].to_string()
    }

    fn num_others(&self, state: &WorldState) -> usize {
        state.agents.len() - 1
    }

    fn num_hypotheses(&self) -> usize {
        self.hypotheses.len()
    }

    fn sample_other(&self, _state: &WorldState, agent: usize, prediction: Prediction, rng: &mut Rng) -> AgentBehavior {
        AgentBehavior::Idm(match prediction {
            Prediction::Hypothesis(k) => self.hypotheses[k].sample_params(rng),
            Prediction::FullSpace => {
                let [lo, hi] = self.space.headway_bounds();
                IdmParameters { t_desired: lo + (hi - lo) * rng.random::<f64>(), ..self.space.reference }
            }
            Prediction::Truth => self.truth[agent].sample_with(rng),
        })
    }

    fn cooperative_actions(&self, state: &WorldState, _agent: usize) -> Vec<AgentBehavior> {
        self.actions
            .iter()
            .filter_map(|a| match a {
                EgoAction::KeepLaneAccel(x) => Some(AgentBehavior::Accel(*x)),
                EgoAction::GapKeepIdm => Some(AgentBehavior::Idm(state.config.idm_reference)),
                _ => None,
            })
            .collect()
    }

    fn step(&self, state: &WorldState, ego: usize, others: &[AgentBehavior], depth: usize, per_agent: bool) -> Result<Stage<WorldState>> {
        let n_others = state.agents.len() - 1;
        if others.len() != n_others {
            return Err(contract("one behavior per other agent is required"));
        }
        let macro_action = self.actions[ego];
        let mut current = state.clone();
        let mut stage = Stage {
            state: state.clone(),
            reward: 0.0,
            duration: 0.0,
            env_time: 0.0,
            col_time: 0.0,
            goal: false,
            collision: false,
            others: vec![AgentOutcome::default(); if per_agent { n_others } else { 0 }],
        };
        let lane_changing = matches!(macro_action, EgoAction::LaneChangeLeft | EgoAction::LaneChangeRight);
        for k in 0..self.micro_steps(depth) {
            let action = if lane_changing && k > 0 && current.ego().lane_change.is_none() {
                EgoAction::KeepLaneAccel(0.0)
            } else {
                macro_action
            };
            let joint: Vec<OtherAction> =
                others.iter().enumerate().map(|(j, b)| Self::other_action(&current, j + 1, *b)).collect();
            current = step(&current, action, &joint, self.tau_a)?;
            stage.duration += self.tau_a;
            if envelope_indicator(&current, &self.envelope) {
                stage.env_time += self.tau_a;
            }
            if per_agent {
                for (j, o) in stage.others.iter_mut().enumerate() {
                    if agent_envelope_indicator(&current, j + 1, &self.envelope) {
                        o.env_time += self.tau_a;
                    }
                    o.collision |= agent_collision_indicator(&current, j + 1, &current.config.collision);
                }
            }
            match current.terminal {
                TerminalFlag::Collision => {
                    stage.collision = true;
                    stage.col_time += self.tau_a;
                }
                TerminalFlag::GoalReached => {
                    stage.goal = true;
                    stage.reward += self.goal_reward;
                }
                _ => {}
            }
            if current.is_terminal() {
                break;
            }
        }
        debug_assert!(current.agents.len() > EGO);
        stage.state = current;
        Ok(stage)
    }
}
