use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

use super::layout::{LaneId, RoadLayout};
use super::traffic;
use crate::behavior::idm::{idm_or_brake, IdmParameters, MAX_BRAKE};
use crate::error::{contract, Error, Result};
use crate::safety::{collision_indicator, CollisionConfig};

pub type AgentId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaneChange {
    pub target: LaneId,
    pub side: Side,
    pub steps_done: u32,
    /// Fraction of the maneuver completed, in `[0, 1]`.
    pub progress: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    pub id: AgentId,
    pub lane: LaneId,
    /// Longitudinal station on `lane` [m].
    pub s: f64,
    /// Lateral offset from the lane centerline, positive to the left [m].
    pub d: f64,
    pub v: f64,
    pub lane_change: Option<LaneChange>,
    pub length: f64,
    pub width: f64,
}

impl AgentState {
    pub fn new(id: AgentId, lane: LaneId, s: f64, v: f64) -> Self {
        Self { id, lane, s, d: 0.0, v, lane_change: None, length: 4.5, width: 1.8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "accel", rename_all = "snake_case")]
pub enum EgoAction {
    LaneChangeLeft,
    LaneChangeRight,
    KeepLaneAccel(f64),
    GapKeepIdm,
}

impl fmt::Display for EgoAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EgoAction::LaneChangeLeft => write!(f, "lane_change_left"),
            EgoAction::LaneChangeRight => write!(f, "lane_change_right"),
            EgoAction::KeepLaneAccel(a) => write!(f, "accel({a})"),
            EgoAction::GapKeepIdm => write!(f, "gap_keep_idm"),
        }
    }
}

impl EgoAction {
    fn lane_change_side(self) -> Option<Side> {
        match self {
            EgoAction::LaneChangeLeft => Some(Side::Left),
            EgoAction::LaneChangeRight => Some(Side::Right),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OtherAction {
    pub agent: AgentId,
    pub acceleration: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalFlag {
    None,
    Collision,
    GoalReached,
    MaxTime,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorldConfig {
    /// Micro-steps a lane change takes.
    pub lane_change_steps: u32,
    /// Parameters used by the ego's gap-keeping macro-action.
    pub idm_reference: IdmParameters,
    pub collision: CollisionConfig,
    /// Upper bound for other agents' accelerations; the lower bound is `-MAX_BRAKE`.
    pub max_other_accel: f64,
    /// Episode horizon; `None` disables the max-time terminal.
    pub time_limit: Option<f64>,
}

impl Default for WorldConfig {
    fn default() -> Self {
        Self {
            lane_change_steps: 5,
            idm_reference: IdmParameters { v_desired: 11.1, t_desired: 1.75, s_min: 2.0, a_factor: 1.75, b_comft: 2.0 },
            collision: CollisionConfig::default(),
            max_other_accel: 2.5,
            time_limit: None,
        }
    }
}

/// Joint physical state. `agents[0]` is always the ego vehicle.
#[derive(Debug, Clone)]
pub struct WorldState {
    pub steps: u32,
    pub time: f64,
    pub agents: Vec<AgentState>,
    pub layout: Arc<RoadLayout>,
    pub config: Arc<WorldConfig>,
    pub terminal: TerminalFlag,
}

pub const EGO: usize = 0;

impl WorldState {
    pub fn new(agents: Vec<AgentState>, layout: Arc<RoadLayout>, config: Arc<WorldConfig>) -> Result<Self> {
        if agents.is_empty() {
            return Err(contract("world needs an ego agent"));
        }
        for (i, a) in agents.iter().enumerate() {
            if agents[..i].iter().any(|b| b.id == a.id) {
                return Err(contract(format!("duplicate agent id {}", a.id)));
            }
            if a.lane >= layout.lanes.len() {
                return Err(contract(format!("agent {} on missing lane {}", a.id, a.lane)));
            }
            if a.v < 0.0 {
                return Err(contract(format!("agent {} has negative speed", a.id)));
            }
        }
        Ok(Self { steps: 0, time: 0.0, agents, layout, config, terminal: TerminalFlag::None })
    }

    pub fn ego(&self) -> &AgentState {
        &self.agents[EGO]
    }

    pub fn others(&self) -> &[AgentState] {
        &self.agents[1..]
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal != TerminalFlag::None
    }

    pub fn with_time_limit(mut self, limit: Option<f64>) -> Self {
        if self.config.time_limit != limit {
            let mut cfg = (*self.config).clone();
            cfg.time_limit = limit;
            self.config = Arc::new(cfg);
        }
        self
    }

    pub fn leader_of(&self, idx: usize) -> Option<crate::behavior::idm::LeaderContext> {
        traffic::leader(&self.layout, &self.agents, idx).map(|(_, ctx)| ctx)
    }

    /// Ego actions applicable here. Mid lane change only the continuation is valid.
    pub fn valid_ego_actions(&self, action_set: &[EgoAction]) -> Vec<EgoAction> {
        let ego = self.ego();
        if let Some(lc) = ego.lane_change {
            return vec![match lc.side {
                Side::Left => EgoAction::LaneChangeLeft,
                Side::Right => EgoAction::LaneChangeRight,
            }];
        }
        let lane = self.layout.lane(ego.lane);
        action_set
            .iter()
            .copied()
            .filter(|a| match a {
                EgoAction::LaneChangeLeft => lane.left.is_some(),
                EgoAction::LaneChangeRight => lane.right.is_some(),
                _ => true,
            })
            .collect()
    }

    pub fn goal_reached(&self) -> bool {
        let ego = self.ego();
        let goal = &self.layout.goal;
        ego.lane == goal.lane && ego.lane_change.is_none() && goal.contains(ego.s, ego.v)
    }

    /// Bit-level fingerprint of the dynamic state.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut mix = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(0x0000_0100_0000_01B3);
        };
        mix(self.steps as u64);
        mix(self.time.to_bits());
        for a in &self.agents {
            mix(a.id as u64);
            mix(a.lane as u64);
            mix(a.s.to_bits());
            mix(a.d.to_bits());
            mix(a.v.to_bits());
            mix(a.length.to_bits());
            mix(a.width.to_bits());
            if let Some(lc) = a.lane_change {
                mix(lc.target as u64);
                mix(lc.steps_done as u64);
            }
        }
        h
    }
}

fn integrate(agent: &mut AgentState, accel: f64, tau: f64) {
    let v0 = agent.v;
    let v1 = v0 + accel * tau;
    if v1 < 0.0 {
        // Stops within the step and stays put.
        agent.s += 0.5 * v0 * (v0 / -accel);
        agent.v = 0.0;
    } else {
        agent.s += v0 * tau + 0.5 * accel * tau * tau;
        agent.v = v1;
    }
}

/// Advances the ego one micro-step under `action`.
fn advance_ego(state: &WorldState, action: EgoAction, tau: f64) -> Result<AgentState> {
    let mut ego = state.ego().clone();
    let side = action.lane_change_side();
    match (ego.lane_change, side) {
        (Some(lc), Some(s)) if lc.side != s => {
            return Err(Error::InvalidAction("lane change cannot reverse mid-maneuver".into()));
        }
        (Some(_), None) => {
            return Err(Error::InvalidAction(format!("{action} while a lane change is in progress")));
        }
        _ => {}
    }
    let accel = match action {
        EgoAction::KeepLaneAccel(a) => a,
        EgoAction::GapKeepIdm => idm_or_brake(&state.config.idm_reference, ego.v, state.leader_of(EGO)),
        EgoAction::LaneChangeLeft | EgoAction::LaneChangeRight => 0.0,
    };
    integrate(&mut ego, accel.max(-MAX_BRAKE), tau);
    if let Some(side) = side {
        let lane = state.layout.lane(ego.lane);
        let mut lc = match ego.lane_change {
            Some(lc) => lc,
            None => {
                let target = match side {
                    Side::Left => lane.left,
                    Side::Right => lane.right,
                }
                .ok_or_else(|| Error::InvalidAction(format!("{action}: no adjacent lane")))?;
                LaneChange { target, side, steps_done: 0, progress: 0.0 }
            }
        };
        let n = state.config.lane_change_steps.max(1);
        lc.steps_done += 1;
        lc.progress = lc.steps_done as f64 / n as f64;
        let spacing = 0.5 * (lane.width + state.layout.lane(lc.target).width);
        let sign = if side == Side::Left { 1.0 } else { -1.0 };
        if lc.steps_done >= n {
            ego.lane = lc.target;
            ego.d = 0.0;
            ego.lane_change = None;
        } else {
            ego.d = sign * spacing * lc.progress;
            ego.lane_change = Some(lc);
        }
    }
    Ok(ego)
}

/// Deterministic transition for one micro-step of duration `tau_a`.
///
/// `others` must contain exactly one action per non-ego agent; actions given
/// in agent order take a fast path, otherwise they are matched by id.
pub fn step(state: &WorldState, ego_action: EgoAction, others: &[OtherAction], tau_a: f64) -> Result<WorldState> {
    if state.is_terminal() {
        return Err(contract(format!("step on terminal state ({:?})", state.terminal)));
    }
    let n_others = state.agents.len() - 1;
    if others.len() != n_others {
        return Err(contract(format!("joint action covers {} of {} other agents", others.len(), n_others)));
    }
    let in_order = others.iter().zip(state.others()).all(|(o, a)| o.agent == a.id);
    let mut accels = Vec::with_capacity(n_others);
    for agent in state.others() {
        let a = if in_order {
            others[accels.len()].acceleration
        } else {
            others
                .iter()
                .find(|o| o.agent == agent.id)
                .ok_or_else(|| contract(format!("no action for agent {}", agent.id)))?
                .acceleration
        };
        accels.push(a.clamp(-MAX_BRAKE, state.config.max_other_accel));
    }

    let ego = advance_ego(state, ego_action, tau_a)?;
    let mut agents = Vec::with_capacity(state.agents.len());
    agents.push(ego);
    for (agent, a) in state.others().iter().zip(accels) {
        let mut next = agent.clone();
        integrate(&mut next, a, tau_a);
        agents.push(next);
    }

    let mut next = WorldState {
        steps: state.steps + 1,
        time: (state.steps + 1) as f64 * tau_a,
        agents,
        layout: Arc::clone(&state.layout),
        config: Arc::clone(&state.config),
        terminal: TerminalFlag::None,
    };
    next.terminal = if collision_indicator(&next, &next.config.collision) {
        TerminalFlag::Collision
    } else if next.goal_reached() {
        TerminalFlag::GoalReached
    } else if next.config.time_limit.is_some_and(|limit| next.time >= limit - 1e-9) {
        TerminalFlag::MaxTime
    } else {
        TerminalFlag::None
    };
    Ok(next)
}

/// Ego-only kinematics of a macro-action over `steps` micro-steps, other
/// agents held at constant speed. Returns the ego state after each step.
pub fn ego_macro_rollforward(state: &WorldState, action: EgoAction, tau_a: f64, steps: usize) -> Result<Vec<AgentState>> {
    let mut current = state.clone();
    current.terminal = TerminalFlag::None;
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let act = if current.ego().lane_change.is_none() && !out.is_empty() && action.lane_change_side().is_some() {
            EgoAction::KeepLaneAccel(0.0)
        } else {
            action
        };
        let ego = advance_ego(&current, act, tau_a)?;
        for a in current.agents[1..].iter_mut() {
            integrate(a, 0.0, tau_a);
        }
        current.agents[EGO] = ego.clone();
        out.push(ego);
    }
    Ok(out)
}
