use std::sync::Arc;

use rand::Rng as _;

use super::config::{ExperimentConfig, ScenarioKind};
use crate::behavior::AgentTruthModel;
use crate::error::{Error, Result};
use crate::safety::{agent_collision_indicator, CollisionConfig};
use crate::seed::{derive_seed, stream, Rng};
use crate::world::{AgentState, GoalRegion, LaneId, RoadLayout, WorldConfig, WorldState};

/// Initial world of one trial with the hidden behavior of its other agents.
#[derive(Debug, Clone)]
pub struct ScenarioInstance {
    pub trial: u64,
    pub state: WorldState,
    /// One model per other agent, in agent order.
    pub truth: Vec<AgentTruthModel>,
    pub scenario_seed: u64,
}

fn uniform(rng: &mut Rng, [l, u]: [f64; 2]) -> f64 {
    if u > l {
        rng.random_range(l..u)
    } else {
        l
    }
}

pub fn build_layout(cfg: &ExperimentConfig) -> Result<RoadLayout> {
    let sc = &cfg.scenario;
    match sc.kind {
        ScenarioKind::FreewayEnter => {
            let goal = GoalRegion { lane: 1, s_range: [sc.ego_station() + sc.goal_distance, sc.road_length], speed_range: sc.speed };
            RoadLayout::freeway(sc.road_length, sc.lane_width, goal)
        }
        ScenarioKind::LeftTurn => RoadLayout::left_turn(
            0.5 * sc.road_length,
            sc.lane_width,
            sc.approach,
            sc.turn_radius,
            sc.goal_offset,
            sc.speed,
        ),
    }
}

/// Lane and anchor station of each occupied lane.
fn platoons(cfg: &ExperimentConfig, layout: &RoadLayout) -> Vec<(LaneId, f64)> {
    match cfg.scenario.kind {
        ScenarioKind::FreewayEnter => vec![(1, cfg.scenario.ego_station())],
        ScenarioKind::LeftTurn => {
            let s_of = |lane: LaneId| {
                layout
                    .conflict_zones
                    .iter()
                    .find(|z| z.lane_b == lane)
                    .map(|z| z.s_b)
                    .unwrap_or(0.5 * cfg.scenario.road_length)
            };
            vec![(0, s_of(0)), (1, s_of(1))]
        }
    }
}

fn place(cfg: &ExperimentConfig, layout: &Arc<RoadLayout>, world: &Arc<WorldConfig>, rng: &mut Rng) -> Result<WorldState> {
    let sc = &cfg.scenario;
    let ego_lane = match sc.kind {
        ScenarioKind::FreewayEnter => 0,
        ScenarioKind::LeftTurn => 2,
    };
    let mut agents = vec![AgentState::new(0, ego_lane, sc.ego_station(), uniform(rng, sc.ego_speed.unwrap_or(sc.speed)))];
    let mut id = 1;
    for (lane, anchor) in platoons(cfg, layout) {
        if sc.vehicles == 0 {
            continue;
        }
        let gaps: Vec<f64> = (0..sc.vehicles).map(|_| uniform(rng, sc.gap)).collect();
        let anchor = anchor + uniform(rng, sc.anchor_offset) * gaps[0];
        // The anchor sits in the middle of gap 0; `vehicles_ahead` vehicles lie in front of it.
        let ahead = sc.vehicles_ahead.min(sc.vehicles);
        let mut stations = Vec::with_capacity(sc.vehicles);
        let mut s = anchor + 0.5 * gaps[0];
        for g in gaps.iter().take(ahead).skip(1) {
            stations.push(s);
            s += g;
        }
        if ahead > 0 {
            stations.push(s);
        }
        stations.reverse();
        let mut s = anchor - 0.5 * gaps[0];
        for k in ahead..sc.vehicles {
            stations.push(s);
            s -= gaps[k.max(1)];
        }
        for s in stations {
            agents.push(AgentState::new(id, lane, s, uniform(rng, sc.speed)));
            id += 1;
        }
    }
    WorldState::new(agents, Arc::clone(layout), Arc::clone(world))
}

fn overlapping(state: &WorldState, cfg: &CollisionConfig) -> bool {
    (0..state.agents.len()).any(|i| agent_collision_indicator(state, i, cfg))
}

/// Initial state and hidden behaviors of `trial`, from the trial's own streams.
pub fn generate_scenario(cfg: &ExperimentConfig, trial: u64) -> Result<ScenarioInstance> {
    let layout = Arc::new(build_layout(cfg)?);
    let mut world = WorldConfig { time_limit: Some(cfg.scenario.max_time), ..WorldConfig::default() };
    if let Some(m) = cfg.safety.collision_margin {
        world.collision.safety_margin = m;
    }
    let world = Arc::new(world);
    let master = cfg.scenario.seed;
    let scenario_seed = derive_seed(master, trial, "scenario", 0);
    let mut rng = stream(master, trial, "scenario", 0);
    let mut state = None;
    for _ in 0..=cfg.scenario.spawn_retries {
        let s = place(cfg, &layout, &world, &mut rng)?;
        if !overlapping(&s, &world.collision) {
            state = Some(s);
            break;
        }
    }
    let state = state.ok_or_else(|| {
        Error::Degenerate(format!("trial {trial}: no overlap-free placement after {} retries", cfg.scenario.spawn_retries))
    })?;
    let space = cfg.behavior.true_space()?;
    let mut bounds_rng = stream(master, trial, "truth-bounds", 0);
    let truth = state
        .others()
        .iter()
        .map(|a| {
            AgentTruthModel::draw(
                &space,
                cfg.behavior.delta_min,
                cfg.behavior.delta_max,
                &mut bounds_rng,
                stream(master, trial, "truth", a.id as u64),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScenarioInstance { trial, state, truth, scenario_seed })
}
