//! Safety-violation indicators: the longitudinal safe-distance envelope and
//! the collision check against an inflated ego footprint.

use serde::{Deserialize, Serialize};

use crate::world::traffic::{for_each_shared_axis, AxisKey};
use crate::world::{OrientedRect, WorldState, EGO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    /// Only vehicles ahead of the subject on a shared axis.
    Leaders,
    /// Vehicles ahead and the nearest vehicle behind on each shared axis.
    #[default]
    LeadersAndFollowers,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeConfig {
    pub response_time_ego: f64,
    pub response_time_other: f64,
    /// Deceleration limit as a positive magnitude.
    pub decel_limit: f64,
    #[serde(default)]
    pub applicability: Applicability,
}

impl EnvelopeConfig {
    pub fn freeway() -> Self {
        Self { response_time_ego: 0.5, response_time_other: 1.0, decel_limit: 5.0, applicability: Applicability::default() }
    }

    pub fn left_turn() -> Self {
        Self { response_time_ego: 1.0, ..Self::freeway() }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.response_time_ego < 0.0 || self.response_time_other < 0.0 || !(self.decel_limit > 0.0) {
            return Err(crate::error::contract("response times must be >= 0 and the deceleration limit > 0"));
        }
        Ok(())
    }

    fn response_time(&self, idx: usize) -> f64 {
        if idx == EGO {
            self.response_time_ego
        } else {
            self.response_time_other
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionConfig {
    pub safety_margin: f64,
}

impl Default for CollisionConfig {
    fn default() -> Self {
        Self { safety_margin: 0.5 }
    }
}

/// Worst-case longitudinal safe distance: the rear vehicle reacts after
/// `response_time` and both then brake at `decel`.
pub fn safe_distance(v_rear: f64, v_front: f64, response_time: f64, decel: f64) -> f64 {
    (v_rear * response_time + v_rear * v_rear / (2.0 * decel) - v_front * v_front / (2.0 * decel)).max(0.0)
}

struct AxisNeighbours {
    key: AxisKey,
    front: Option<(f64, usize)>,
    rear: Option<(f64, usize)>,
}

/// Envelope check with `agents[idx]` as the subject vehicle.
///
/// On every shared axis the nearest vehicle ahead (and, unless configured
/// otherwise, the nearest behind) must keep at least the safe distance; a gap
/// exactly equal to it is safe.
pub fn agent_envelope_indicator(state: &WorldState, idx: usize, cfg: &EnvelopeConfig) -> bool {
    let me = &state.agents[idx];
    let mut axes: Vec<AxisNeighbours> = Vec::new();
    for (j, other) in state.agents.iter().enumerate() {
        if j == idx {
            continue;
        }
        for_each_shared_axis(&state.layout, me, other, |key, x_me, x_other| {
            let dx = x_other - x_me;
            let slot = match axes.iter().position(|a| a.key == key) {
                Some(p) => &mut axes[p],
                None => {
                    axes.push(AxisNeighbours { key, front: None, rear: None });
                    axes.last_mut().unwrap()
                }
            };
            if dx >= 0.0 {
                if slot.front.is_none_or(|(d, _)| dx < d) {
                    slot.front = Some((dx, j));
                }
            } else if slot.rear.is_none_or(|(d, _)| dx > d) {
                slot.rear = Some((dx, j));
            }
        });
    }
    axes.iter().any(|axis| {
        let front_violated = axis.front.is_some_and(|(dx, j)| {
            let other = &state.agents[j];
            let gap = dx - 0.5 * (me.length + other.length);
            gap < safe_distance(me.v, other.v, cfg.response_time(idx), cfg.decel_limit)
        });
        let rear_violated = cfg.applicability == Applicability::LeadersAndFollowers
            && axis.rear.is_some_and(|(dx, j)| {
                let other = &state.agents[j];
                let gap = -dx - 0.5 * (me.length + other.length);
                gap < safe_distance(other.v, me.v, cfg.response_time(j), cfg.decel_limit)
            });
        front_violated || rear_violated
    })
}

pub fn envelope_indicator(state: &WorldState, cfg: &EnvelopeConfig) -> bool {
    agent_envelope_indicator(state, EGO, cfg)
}

pub fn footprint(state: &WorldState, idx: usize) -> OrientedRect {
    let a = &state.agents[idx];
    OrientedRect::new(state.layout.lane(a.lane).pose_at(a.s, a.d), a.length, a.width)
}

/// True iff another vehicle overlaps `agents[idx]`'s footprint grown by the margin.
pub fn agent_collision_indicator(state: &WorldState, idx: usize, cfg: &CollisionConfig) -> bool {
    let me = footprint(state, idx).inflated(cfg.safety_margin);
    (0..state.agents.len()).filter(|&j| j != idx).any(|j| me.overlaps(&footprint(state, j)))
}

pub fn collision_indicator(state: &WorldState, cfg: &CollisionConfig) -> bool {
    agent_collision_indicator(state, EGO, cfg)
}
