//! Longitudinal relations between agents: which pairs share an axis (same
//! lane, a lane-change target, or a conflict zone projected to a common axis)
//! and who leads whom on it.

use super::layout::{ConflictZone, LaneId, RoadLayout, ZoneKind};
use super::state::AgentState;
use crate::behavior::idm::LeaderContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKey {
    Lane(LaneId),
    Zone(usize),
}

/// Lanes an agent occupies directly: its own lane and, mid lane change, the target.
pub fn direct_lanes(agent: &AgentState) -> impl Iterator<Item = (LaneId, f64)> + '_ {
    std::iter::once((agent.lane, agent.s)).chain(agent.lane_change.map(|lc| (lc.target, agent.s)))
}

fn entered(x: f64, len: f64, extent: f64) -> bool {
    x + 0.5 * len > -extent
}

fn cleared(x: f64, len: f64, extent: f64) -> bool {
    x - 0.5 * len > extent
}

/// Whether two vehicles, at signed offsets `xa` (on `lane_a`) and `xb` (on
/// `lane_b`) from the conflict point, interact through the zone.
pub fn zone_active(zone: &ConflictZone, xa: f64, len_a: f64, xb: f64, len_b: f64) -> bool {
    match zone.kind {
        ZoneKind::Crossing => {
            !cleared(xa, len_a, zone.half_extent_a)
                && !cleared(xb, len_b, zone.half_extent_b)
                && (entered(xa, len_a, zone.half_extent_a) || entered(xb, len_b, zone.half_extent_b))
        }
        ZoneKind::Merge => entered(xa, len_a, zone.half_extent_a),
    }
}

/// Calls `f(axis, x_a, x_b)` for every axis `a` and `b` currently share.
pub fn for_each_shared_axis(layout: &RoadLayout, a: &AgentState, b: &AgentState, mut f: impl FnMut(AxisKey, f64, f64)) {
    for (la, sa) in direct_lanes(a) {
        for (lb, sb) in direct_lanes(b) {
            if la == lb {
                f(AxisKey::Lane(la), sa, sb);
            }
        }
    }
    for (zi, z) in layout.conflict_zones.iter().enumerate() {
        for (la, sa) in direct_lanes(a) {
            for (lb, sb) in direct_lanes(b) {
                if la == z.lane_a && lb == z.lane_b {
                    let (xa, xb) = (sa - z.s_a, sb - z.s_b);
                    if zone_active(z, xa, a.length, xb, b.length) {
                        f(AxisKey::Zone(zi), xa, xb);
                    }
                } else if la == z.lane_b && lb == z.lane_a {
                    let (xa, xb) = (sa - z.s_b, sb - z.s_a);
                    if zone_active(z, xb, b.length, xa, a.length) {
                        f(AxisKey::Zone(zi), xa, xb);
                    }
                }
            }
        }
    }
}

/// Nearest vehicle strictly ahead of `agents[idx]` on any shared axis.
pub fn leader(layout: &RoadLayout, agents: &[AgentState], idx: usize) -> Option<(usize, LeaderContext)> {
    let me = &agents[idx];
    let mut best: Option<(usize, f64)> = None;
    for (j, other) in agents.iter().enumerate() {
        if j == idx {
            continue;
        }
        for_each_shared_axis(layout, me, other, |_, x_me, x_other| {
            let dx = x_other - x_me;
            if dx > 0.0 && best.is_none_or(|(_, d)| dx < d) {
                best = Some((j, dx));
            }
        });
    }
    best.map(|(j, dx)| {
        let gap = dx - 0.5 * (me.length + agents[j].length);
        (j, LeaderContext { gap, speed: agents[j].v })
    })
}
