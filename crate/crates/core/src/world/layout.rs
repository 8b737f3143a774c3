use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use super::geometry::Pose;
use crate::error::{contract, Error, Result};

pub type LaneId = usize;

/// Declarative lane description as it appears in scenario files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaneSpec {
    pub centerline: Vec<[f64; 2]>,
    pub width: f64,
    #[serde(default)]
    pub left: Option<LaneId>,
    #[serde(default)]
    pub right: Option<LaneId>,
    #[serde(default)]
    pub successor: Option<LaneId>,
}

/// A lane with a polyline centerline parametrized by arclength `s`.
///
/// Adjacent lanes are assumed to share their station: a point at `s` on one
/// lane sits laterally next to the point at `s` on its neighbour.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "LaneSpec", into = "LaneSpec")]
pub struct Lane {
    pub centerline: Vec<[f64; 2]>,
    pub width: f64,
    pub left: Option<LaneId>,
    pub right: Option<LaneId>,
    pub successor: Option<LaneId>,
    stations: Vec<f64>,
}

impl TryFrom<LaneSpec> for Lane {
    type Error = Error;

    fn try_from(spec: LaneSpec) -> Result<Self> {
        if spec.centerline.len() < 2 {
            return Err(contract("lane centerline needs at least two points"));
        }
        if !(spec.width > 0.0) {
            return Err(contract("lane width must be positive"));
        }
        let mut stations = Vec::with_capacity(spec.centerline.len());
        stations.push(0.0);
        for w in spec.centerline.windows(2) {
            let seg = ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt();
            if !(seg > 0.0) {
                return Err(contract("lane centerline arclength must be strictly increasing"));
            }
            stations.push(stations.last().unwrap() + seg);
        }
        Ok(Self {
            centerline: spec.centerline,
            width: spec.width,
            left: spec.left,
            right: spec.right,
            successor: spec.successor,
            stations,
        })
    }
}

impl From<Lane> for LaneSpec {
    fn from(l: Lane) -> Self {
        Self {
            centerline: l.centerline,
            width: l.width,
            left: l.left,
            right: l.right,
            successor: l.successor,
        }
    }
}

impl Lane {
    pub fn new(centerline: Vec<[f64; 2]>, width: f64) -> Result<Self> {
        LaneSpec { centerline, width, left: None, right: None, successor: None }.try_into()
    }

    pub fn length(&self) -> f64 {
        *self.stations.last().unwrap()
    }

    pub fn stations(&self) -> &[f64] {
        &self.stations
    }

    fn segment_index(&self, s: f64) -> usize {
        let n = self.stations.len() - 1;
        match self.stations.binary_search_by(|p| p.total_cmp(&s)) {
            Ok(i) => i.min(n - 1),
            Err(i) => i.saturating_sub(1).min(n - 1),
        }
    }

    /// Pose at station `s` with lateral offset `d` (positive to the left).
    /// Stations outside the lane extrapolate along the end segments.
    pub fn pose_at(&self, s: f64, d: f64) -> Pose {
        let i = self.segment_index(s);
        let p0 = self.centerline[i];
        let p1 = self.centerline[i + 1];
        let seg = self.stations[i + 1] - self.stations[i];
        let t = (s - self.stations[i]) / seg;
        let heading = (p1[1] - p0[1]).atan2(p1[0] - p0[0]);
        let (sin, cos) = heading.sin_cos();
        Pose {
            x: p0[0] + t * (p1[0] - p0[0]) - sin * d,
            y: p0[1] + t * (p1[1] - p0[1]) + cos * d,
            heading,
        }
    }

    pub fn heading_at(&self, s: f64) -> f64 {
        self.pose_at(s, 0.0).heading
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZoneKind {
    /// Paths cross once; the zone is released once a vehicle has cleared it.
    Crossing,
    /// `lane_a` joins `lane_b`; vehicles share one axis from then on.
    Merge,
}

/// Region where two lanes overlap, with the station of the conflict point on
/// each lane and the half extent of the region along each lane.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConflictZone {
    pub kind: ZoneKind,
    pub lane_a: LaneId,
    pub s_a: f64,
    pub half_extent_a: f64,
    pub lane_b: LaneId,
    pub s_b: f64,
    pub half_extent_b: f64,
    /// Polygon outline, informational.
    #[serde(default)]
    pub region: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoalRegion {
    pub lane: LaneId,
    pub s_range: [f64; 2],
    pub speed_range: [f64; 2],
}

impl GoalRegion {
    pub fn contains(&self, s: f64, v: f64) -> bool {
        s >= self.s_range[0] && s <= self.s_range[1] && v >= self.speed_range[0] && v <= self.speed_range[1]
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoadLayout {
    pub lanes: Vec<Lane>,
    pub goal: GoalRegion,
    #[serde(default)]
    pub conflict_zones: Vec<ConflictZone>,
}

impl RoadLayout {
    pub fn new(lanes: Vec<Lane>, goal: GoalRegion, conflict_zones: Vec<ConflictZone>) -> Result<Self> {
        let layout = Self { lanes, goal, conflict_zones };
        layout.validate()?;
        Ok(layout)
    }

    pub fn lane(&self, id: LaneId) -> &Lane {
        &self.lanes[id]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.lanes.len();
        let in_range = |id: Option<LaneId>| id.is_none_or(|i| i < n);
        for (id, lane) in self.lanes.iter().enumerate() {
            if !in_range(lane.left) || !in_range(lane.right) || !in_range(lane.successor) {
                return Err(contract(format!("lane {id} links to a missing lane")));
            }
            if let Some(l) = lane.left {
                if self.lanes[l].right != Some(id) {
                    return Err(contract(format!("lane {id} has {l} on its left but not vice versa")));
                }
            }
            if let Some(r) = lane.right {
                if self.lanes[r].left != Some(id) {
                    return Err(contract(format!("lane {id} has {r} on its right but not vice versa")));
                }
            }
        }
        if self.goal.lane >= n {
            return Err(contract("goal lane does not exist"));
        }
        if self.goal.s_range[0] > self.goal.s_range[1] || self.goal.speed_range[0] > self.goal.speed_range[1] {
            return Err(contract("goal intervals must be nonempty"));
        }
        for z in &self.conflict_zones {
            if z.lane_a >= n || z.lane_b >= n || z.lane_a == z.lane_b {
                return Err(contract("conflict zone must join two distinct existing lanes"));
            }
        }
        Ok(())
    }

    /// Two parallel straight lanes along +x; lane 0 is the right lane, lane 1 the left.
    pub fn freeway(length: f64, lane_width: f64, goal: GoalRegion) -> Result<Self> {
        let mut right = Lane::new(vec![[0.0, 0.0], [length, 0.0]], lane_width)?;
        let mut left = Lane::new(vec![[0.0, lane_width], [length, lane_width]], lane_width)?;
        right.left = Some(1);
        left.right = Some(0);
        Self::new(vec![right, left], goal, Vec::new())
    }

    /// Crossing of a side road into a two-lane main road.
    ///
    /// Lane 0 runs east at `y = -w/2`, lane 1 runs west at `y = +w/2`, both
    /// `2 * half_length` long and centered on the intersection. Lane 2 is the
    /// ego path: north along `x = +w/2` for `approach` meters, a left arc of
    /// radius `radius` crossing lane 0 and joining lane 1, then west along lane 1.
    pub fn left_turn(half_length: f64, lane_width: f64, approach: f64, radius: f64, goal_offset: [f64; 2], speed_range: [f64; 2]) -> Result<Self> {
        let w = lane_width;
        if radius <= w {
            return Err(contract("turn radius must exceed the lane width"));
        }
        let east = Lane::new(vec![[-half_length, -0.5 * w], [half_length, -0.5 * w]], w)?;
        let west = Lane::new(vec![[half_length, 0.5 * w], [-half_length, 0.5 * w]], w)?;

        let y0 = 0.5 * w - radius;
        let center = [0.5 * w - radius, y0];
        let mut path = vec![[0.5 * w, y0 - approach]];
        let arc_segments = 24;
        for k in 0..=arc_segments {
            let phi = FRAC_PI_2 * k as f64 / arc_segments as f64;
            path.push([center[0] + radius * phi.cos(), center[1] + radius * phi.sin()]);
        }
        let merge_point = *path.last().unwrap();
        path.push([-half_length, 0.5 * w]);
        let ego_path = Lane::new(path, w)?;

        let merge_s_path = ego_path.stations()[arc_segments + 1];
        let merge_s_west = half_length - merge_point[0];
        // Distance along the arc from entering the west lane's band to the joining point.
        let enter_phi = ((radius - 0.5 * w) / radius).asin();
        let merge_extent = radius * (FRAC_PI_2 - enter_phi);

        let mut zones = Vec::new();
        if let Some(z) = crossing_zone(&ego_path, 2, &east, 0) {
            zones.push(z);
        }
        let half = 0.5 * w;
        zones.push(ConflictZone {
            kind: ZoneKind::Merge,
            lane_a: 2,
            s_a: merge_s_path,
            half_extent_a: merge_extent,
            lane_b: 1,
            s_b: merge_s_west,
            half_extent_b: merge_extent,
            region: vec![
                [merge_point[0] + merge_extent, merge_point[1] - half],
                [merge_point[0] + merge_extent, merge_point[1] + half],
                [merge_point[0] - merge_extent, merge_point[1] + half],
                [merge_point[0] - merge_extent, merge_point[1] - half],
            ],
        });
        let goal = GoalRegion {
            lane: 2,
            s_range: [merge_s_path + goal_offset[0], merge_s_path + goal_offset[1]],
            speed_range,
        };
        Self::new(vec![east, west, ego_path], goal, zones)
    }

    /// Station of the merge point on the ego path, if the layout has one.
    pub fn merge_station(&self, lane: LaneId) -> Option<f64> {
        self.conflict_zones
            .iter()
            .find(|z| z.kind == ZoneKind::Merge && z.lane_a == lane)
            .map(|z| z.s_a)
    }
}

/// First intersection of two polylines, as stations on each.
pub fn polyline_intersection(a: &Lane, b: &Lane) -> Option<(f64, f64)> {
    for i in 0..a.centerline.len() - 1 {
        for j in 0..b.centerline.len() - 1 {
            let (p, p2) = (a.centerline[i], a.centerline[i + 1]);
            let (q, q2) = (b.centerline[j], b.centerline[j + 1]);
            let r = [p2[0] - p[0], p2[1] - p[1]];
            let s = [q2[0] - q[0], q2[1] - q[1]];
            let denom = r[0] * s[1] - r[1] * s[0];
            if denom.abs() < 1e-12 {
                continue;
            }
            let qp = [q[0] - p[0], q[1] - p[1]];
            let t = (qp[0] * s[1] - qp[1] * s[0]) / denom;
            let u = (qp[0] * r[1] - qp[1] * r[0]) / denom;
            if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
                let sa = a.stations()[i] + t * (a.stations()[i + 1] - a.stations()[i]);
                let sb = b.stations()[j] + u * (b.stations()[j + 1] - b.stations()[j]);
                return Some((sa, sb));
            }
        }
    }
    None
}

fn crossing_zone(a: &Lane, a_id: LaneId, b: &Lane, b_id: LaneId) -> Option<ConflictZone> {
    let (sa, sb) = polyline_intersection(a, b)?;
    let ha = a.heading_at(sa);
    let hb = b.heading_at(sb);
    let sin = (ha - hb).sin().abs().max(0.1);
    let extent_a = 0.5 * b.width / sin;
    let extent_b = 0.5 * a.width / sin;
    let p = a.pose_at(sa, 0.0);
    let (ua, ub) = ([ha.cos(), ha.sin()], [hb.cos(), hb.sin()]);
    let corner = |ka: f64, kb: f64| [p.x + ka * extent_a * ua[0] + kb * extent_b * ub[0], p.y + ka * extent_a * ua[1] + kb * extent_b * ub[1]];
    Some(ConflictZone {
        kind: ZoneKind::Crossing,
        lane_a: a_id,
        s_a: sa,
        half_extent_a: extent_a,
        lane_b: b_id,
        s_b: sb,
        half_extent_b: extent_b,
        region: vec![corner(1.0, 1.0), corner(-1.0, 1.0), corner(-1.0, -1.0), corner(1.0, -1.0)],
    })
}
