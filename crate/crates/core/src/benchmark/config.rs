use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::behavior::{BehaviorSpace, LikelihoodConfig};
use crate::error::{Error, Result};
use crate::planner::PlannerConfig;
use crate::safety::EnvelopeConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    FreewayEnter,
    LeftTurn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlannerKind {
    Rcrsbg,
    RcrsbgFullinfo,
    Rsbg,
    Mdp,
    Cooperative,
}

impl PlannerKind {
    pub const ALL: [PlannerKind; 5] =
        [PlannerKind::Rcrsbg, PlannerKind::RcrsbgFullinfo, PlannerKind::Rsbg, PlannerKind::Mdp, PlannerKind::Cooperative];

    pub fn name(self) -> &'static str {
        match self {
            PlannerKind::Rcrsbg => "rcrsbg",
            PlannerKind::RcrsbgFullinfo => "rcrsbg-fullinfo",
            PlannerKind::Rsbg => "rsbg",
            PlannerKind::Mdp => "mdp",
            PlannerKind::Cooperative => "cooperative",
        }
    }
}

impl fmt::Display for PlannerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlannerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlannerKind::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown planner '{s}' (expected one of rcrsbg, rcrsbg-fullinfo, rsbg, mdp, cooperative)")))
    }
}

/// How the executed ego action is taken from the stochastic policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExecuteMode {
    #[default]
    Sample,
    Mode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub trials: usize,
    pub seed: u64,
    /// Center distance between consecutive vehicles of a lane [m].
    pub gap: [f64; 2],
    pub speed: [f64; 2],
    /// Ego start speed, the `speed` interval when absent.
    pub ego_speed: Option<[f64; 2]>,
    pub max_time: f64,
    /// Vehicles per occupied lane.
    pub vehicles: usize,
    /// Vehicles of each occupied lane placed ahead of its anchor.
    pub vehicles_ahead: usize,
    pub spawn_retries: usize,
    pub lane_width: f64,
    pub road_length: f64,
    /// Station of the ego at spawn; 100 m on the freeway, 10 m up the side road in the left turn.
    pub ego_start: Option<f64>,
    /// Offset of the traffic anchor from its nominal station, as a fraction of the anchor gap.
    pub anchor_offset: [f64; 2],
    /// Freeway: distance from the ego start to where the goal region on the target lane begins.
    pub goal_distance: f64,
    pub turn_radius: f64,
    pub approach: f64,
    pub goal_offset: [f64; 2],
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            kind: ScenarioKind::FreewayEnter,
            trials: 100,
            seed: 0,
            gap: [15.0, 30.0],
            speed: [30.0 / 3.6, 50.0 / 3.6],
            ego_speed: None,
            max_time: 6.0,
            vehicles: 5,
            vehicles_ahead: 2,
            spawn_retries: 20,
            lane_width: 3.5,
            road_length: 500.0,
            ego_start: None,
            anchor_offset: [-0.5, 0.5],
            goal_distance: 50.0,
            turn_radius: 8.0,
            approach: 30.0,
            goal_offset: [0.0, 30.0],
        }
    }
}

impl ScenarioConfig {
    pub fn ego_station(&self) -> f64 {
        self.ego_start.unwrap_or(match self.kind {
            ScenarioKind::FreewayEnter => 100.0,
            ScenarioKind::LeftTurn => 10.0,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let interval = |name: &str, [l, u]: [f64; 2]| {
            if l <= u && l.is_finite() && u.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} interval [{l}, {u}] is empty")))
            }
        };
        interval("gap", self.gap)?;
        interval("speed", self.speed)?;
        if let Some(e) = self.ego_speed {
            interval("ego_speed", e)?;
        }
        interval("goal_offset", self.goal_offset)?;
        interval("anchor_offset", self.anchor_offset)?;
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.speed[0] < 0.0 || self.gap[0] <= 0.0 || self.max_time <= 0.0 {
            return Err(Error::Config("speeds, gaps and max_time must be positive".into()));
        }
        if self.goal_distance < 0.0 || self.ego_station() + self.goal_distance >= self.road_length {
            return Err(Error::Config("goal_distance must be >= 0 and leave the goal region on the road".into()));
        }
        if self.vehicles_ahead > self.vehicles {
            return Err(Error::Config("vehicles_ahead exceeds vehicles".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BehaviorConfig {
    /// True 5-D bounds in the order of the IDM parameters.
    pub true_bounds: [[f64; 2]; 5],
    pub headway: [f64; 2],
    pub delta_min: f64,
    pub delta_max: f64,
    pub likelihood: LikelihoodConfig,
}

impl Default for BehaviorConfig {
    fn default() -> Self {
        let t = BehaviorSpace::default_true();
        let b = t.dims.iter().map(|d| [d.lower, d.upper]).collect::<Vec<_>>();
        Self {
            true_bounds: [b[0], b[1], b[2], b[3], b[4]],
            headway: BehaviorSpace::default_hypothesized().headway_bounds(),
            delta_min: 0.1,
            delta_max: 0.4,
            likelihood: LikelihoodConfig::default(),
        }
    }
}

impl BehaviorConfig {
    pub fn true_space(&self) -> Result<BehaviorSpace> {
        BehaviorSpace::true_5d(self.true_bounds)
    }

    /// Headway space with the other parameters at the midpoints of the true space.
    pub fn hypothesized_space(&self) -> Result<BehaviorSpace> {
        let mid = self.true_bounds.map(|[l, u]| 0.5 * (l + u));
        let reference = crate::behavior::IdmParameters::from_array(mid);
        BehaviorSpace::headway_1d(self.headway[0], self.headway[1], reference)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SafetyConfig {
    /// Scenario default when absent.
    pub envelope: Option<EnvelopeConfig>,
    pub collision_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub betas: Vec<f64>,
    pub planners: Vec<PlannerKind>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { betas: vec![0.2], planners: vec![PlannerKind::Rcrsbg] }
    }
}

/// Complete experiment description, read from one TOML file.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: ScenarioConfig,
    pub behavior: BehaviorConfig,
    pub safety: SafetyConfig,
    pub planner: PlannerConfig,
    pub sweep: SweepConfig,
    pub execute: ExecuteMode,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.planner.validate()?;
        self.behavior.true_space()?;
        self.behavior.hypothesized_space()?;
        if !(0.0..=1.0).contains(&self.behavior.delta_min) || !(self.behavior.delta_min..=1.0).contains(&self.behavior.delta_max) {
            return Err(Error::Config("need 0 <= delta_min <= delta_max <= 1".into()));
        }
        self.envelope().validate()?;
        if self.sweep.betas.is_empty() || self.sweep.planners.is_empty() {
            return Err(Error::Config("sweep needs at least one beta and one planner".into()));
        }
        for &b in &self.sweep.betas {
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::Config(format!("beta {b} outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn envelope(&self) -> EnvelopeConfig {
        self.safety.envelope.unwrap_or_else(|| match self.scenario.kind {
            ScenarioKind::FreewayEnter => EnvelopeConfig::freeway(),
            ScenarioKind::LeftTurn => EnvelopeConfig::left_turn(),
        })
    }
}
