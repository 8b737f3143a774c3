use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::idm::{idm_or_brake, IdmParameters};
use crate::error::{contract, Result};
use crate::seed::Rng;
use crate::world::{OtherAction, WorldState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    True5d,
    Hypothesized1dHeadway,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dimension {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
}

/// Box of admissible IDM parameters. The 1-D headway space varies only
/// `t_desired`; the remaining parameters are pinned to `reference`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BehaviorSpace {
    pub kind: SpaceKind,
    pub dims: Vec<Dimension>,
    pub reference: IdmParameters,
}

impl BehaviorSpace {
    pub fn true_5d(bounds: [[f64; 2]; 5]) -> Result<Self> {
        let dims = IdmParameters::DIMENSIONS
            .iter()
            .zip(bounds)
            .map(|(n, [lower, upper])| Dimension { name: n.to_string(), lower, upper })
            .collect();
        let mid = bounds.map(|[l, u]| 0.5 * (l + u));
        let space = Self { kind: SpaceKind::True5d, dims, reference: IdmParameters::from_array(mid) };
        space.validate()?;
        Ok(space)
    }

    pub fn headway_1d(lower: f64, upper: f64, reference: IdmParameters) -> Result<Self> {
        let space = Self {
            kind: SpaceKind::Hypothesized1dHeadway,
            dims: vec![Dimension { name: "t_desired".into(), lower, upper }],
            reference,
        };
        space.validate()?;
        Ok(space)
    }

    /// Default true space; the hypothesized space pins the other four
    /// parameters at these midpoints.
    pub fn default_true() -> Self {
        Self::true_5d([[8.3, 13.9], [0.5, 3.0], [1.0, 3.0], [1.0, 2.5], [1.0, 3.0]]).unwrap()
    }

    pub fn default_hypothesized() -> Self {
        let t = Self::default_true();
        Self::headway_1d(0.5, 3.0, t.reference).unwrap()
    }

    pub fn validate(&self) -> Result<()> {
        for d in &self.dims {
            if !(d.lower < d.upper) {
                return Err(contract(format!("dimension {} needs lower < upper", d.name)));
            }
        }
        match self.kind {
            SpaceKind::True5d if self.dims.len() != 5 => Err(contract("true space must have five dimensions")),
            SpaceKind::Hypothesized1dHeadway if self.dims.len() != 1 || self.dims[0].name != "t_desired" => {
                Err(contract("hypothesized space varies exactly t_desired"))
            }
            _ => self.reference.validate(),
        }
    }

    pub fn headway_bounds(&self) -> [f64; 2] {
        let d = self.dims.iter().find(|d| d.name == "t_desired").expect("space has a headway dimension");
        [d.lower, d.upper]
    }

    fn bounds(&self) -> [[f64; 2]; 5] {
        let mut out = self.reference.to_array().map(|x| [x, x]);
        for d in &self.dims {
            let i = IdmParameters::DIMENSIONS.iter().position(|n| *n == d.name).expect("known IDM dimension");
            out[i] = [d.lower, d.upper];
        }
        out
    }
}

/// Hidden per-agent variation intervals and the agent's private stream.
#[derive(Debug, Clone)]
pub struct AgentTruthModel {
    pub intervals: [[f64; 2]; 5],
    rng: Rng,
}

impl AgentTruthModel {
    pub fn new(intervals: [[f64; 2]; 5], rng: Rng) -> Result<Self> {
        if intervals.iter().any(|[l, u]| l > u) {
            return Err(contract("truth interval with lower > upper"));
        }
        Ok(Self { intervals, rng })
    }

    /// Draws hidden intervals inside `space` with per-dimension widths
    /// between `delta_min` and `delta_max` (fractions of the full width).
    pub fn draw(space: &BehaviorSpace, delta_min: f64, delta_max: f64, bounds_rng: &mut Rng, stream: Rng) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta_min) || !(delta_min..=1.0).contains(&delta_max) {
            return Err(contract("need 0 <= delta_min <= delta_max <= 1"));
        }
        let intervals = space.bounds().map(|[lo, hi]| {
            let full = hi - lo;
            let width = full * (delta_min + (delta_max - delta_min) * bounds_rng.random::<f64>());
            let lower = lo + (full - width) * bounds_rng.random::<f64>();
            [lower, (lower + width).min(hi)]
        });
        Self::new(intervals, stream)
    }

    pub fn degenerate(params: IdmParameters, rng: Rng) -> Self {
        Self { intervals: params.to_array().map(|x| [x, x]), rng }
    }

    /// Samples a behavior state with an external stream, leaving the agent's own untouched.
    pub fn sample_with(&self, rng: &mut Rng) -> IdmParameters {
        IdmParameters::from_array(self.intervals.map(|[l, u]| l + (u - l) * rng.random::<f64>()))
    }
}

/// Fresh behavior state for this time step from the agent's hidden intervals.
pub fn sample_truth_state(model: &mut AgentTruthModel) -> IdmParameters {
    let mut rng = model.rng.clone();
    let p = model.sample_with(&mut rng);
    model.rng = rng;
    p
}

/// Action of non-ego agent `idx`: IDM under a freshly sampled behavior state.
pub fn simulate_other_agent(truth: &mut AgentTruthModel, state: &WorldState, idx: usize) -> Result<OtherAction> {
    if idx == crate::world::EGO || idx >= state.agents.len() {
        return Err(contract(format!("agent index {idx} is not a non-ego agent")));
    }
    let params = sample_truth_state(truth);
    let acc = idm_or_brake(&params, state.agents[idx].v, state.leader_of(idx));
    Ok(OtherAction { agent: state.agents[idx].id, acceleration: acc.min(state.config.max_other_accel) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::from_seed;

    #[test]
    fn defaults_are_valid() {
        let t = BehaviorSpace::default_true();
        assert_eq!(t.dims.len(), 5);
        let h = BehaviorSpace::default_hypothesized();
        assert_eq!(h.headway_bounds(), [0.5, 3.0]);
        assert!((h.reference.v_desired - 11.1).abs() < 1e-12);
    }

    #[test]
    fn rejects_empty_dimension() {
        assert!(BehaviorSpace::headway_1d(2.0, 2.0, BehaviorSpace::default_true().reference).is_err());
    }

    #[test]
    fn degenerate_intervals_sample_exactly() {
        let p = BehaviorSpace::default_true().reference;
        let mut m = AgentTruthModel::degenerate(p, from_seed(3));
        for _ in 0..5 {
            assert_eq!(sample_truth_state(&mut m), p);
        }
    }

    #[test]
    fn drawn_intervals_respect_width_bounds() {
        let space = BehaviorSpace::default_true();
        let mut rng = from_seed(11);
        for _ in 0..500 {
            let m = AgentTruthModel::draw(&space, 0.1, 0.4, &mut rng, from_seed(0)).unwrap();
            for (d, [l, u]) in space.dims.iter().zip(m.intervals) {
                let full = d.upper - d.lower;
                assert!(l >= d.lower && u <= d.upper);
                assert!(u - l >= 0.1 * full - 1e-9 && u - l <= 0.4 * full + 1e-9);
            }
        }
    }

    #[test]
    fn same_seed_same_sequence() {
        let space = BehaviorSpace::default_true();
        let run = || {
            let mut m = AgentTruthModel::draw(&space, 0.1, 0.4, &mut from_seed(5), from_seed(6)).unwrap();
            (0..20).map(|_| sample_truth_state(&mut m).t_desired).collect::<Vec<_>>()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn empirical_mean_within_three_sigma() {
        let (a, b) = (0.7, 2.2);
        let mut m = AgentTruthModel::new([[a, b]; 5], from_seed(99)).unwrap();
        let n = 100_000;
        let mean = (0..n).map(|_| sample_truth_state(&mut m).t_desired).sum::<f64>() / n as f64;
        // Uniform variance (b-a)^2/12; standard error of the mean over n draws.
        let se = (b - a) / 12f64.sqrt() / (n as f64).sqrt();
        assert!((mean - 0.5 * (a + b)).abs() < 3.0 * se);
    }
}
