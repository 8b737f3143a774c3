use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::idm::{idm_or_brake, IdmParameters, LeaderContext};
use super::space::{BehaviorSpace, SpaceKind};
use crate::error::{contract, Result};
use crate::seed::Rng;

/// One partition of the hypothesized headway space; actions follow from a
/// uniform distribution over headways inside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BehaviorHypothesis {
    pub index: usize,
    /// `[lower, upper)`; the last partition is closed.
    pub headway: [f64; 2],
    pub reference: IdmParameters,
}

impl BehaviorHypothesis {
    pub fn params_at(&self, t_desired: f64) -> IdmParameters {
        IdmParameters { t_desired, ..self.reference }
    }

    pub fn sample_params(&self, rng: &mut Rng) -> IdmParameters {
        let [l, u] = self.headway;
        self.params_at(l + (u - l) * rng.random::<f64>())
    }

    /// Draws one action of this hypothesis in the given context.
    pub fn sample_action(&self, ctx: &ActionContext, rng: &mut Rng) -> f64 {
        idm_or_brake(&self.sample_params(rng), ctx.speed, ctx.leader)
    }

    pub fn width(&self) -> f64 {
        self.headway[1] - self.headway[0]
    }
}

/// What an observed acceleration depended on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionContext {
    pub speed: f64,
    pub leader: Option<LeaderContext>,
}

/// Equal-width partitions covering the hypothesized headway space exactly.
pub fn partition_hypotheses(space: &BehaviorSpace, k: usize) -> Result<Vec<BehaviorHypothesis>> {
    if k == 0 {
        return Err(contract("need at least one hypothesis"));
    }
    if space.kind != SpaceKind::Hypothesized1dHeadway {
        return Err(contract("hypotheses partition the 1-D headway space"));
    }
    let [lo, hi] = space.headway_bounds();
    let edge = |i: usize| if i == k { hi } else { lo + (hi - lo) * i as f64 / k as f64 };
    Ok((0..k)
        .map(|i| BehaviorHypothesis { index: i, headway: [edge(i), edge(i + 1)], reference: space.reference })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LikelihoodConfig {
    pub samples: usize,
    pub bin_width: f64,
    pub floor: f64,
}

impl Default for LikelihoodConfig {
    fn default() -> Self {
        Self { samples: 100, bin_width: 0.25, floor: 1e-6 }
    }
}

fn bin(a: f64, width: f64) -> i64 {
    (a / width).floor() as i64
}

/// Histogram density of the hypothesis' induced action distribution at the
/// observed acceleration, estimated from `cfg.samples` draws and floored.
pub fn hypothesis_action_likelihood(
    hyp: &BehaviorHypothesis,
    ctx: &ActionContext,
    observed: f64,
    cfg: &LikelihoodConfig,
    rng: &mut Rng,
) -> f64 {
    let target = bin(observed, cfg.bin_width);
    let hits = (0..cfg.samples).filter(|_| bin(hyp.sample_action(ctx, rng), cfg.bin_width) == target).count();
    let density = hits as f64 / (cfg.samples.max(1) as f64 * cfg.bin_width);
    density.max(cfg.floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::from_seed;

    fn space(lo: f64, hi: f64) -> BehaviorSpace {
        BehaviorSpace::headway_1d(lo, hi, BehaviorSpace::default_true().reference).unwrap()
    }

    #[test]
    fn halves() {
        let h = partition_hypotheses(&space(1.0, 2.0), 2).unwrap();
        assert_eq!(h[0].headway, [1.0, 1.5]);
        assert_eq!(h[1].headway, [1.5, 2.0]);
    }

    #[test]
    fn single_partition_is_whole_space() {
        let h = partition_hypotheses(&space(0.5, 3.0), 1).unwrap();
        assert_eq!(h[0].headway, [0.5, 3.0]);
    }

    #[test]
    fn zero_partitions_rejected() {
        assert!(partition_hypotheses(&space(0.5, 3.0), 0).is_err());
        assert!(partition_hypotheses(&BehaviorSpace::default_true(), 2).is_err());
    }

    #[test]
    fn sixteen_equal_widths() {
        let h = partition_hypotheses(&space(0.5, 3.0), 16).unwrap();
        let w = 2.5 / 16.0;
        assert!(h.iter().all(|p| (p.width() - w).abs() < 1e-12));
        assert!(h.windows(2).all(|p| p[0].headway[1] == p[1].headway[0]));
        assert_eq!(h[0].headway[0], 0.5);
        assert_eq!(h[15].headway[1], 3.0);
    }

    #[test]
    fn point_mass_gives_maximal_density() {
        let hyp = BehaviorHypothesis { index: 0, headway: [1.0, 1.0], reference: BehaviorSpace::default_true().reference };
        let ctx = ActionContext { speed: 10.0, leader: Some(LeaderContext { gap: 25.0, speed: 10.0 }) };
        let a = hyp.sample_action(&ctx, &mut from_seed(0));
        let cfg = LikelihoodConfig::default();
        let l = hypothesis_action_likelihood(&hyp, &ctx, a, &cfg, &mut from_seed(1));
        assert!((l - 1.0 / cfg.bin_width).abs() < 1e-12);
        let far = hypothesis_action_likelihood(&hyp, &ctx, a + 3.0, &cfg, &mut from_seed(1));
        assert_eq!(far, cfg.floor);
    }

    /// Brute-force density: exhaustive fine grid over the partition instead of random draws.
    fn grid_density(hyp: &BehaviorHypothesis, ctx: &ActionContext, observed: f64, width: f64) -> f64 {
        let n = 20_000;
        let target = (observed / width).floor();
        let hits = (0..n)
            .filter(|i| {
                let t = hyp.headway[0] + hyp.width() * (*i as f64 + 0.5) / n as f64;
                let a = idm_or_brake(&hyp.params_at(t), ctx.speed, ctx.leader);
                (a / width).floor() == target
            })
            .count();
        hits as f64 / (n as f64 * width)
    }

    #[test]
    fn disjoint_supports_rank_the_right_partition_first() {
        let hyps = partition_hypotheses(&space(0.5, 3.0), 2).unwrap();
        let ctx = ActionContext { speed: 11.0, leader: Some(LeaderContext { gap: 18.0, speed: 11.0 }) };
        let observed = idm_or_brake(&hyps[0].params_at(0.8), ctx.speed, ctx.leader);
        let oracle = [grid_density(&hyps[0], &ctx, observed, 0.25), grid_density(&hyps[1], &ctx, observed, 0.25)];
        assert!(oracle[0] > 0.0 && oracle[1] == 0.0);
        let cfg = LikelihoodConfig::default();
        let mut rng = from_seed(4);
        let l0 = hypothesis_action_likelihood(&hyps[0], &ctx, observed, &cfg, &mut rng);
        let l1 = hypothesis_action_likelihood(&hyps[1], &ctx, observed, &cfg, &mut rng);
        assert!(l0 > l1);
        assert_eq!(l1, cfg.floor);
    }
}
