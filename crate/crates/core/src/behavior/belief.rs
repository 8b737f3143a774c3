use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::hypothesis::{hypothesis_action_likelihood, ActionContext, BehaviorHypothesis, LikelihoodConfig};
use crate::error::{contract, Result};
use crate::seed::Rng;
use crate::world::AgentId;

/// Posterior over hypotheses for each other agent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeliefState {
    pub beliefs: BTreeMap<AgentId, Vec<f64>>,
}

impl BeliefState {
    pub fn uniform(agents: impl IntoIterator<Item = AgentId>, k: usize) -> Self {
        let p = vec![1.0 / k as f64; k];
        Self { beliefs: agents.into_iter().map(|a| (a, p.clone())).collect() }
    }

    pub fn get(&self, agent: AgentId) -> Option<&[f64]> {
        self.beliefs.get(&agent).map(Vec::as_slice)
    }

    pub fn is_valid(&self) -> bool {
        self.beliefs.values().all(|p| p.iter().all(|x| *x >= 0.0) && (p.iter().sum::<f64>() - 1.0).abs() <= 1e-9)
    }

    /// Bayes update of one agent's posterior with a likelihood per hypothesis.
    pub fn update_with_likelihoods(&self, agent: AgentId, likelihoods: &[f64]) -> Result<Self> {
        let prior = self.get(agent).ok_or_else(|| contract(format!("no belief for agent {agent}")))?;
        if prior.len() != likelihoods.len() {
            return Err(contract("likelihood vector length differs from hypothesis count"));
        }
        let mut post: Vec<f64> = prior.iter().zip(likelihoods).map(|(p, l)| p * l).collect();
        let z: f64 = post.iter().sum();
        if !(z > 0.0) || !z.is_finite() {
            return Err(crate::Error::Degenerate("posterior normalizer is not positive".into()));
        }
        post.iter_mut().for_each(|p| *p /= z);
        let mut next = self.clone();
        next.beliefs.insert(agent, post);
        Ok(next)
    }

    /// Updates `agent`'s posterior from one observed acceleration. Agents
    /// without a leading vehicle carry no headway information and keep their
    /// posterior.
    pub fn update(
        &self,
        agent: AgentId,
        ctx: &ActionContext,
        observed: f64,
        hypotheses: &[BehaviorHypothesis],
        cfg: &LikelihoodConfig,
        rng: &mut Rng,
    ) -> Result<Self> {
        if ctx.leader.is_none() {
            return Ok(self.clone());
        }
        let lik: Vec<f64> = hypotheses.iter().map(|h| hypothesis_action_likelihood(h, ctx, observed, cfg, rng)).collect();
        self.update_with_likelihoods(agent, &lik)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behavior::idm::{idm_or_brake, LeaderContext};
    use crate::behavior::{partition_hypotheses, BehaviorSpace};
    use crate::seed::from_seed;
    use rand::Rng as _;

    #[test]
    fn uniform_likelihood_keeps_uniform() {
        let b = BeliefState::uniform([1, 2], 4);
        let post = b.update_with_likelihoods(1, &[0.3; 4]).unwrap();
        assert!(post.get(1).unwrap().iter().all(|p| (p - 0.25).abs() < 1e-15));
    }

    #[test]
    fn hand_bayes_two_hypotheses() {
        let eps = LikelihoodConfig::default().floor;
        let b = BeliefState::uniform([7], 2);
        let post = b.update_with_likelihoods(7, &[0.8, eps]).unwrap();
        let p = post.get(7).unwrap();
        assert!((p[0] - 0.8 / (0.8 + eps)).abs() < 1e-15);
        assert!((p[1] - eps / (0.8 + eps)).abs() < 1e-15);
    }

    #[test]
    fn no_leader_stays_uniform() {
        let hyps = partition_hypotheses(&BehaviorSpace::default_hypothesized(), 16).unwrap();
        let mut b = BeliefState::uniform([3], 16);
        let mut rng = from_seed(1);
        let ctx = ActionContext { speed: 9.0, leader: None };
        for _ in 0..50 {
            let a = rng.random_range(-2.0..1.0);
            b = b.update(3, &ctx, a, &hyps, &LikelihoodConfig::default(), &mut rng).unwrap();
        }
        assert_eq!(b, BeliefState::uniform([3], 16));
    }

    #[test]
    fn posterior_concentrates_on_true_partition() {
        let space = BehaviorSpace::default_hypothesized();
        let hyps = partition_hypotheses(&space, 4).unwrap();
        let true_k = 1;
        let [lo, hi] = hyps[true_k].headway;
        let mut rng = from_seed(21);
        let mut b = BeliefState::uniform([1], 4);
        let mut mass = vec![b.get(1).unwrap()[true_k]];
        for i in 0..12 {
            // Following at a range of gaps keeps the headway term informative.
            let ctx = ActionContext { speed: 10.0, leader: Some(LeaderContext { gap: 12.0 + i as f64, speed: 10.0 }) };
            let t = lo + 0.2 * (hi - lo) + 0.6 * (hi - lo) * rng.random::<f64>();
            let a = idm_or_brake(&hyps[true_k].params_at(t), ctx.speed, ctx.leader);
            b = b.update(1, &ctx, a, &hyps, &LikelihoodConfig::default(), &mut rng).unwrap();
            assert!(b.is_valid());
            mass.push(b.get(1).unwrap()[true_k]);
        }
        assert!(*mass.last().unwrap() > 0.5, "{mass:?}");
    }
}
