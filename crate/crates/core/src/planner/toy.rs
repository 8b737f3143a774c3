use rand::Rng as _;

use super::game::{AgentOutcome, Game, Prediction, Stage};
use crate::error::{contract, Result};
use crate::risk::ToyGame;
use crate::seed::Rng;

fn draw(p: &[f64], rng: &mut Rng) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, x) in p.iter().enumerate() {
        acc += x;
        if u < acc {
            return i;
        }
    }
    p.iter().rposition(|x| *x > 0.0).unwrap_or(0)
}

impl Game for ToyGame {
    type State = usize;
    type Action = usize;

    fn tick(&self) -> f64 {
        self.tau
    }

    fn is_terminal(&self, state: &usize) -> bool {
        self.states[*state].terminal
    }

    fn ego_actions(&self, state: &usize) -> Vec<usize> {
        (0..self.states[*state].ego_actions).collect()
    }

    fn num_others(&self, _: &usize) -> usize {
        self.num_agents()
    }

    fn num_hypotheses(&self) -> usize {
        ToyGame::num_hypotheses(self)
    }

    fn sample_other(&self, state: &usize, agent: usize, prediction: Prediction, rng: &mut Rng) -> usize {
        let k = match prediction {
            Prediction::Hypothesis(k) => k,
            Prediction::Truth => self.truth.get(agent).copied().unwrap_or(0),
            Prediction::FullSpace => rng.random_range(0..ToyGame::num_hypotheses(self)),
        };
        draw(self.atom_distribution(*state, agent, k), rng)
    }

    fn cooperative_actions(&self, state: &usize, agent: usize) -> Vec<usize> {
        (0..self.atom_distribution(*state, agent, 0).len()).collect()
    }

    fn step(&self, state: &usize, ego: usize, others: &[usize], _depth: usize, per_agent: bool) -> Result<Stage<usize>> {
        let t = self
            .lookup(*state, ego, others)
            .ok_or_else(|| contract(format!("no transition from {state} for {ego}, {others:?}")))?;
        let next = &self.states[t.next];
        let f = next.ego_flags;
        let others = if per_agent {
            (0..self.num_agents())
                .map(|j| {
                    let o = next.other_flags.get(j).copied().unwrap_or_default();
                    AgentOutcome { goal: o.goal, env_time: if o.envelope { self.tau } else { 0.0 }, collision: o.collision }
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Stage {
            state: t.next,
            reward: t.reward,
            duration: self.tau,
            env_time: if f.envelope { self.tau } else { 0.0 },
            col_time: if f.collision { self.tau } else { 0.0 },
            goal: f.goal,
            collision: f.collision,
            others,
        })
    }
}
