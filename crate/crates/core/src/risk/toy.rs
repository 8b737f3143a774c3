//! Small enumerable games used as exact oracles.
//!
//! A toy game is a finite state machine. At every non-terminal state the ego
//! picks one of `ego_actions` and each other agent picks an action atom; the
//! joint choice selects a transition. Each other agent is of one hidden type
//! (hypothesis) for the whole sequence, drawn from its belief; a hypothesis is
//! a distribution over atoms.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{sequence_violation_fraction, RiskPair};
use crate::error::{contract, Error, Result};
use crate::seed::Rng;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ToyFlags {
    #[serde(default)]
    pub goal: bool,
    #[serde(default)]
    pub envelope: bool,
    #[serde(default)]
    pub collision: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToyTransition {
    pub ego: usize,
    /// One atom per other agent; empty matches any joint atom choice.
    #[serde(default)]
    pub others: Vec<usize>,
    pub next: usize,
    #[serde(default)]
    pub reward: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToyState {
    #[serde(default)]
    pub name: String,
    #[serde(default, flatten)]
    pub ego_flags: ToyFlags,
    #[serde(default)]
    pub terminal: bool,
    #[serde(default = "one")]
    pub ego_actions: usize,
    #[serde(default)]
    pub transitions: Vec<ToyTransition>,
    /// Per other agent indicators, for per-agent rewards.
    #[serde(default)]
    pub other_flags: Vec<ToyFlags>,
    /// Per-state override of `ToyGame::hypotheses`, same layout.
    #[serde(default)]
    pub hypotheses: Option<Vec<Vec<Vec<f64>>>>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToyGame {
    #[serde(default)]
    pub name: String,
    pub states: Vec<ToyState>,
    #[serde(default)]
    pub root: usize,
    /// Atom distribution `[agent][hypothesis][atom]`.
    #[serde(default)]
    pub hypotheses: Vec<Vec<Vec<f64>>>,
    /// Posterior `[agent][hypothesis]` at the root.
    #[serde(default)]
    pub belief: Vec<Vec<f64>>,
    /// True hypothesis per agent, for privileged-information planning.
    #[serde(default)]
    pub truth: Vec<usize>,
    #[serde(default = "unit")]
    pub discount: f64,
    #[serde(default = "unit")]
    pub tau: f64,
}

fn unit() -> f64 {
    1.0
}

impl ToyGame {
    pub fn from_toml(text: &str) -> Result<Self> {
        let game: Self = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        game.validate()?;
        Ok(game)
    }

    pub fn num_agents(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn num_hypotheses(&self) -> usize {
        self.hypotheses.first().map_or(1, Vec::len)
    }

    pub fn num_atoms(&self, agent: usize) -> usize {
        self.hypotheses[agent][0].len()
    }

    pub fn atom_distribution(&self, state: usize, agent: usize, hypothesis: usize) -> &[f64] {
        let table = self.states[state].hypotheses.as_ref().unwrap_or(&self.hypotheses);
        &table[agent][hypothesis]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.states.len();
        if self.root >= n {
            return Err(contract("root state out of range"));
        }
        let agents = self.num_agents();
        if self.belief.len() != agents {
            return Err(contract("need one belief vector per other agent"));
        }
        let k = self.num_hypotheses();
        let simplex = |p: &[f64]| p.iter().all(|x| *x >= 0.0) && (p.iter().sum::<f64>() - 1.0).abs() < 1e-9;
        for j in 0..agents {
            if self.belief[j].len() != k || !simplex(&self.belief[j]) {
                return Err(contract(format!("belief of agent {j} is not a distribution over {k} hypotheses")));
            }
        }
        if !self.truth.is_empty() && (self.truth.len() != agents || self.truth.iter().any(|t| *t >= k)) {
            return Err(contract("truth must name one hypothesis per agent"));
        }
        for (si, s) in self.states.iter().enumerate() {
            let table = s.hypotheses.as_ref().unwrap_or(&self.hypotheses);
            if table.len() != agents || table.iter().any(|h| h.len() != k || h.iter().any(|p| !simplex(p))) {
                return Err(contract(format!("state {si}: malformed hypothesis table")));
            }
            if s.terminal {
                continue;
            }
            if s.ego_actions == 0 {
                return Err(contract(format!("non-terminal state {si} has no ego action")));
            }
            for t in &s.transitions {
                if t.next >= n || t.ego >= s.ego_actions || (!t.others.is_empty() && t.others.len() != agents) {
                    return Err(contract(format!("state {si}: malformed transition {t:?}")));
                }
            }
            for a in 0..s.ego_actions {
                self.for_each_joint(si, &mut |joint| {
                    if self.lookup(si, a, joint).is_none() {
                        return Err(contract(format!("state {si}: no transition for ego {a}, others {joint:?}")));
                    }
                    Ok(())
                })?;
            }
        }
        Ok(())
    }

    fn for_each_joint(&self, state: usize, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
        let agents = self.num_agents();
        let sizes: Vec<usize> = (0..agents).map(|j| self.atom_distribution(state, j, 0).len()).collect();
        let mut joint = vec![0; agents];
        loop {
            f(&joint)?;
            let mut i = 0;
            while i < agents {
                joint[i] += 1;
                if joint[i] < sizes[i] {
                    break;
                }
                joint[i] = 0;
                i += 1;
            }
            if i == agents {
                return Ok(());
            }
        }
    }

    pub fn lookup(&self, state: usize, ego: usize, others: &[usize]) -> Option<&ToyTransition> {
        self.states[state]
            .transitions
            .iter()
            .find(|t| t.ego == ego && (t.others.is_empty() || t.others == others))
    }
}

/// Ego policy of a toy game: a distribution over ego actions per state.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyPolicy(pub Vec<Vec<f64>>);

impl ToyPolicy {
    pub fn uniform(game: &ToyGame) -> Self {
        Self(game.states.iter().map(|s| vec![1.0 / s.ego_actions.max(1) as f64; s.ego_actions.max(1)]).collect())
    }

    /// Point mass on `choice(state)` in every state.
    pub fn deterministic(game: &ToyGame, choice: impl Fn(usize) -> usize) -> Self {
        Self(
            (0..game.states.len())
                .map(|s| {
                    let mut p = vec![0.0; game.states[s].ego_actions.max(1)];
                    p[choice(s)] = 1.0;
                    p
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ActionValue {
    pub q_r: f64,
    pub rho_env: f64,
    pub rho_col: f64,
}

impl ActionValue {
    pub fn risk(&self) -> RiskPair {
        RiskPair { rho_env: self.rho_env, rho_col: self.rho_col }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Values with the root ego action fixed and `policy` afterwards.
    pub per_action: Vec<ActionValue>,
    /// Values with `policy` also at the root.
    pub policy: ActionValue,
    pub sequences: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub max_horizon: usize,
    pub max_sequences: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_horizon: 6, max_sequences: 1_000_000 }
    }
}

struct Enumerator<'a> {
    game: &'a ToyGame,
    policy: &'a ToyPolicy,
    horizon: usize,
    limits: OracleLimits,
    hyps: Vec<usize>,
    path: Vec<usize>,
    count: usize,
}

impl Enumerator<'_> {
    /// Accumulates `(weight, value)` over all sequences from the end of `path`.
    fn walk(&mut self, weight: f64, ret: f64, root_action: Option<usize>, acc: &mut ActionValue) -> Result<()> {
        let game = self.game;
        let state = *self.path.last().unwrap();
        let depth = self.path.len() - 1;
        if game.states[state].terminal || depth >= self.horizon {
            self.count += 1;
            if self.count > self.limits.max_sequences {
                return Err(Error::SizeLimit(format!("more than {} sequences", self.limits.max_sequences)));
            }
            let flags = |s: &usize| game.states[*s].ego_flags;
            acc.q_r += weight * ret;
            acc.rho_env += weight * sequence_violation_fraction(&self.path, |s| flags(s).envelope, game.tau);
            acc.rho_col += weight * sequence_violation_fraction(&self.path, |s| flags(s).collision, game.tau);
            return Ok(());
        }
        let ego_probs: Vec<f64> = match (depth, root_action) {
            (0, Some(a)) => (0..game.states[state].ego_actions).map(|i| if i == a { 1.0 } else { 0.0 }).collect(),
            _ => self.policy.0[state].clone(),
        };
        let discount = game.discount.powi(depth as i32);
        let mut joints = Vec::new();
        game.for_each_joint(state, &mut |j| {
            joints.push(j.to_vec());
            Ok(())
        })?;
        for (a, pa) in ego_probs.iter().enumerate() {
            if *pa == 0.0 {
                continue;
            }
            for joint in &joints {
                let p_joint: f64 = joint
                    .iter()
                    .enumerate()
                    .map(|(j, atom)| game.atom_distribution(state, j, self.hyps[j])[*atom])
                    .product();
                if p_joint == 0.0 {
                    continue;
                }
                let t = game.lookup(state, a, joint).expect("validated game");
                self.path.push(t.next);
                self.walk(weight * pa * p_joint, ret + discount * t.reward, root_action, acc)?;
                self.path.pop();
            }
        }
        Ok(())
    }
}

/// Exact expected return and violation risks by exhaustive enumeration.
pub fn brute_force_risk(game: &ToyGame, policy: &ToyPolicy, horizon: usize, limits: OracleLimits) -> Result<OracleResult> {
    game.validate()?;
    if horizon > limits.max_horizon {
        return Err(Error::SizeLimit(format!("horizon {horizon} exceeds {}", limits.max_horizon)));
    }
    if policy.0.len() != game.states.len() {
        return Err(contract("policy must cover every state"));
    }
    let agents = game.num_agents();
    let k = game.num_hypotheses();
    let mut assignments: Vec<(Vec<usize>, f64)> = vec![(Vec::new(), 1.0)];
    for j in 0..agents {
        assignments = assignments
            .into_iter()
            .flat_map(|(h, w)| {
                (0..k).filter(|&i| game.belief[j][i] > 0.0).map(move |i| {
                    let mut h = h.clone();
                    h.push(i);
                    (h, w * game.belief[j][i])
                })
            })
            .collect();
    }
    let n_actions = game.states[game.root].ego_actions;
    let mut per_action = vec![ActionValue::default(); n_actions];
    let mut pol = ActionValue::default();
    let mut count = 0;
    for (hyps, w) in assignments {
        let mut e = Enumerator { game, policy, horizon, limits, hyps, path: vec![game.root], count };
        for (a, slot) in per_action.iter_mut().enumerate() {
            e.walk(w, 0.0, Some(a), slot)?;
        }
        e.walk(w, 0.0, None, &mut pol)?;
        count = e.count;
    }
    Ok(OracleResult { per_action, policy: pol, sequences: count })
}

fn sample_index(p: &[f64], rng: &mut Rng) -> usize {
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

/// Monte Carlo estimate of the same quantities as [`brute_force_risk`] with
/// `policy` at the root, from `rollouts` sampled sequences.
pub fn monte_carlo_risk(game: &ToyGame, policy: &ToyPolicy, horizon: usize, rollouts: usize, rng: &mut Rng) -> ActionValue {
    let mut acc = ActionValue::default();
    for _ in 0..rollouts {
        let hyps: Vec<usize> = game.belief.iter().map(|b| sample_index(b, rng)).collect();
        let mut path = vec![game.root];
        let mut ret = 0.0;
        while !game.states[*path.last().unwrap()].terminal && path.len() - 1 < horizon {
            let s = *path.last().unwrap();
            let a = sample_index(&policy.0[s], rng);
            let joint: Vec<usize> = (0..game.num_agents()).map(|j| sample_index(game.atom_distribution(s, j, hyps[j]), rng)).collect();
            let t = game.lookup(s, a, &joint).expect("validated game");
            ret += game.discount.powi(path.len() as i32 - 1) * t.reward;
            path.push(t.next);
        }
        let flags = |s: &usize| game.states[*s].ego_flags;
        acc.q_r += ret;
        acc.rho_env += sequence_violation_fraction(&path, |s| flags(s).envelope, game.tau);
        acc.rho_col += sequence_violation_fraction(&path, |s| flags(s).collision, game.tau);
    }
    let n = rollouts.max(1) as f64;
    ActionValue { q_r: acc.q_r / n, rho_env: acc.rho_env / n, rho_col: acc.rho_col / n }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::from_seed;

    const FIGURE_TWO: &str = include_str!("../../tests/fixtures/figure_two.toml");

    #[test]
    fn single_deterministic_path() {
        let g = ToyGame::from_toml(
            r#"
            [[states]]
            transitions = [{ ego = 0, next = 1 }]
            [[states]]
            envelope = true
            transitions = [{ ego = 0, next = 2 }]
            [[states]]
            terminal = true
            "#,
        )
        .unwrap();
        let r = brute_force_risk(&g, &ToyPolicy::uniform(&g), 5, OracleLimits::default()).unwrap();
        assert_eq!(r.policy.rho_env, 1.0 / 3.0);
        assert_eq!(r.sequences, 2);
    }

    #[test]
    fn figure_two_tree() {
        let g = ToyGame::from_toml(FIGURE_TWO).unwrap();
        let r = brute_force_risk(&g, &ToyPolicy::uniform(&g), 5, OracleLimits::default()).unwrap();
        assert!((r.policy.rho_env - 0.35).abs() < 1e-12);
        assert!((r.policy.rho_col - 0.05).abs() < 1e-12);
    }

    #[test]
    fn uniform_two_branch() {
        // Ego picks uniformly between an all-violating length-2 branch and a clean one.
        let g = ToyGame::from_toml(
            r#"
            [[states]]
            ego_actions = 2
            transitions = [{ ego = 0, next = 1 }, { ego = 1, next = 2 }]
            [[states]]
            envelope = true
            terminal = true
            [[states]]
            terminal = true
            "#,
        )
        .unwrap();
        let r = brute_force_risk(&g, &ToyPolicy::uniform(&g), 5, OracleLimits::default()).unwrap();
        // Fractions 1/2 and 0 for length-2 sequences.
        assert!((r.policy.rho_env - 0.25).abs() < 1e-12);
        assert_eq!(r.per_action[0].rho_env, 0.5);
        assert_eq!(r.per_action[1].rho_env, 0.0);
    }

    #[test]
    fn size_limits_refuse() {
        let g = ToyGame::from_toml(FIGURE_TWO).unwrap();
        assert!(matches!(
            brute_force_risk(&g, &ToyPolicy::uniform(&g), 9, OracleLimits::default()),
            Err(Error::SizeLimit(_))
        ));
        let tight = OracleLimits { max_horizon: 5, max_sequences: 3 };
        assert!(matches!(brute_force_risk(&g, &ToyPolicy::uniform(&g), 5, tight), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn missing_transition_fails_validation() {
        let r = ToyGame::from_toml(
            r#"
            [[states]]
            ego_actions = 2
            transitions = [{ ego = 0, next = 1 }]
            [[states]]
            terminal = true
            "#,
        );
        assert!(r.is_err());
    }

    #[test]
    fn monte_carlo_agrees_with_enumeration() {
        let g = ToyGame::from_toml(FIGURE_TWO).unwrap();
        let n = 100_000;
        let mc = monte_carlo_risk(&g, &ToyPolicy::uniform(&g), 5, n, &mut from_seed(8));
        // Per-sequence fractions are bounded in [0, 1): binomial-style bound on the standard error.
        let se = |p: f64| (p * (1.0 - p) / n as f64).sqrt();
        assert!((mc.rho_env - 0.35).abs() < 3.0 * se(0.35));
        assert!((mc.rho_col - 0.05).abs() < 3.0 * se(0.05));
    }
}
