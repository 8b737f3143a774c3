//! Stage-wise multi-agent MCTS shared by all planners.

use std::collections::HashMap;

use rand::Rng as _;

use super::config::PlannerConfig;
use super::game::{Game, Prediction, Stage};
use super::lagrange::LagrangeState;
use super::policy::{solve_root_policy, RootStats, StochasticPolicy};
use crate::error::{contract, Result};
use crate::seed::Rng;

/// Objective and other-agent model of a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Goal return with Lagrangian risk constraints; others maximize the ego's
    /// multiplier-weighted risk.
    Constrained,
    /// Single-objective shaped reward; others minimize the ego's return.
    Shaped,
    /// Every agent maximizes its cooperation-weighted global shaped return
    /// over a discrete action set.
    Cooperative,
}

/// How other-agent actions are predicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictionKind {
    /// One hypothesis per agent and iteration, drawn from the belief.
    Belief,
    FullSpace,
    Truth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpec {
    pub mode: Mode,
    pub prediction: PredictionKind,
}

#[derive(Debug, Clone, Copy, Default)]
struct EgoStat {
    n: u32,
    q: f64,
    rho_env: f64,
    rho_col: f64,
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    action: u32,
    n: u32,
    value: f64,
}

#[derive(Debug, Clone, Default)]
struct Slot {
    n: u32,
    entries: Vec<Entry>,
}

#[derive(Debug, Clone, Copy)]
struct Summary {
    reward: f64,
    duration: f64,
    env_time: f64,
    col_time: f64,
}

struct Edge {
    child: usize,
    summary: Summary,
    /// Cooperative per-agent rewards, ego first.
    rewards: Vec<f64>,
}

struct Node<S, A> {
    state: S,
    depth: usize,
    terminal: bool,
    n: u32,
    actions: Vec<usize>,
    ego: Vec<EgoStat>,
    /// Distinct expanded actions per agent.
    pools: Vec<Vec<A>>,
    /// Widening slots per agent and hypothesis.
    slots: Vec<Vec<Slot>>,
    children: HashMap<(usize, Vec<u32>), Edge>,
}

/// Selected action of one other agent: slot, entry.
type OtherChoice = (usize, usize);

struct Step {
    node: usize,
    ego: usize,
    others: Vec<OtherChoice>,
    summary: Summary,
    rewards: Vec<f64>,
}

pub struct Search<'g, G: Game> {
    game: &'g G,
    config: &'g PlannerConfig,
    spec: SearchSpec,
    beliefs: &'g [Vec<f64>],
    nodes: Vec<Node<G::State, G::Action>>,
    agents: usize,
    pub lagrange: LagrangeState,
    pub lambda_trace: Vec<[f64; 2]>,
}

impl<'g, G: Game> Search<'g, G> {
    pub fn new(
        game: &'g G,
        root: &G::State,
        beliefs: &'g [Vec<f64>],
        config: &'g PlannerConfig,
        spec: SearchSpec,
    ) -> Result<Self> {
        config.validate()?;
        if game.is_terminal(root) {
            return Err(contract("cannot plan from a terminal state"));
        }
        let agents = game.num_others(root);
        if spec.prediction == PredictionKind::Belief && spec.mode != Mode::Cooperative {
            if beliefs.len() != agents {
                return Err(contract(format!("{} beliefs for {agents} other agents", beliefs.len())));
            }
            let k = game.num_hypotheses();
            for b in beliefs {
                if b.len() != k || b.iter().any(|p| *p < 0.0) || (b.iter().sum::<f64>() - 1.0).abs() > 1e-6 {
                    return Err(contract("belief is not a distribution over the hypotheses"));
                }
            }
        }
        let mut search = Self {
            game,
            config,
            spec,
            beliefs,
            nodes: Vec::new(),
            agents,
            lagrange: LagrangeState::new(config.alpha_0, config.lambda_max),
            lambda_trace: Vec::new(),
        };
        search.add_node(root.clone(), 0);
        if search.nodes[0].actions.is_empty() {
            return Err(contract("no valid ego action at the root"));
        }
        Ok(search)
    }

    fn slots_per_agent(&self) -> usize {
        match (self.spec.mode, self.spec.prediction) {
            (Mode::Cooperative, _) | (_, PredictionKind::FullSpace | PredictionKind::Truth) => 1,
            (_, PredictionKind::Belief) => self.game.num_hypotheses(),
        }
    }

    fn add_node(&mut self, state: G::State, depth: usize) -> usize {
        let terminal = self.game.is_terminal(&state);
        let actions = if terminal { Vec::new() } else { self.game.ego_actions(&state) };
        let slots = self.slots_per_agent();
        let mut pools = vec![Vec::new(); self.agents];
        let mut slot_table = vec![vec![Slot::default(); slots]; self.agents];
        if self.spec.mode == Mode::Cooperative && !terminal {
            for j in 0..self.agents {
                pools[j] = self.game.cooperative_actions(&state, j);
                slot_table[j][0].entries =
                    (0..pools[j].len()).map(|i| Entry { action: i as u32, n: 0, value: 0.0 }).collect();
            }
        }
        self.nodes.push(Node {
            state,
            depth,
            terminal,
            n: 0,
            ego: vec![EgoStat::default(); actions.len()],
            actions,
            pools,
            slots: slot_table,
            children: HashMap::new(),
        });
        self.nodes.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn prediction(&self, slot: usize) -> Prediction {
        match self.spec.prediction {
            PredictionKind::Belief => Prediction::Hypothesis(slot),
            PredictionKind::FullSpace => Prediction::FullSpace,
            PredictionKind::Truth => Prediction::Truth,
        }
    }

    fn ego_value(&self, s: &EgoStat) -> f64 {
        match self.spec.mode {
            Mode::Constrained => s.q - self.lagrange.weighted_risk(s.rho_env, s.rho_col),
            _ => s.q,
        }
    }

    fn select_ego(&self, node: usize) -> usize {
        let nd = &self.nodes[node];
        if let Some(i) = nd.ego.iter().position(|s| s.n == 0) {
            return i;
        }
        let ln = (nd.n.max(1) as f64).ln();
        let mut best = 0;
        let mut best_v = f64::NEG_INFINITY;
        for (i, s) in nd.ego.iter().enumerate() {
            let v = self.ego_value(s) + self.config.exploration * (ln / s.n as f64).sqrt();
            if v > best_v {
                best_v = v;
                best = i;
            }
        }
        best
    }

    fn select_other(&mut self, node: usize, agent: usize, slot: usize, rng: &mut Rng) -> usize {
        let limit = self.config.widening_limit(self.nodes[node].slots[agent][slot].n);
        let nd = &mut self.nodes[node];
        let s = &nd.slots[agent][slot];
        if self.spec.mode == Mode::Cooperative {
            if let Some(i) = s.entries.iter().position(|e| e.n == 0) {
                return i;
            }
            let ln = (s.n.max(1) as f64).ln();
            let mut best = 0;
            let mut best_v = f64::NEG_INFINITY;
            for (i, e) in s.entries.iter().enumerate() {
                let v = e.value + self.config.exploration * (ln / e.n as f64).sqrt();
                if v > best_v {
                    best_v = v;
                    best = i;
                }
            }
            return best;
        }
        if s.entries.is_empty() || (s.entries.len() as f64) < limit {
            let prediction = match self.spec.prediction {
                PredictionKind::Belief => Prediction::Hypothesis(slot),
                PredictionKind::FullSpace => Prediction::FullSpace,
                PredictionKind::Truth => Prediction::Truth,
            };
            let a = self.game.sample_other(&nd.state, agent, prediction, rng);
            let id = match nd.pools[agent].iter().position(|x| *x == a) {
                Some(id) => id,
                None => {
                    nd.pools[agent].push(a);
                    nd.pools[agent].len() - 1
                }
            } as u32;
            let s = &mut nd.slots[agent][slot];
            return match s.entries.iter().position(|e| e.action == id) {
                Some(i) => i,
                None => {
                    s.entries.push(Entry { action: id, n: 0, value: 0.0 });
                    s.entries.len() - 1
                }
            };
        }
        // Worst case for the ego, ties to the less visited action.
        let mut best = 0;
        for (i, e) in s.entries.iter().enumerate().skip(1) {
            let b = &s.entries[best];
            if e.value > b.value || (e.value == b.value && e.n < b.n) {
                best = i;
            }
        }
        best
    }

    fn summarize(&self, stage: &Stage<G::State>) -> (Summary, Vec<f64>) {
        let sh = &self.config.shaped;
        let (beta, t_plan) = (self.config.beta, self.config.t_plan);
        let reward = match self.spec.mode {
            Mode::Constrained => stage.reward,
            _ => sh.reward(stage.goal, stage.env_time, stage.collision, beta, t_plan),
        };
        let rewards = if self.spec.mode == Mode::Cooperative {
            std::iter::once(reward)
                .chain(stage.others.iter().map(|o| sh.reward(o.goal, o.env_time, o.collision, beta, t_plan)))
                .collect()
        } else {
            Vec::new()
        };
        let summary = Summary { reward, duration: stage.duration, env_time: stage.env_time, col_time: stage.col_time };
        (summary, rewards)
    }

    fn sample_hypotheses(&self, rng: &mut Rng) -> Vec<usize> {
        if self.slots_per_agent() == 1 {
            return vec![0; self.agents];
        }
        self.beliefs
            .iter()
            .map(|b| {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                for (k, p) in b.iter().enumerate() {
                    acc += p;
                    if u < acc {
                        return k;
                    }
                }
                b.iter().rposition(|p| *p > 0.0).unwrap_or(0)
            })
            .collect()
    }

    fn root_policy(&self) -> Result<StochasticPolicy> {
        solve_root_policy(&self.root_stats(), &self.lagrange, self.config)
    }

    pub fn root_stats(&self) -> Vec<RootStats> {
        let root = &self.nodes[0];
        root.actions
            .iter()
            .zip(&root.ego)
            .map(|(&a, s)| RootStats {
                action: a,
                label: self.game.ego_action_label(a),
                visits: s.n,
                q_r: s.q,
                rho_env: s.rho_env,
                rho_col: s.rho_col,
            })
            .collect()
    }

    /// Gradient step on the multipliers from the root risks of the current policy.
    fn lagrange_update(&mut self) -> Result<()> {
        if self.spec.mode != Mode::Constrained || self.nodes[0].ego.iter().any(|s| s.n == 0) {
            return Ok(());
        }
        let p = self.root_policy()?;
        let (env, col) = if p.fallback {
            // The fallback is an output safeguard; the search itself follows the greedy action.
            let g = p.per_action.iter().max_by(|a, b| a.q_lambda.total_cmp(&b.q_lambda)).expect("root has actions");
            (g.rho_env, g.rho_col)
        } else {
            (p.rho_env_exp, p.rho_col_exp)
        };
        self.lagrange.step(env, col, self.config.beta);
        Ok(())
    }

    /// Runs one search iteration.
    pub fn iterate(&mut self, rng: &mut Rng) -> Result<()> {
        self.lagrange_update()?;
        let hyps = self.sample_hypotheses(rng);
        let per_agent = self.spec.mode == Mode::Cooperative;
        let mut path: Vec<Step> = Vec::new();
        let mut tail: Vec<(Summary, Vec<f64>)> = Vec::new();
        let mut cur = 0;
        loop {
            let (terminal, depth) = (self.nodes[cur].terminal, self.nodes[cur].depth);
            if terminal || depth >= self.config.d_max {
                break;
            }
            let ego = self.select_ego(cur);
            let mut others = Vec::with_capacity(self.agents);
            let mut ids = Vec::with_capacity(self.agents);
            for (j, &k) in hyps.iter().enumerate() {
                let e = self.select_other(cur, j, k, rng);
                ids.push(self.nodes[cur].slots[j][k].entries[e].action);
                others.push((k, e));
            }
            let key = (ego, ids);
            if let Some(edge) = self.nodes[cur].children.get(&key) {
                path.push(Step { node: cur, ego, others, summary: edge.summary, rewards: edge.rewards.clone() });
                cur = edge.child;
                continue;
            }
            let nd = &self.nodes[cur];
            let actions: Vec<G::Action> = key.1.iter().enumerate().map(|(j, &id)| nd.pools[j][id as usize].clone()).collect();
            let stage = self.game.step(&nd.state, nd.actions[ego], &actions, depth, per_agent)?;
            let (summary, rewards) = self.summarize(&stage);
            let child = self.add_node(stage.state, depth + 1);
            self.nodes[cur].children.insert(key, Edge { child, summary, rewards: rewards.clone() });
            path.push(Step { node: cur, ego, others, summary, rewards });
            self.rollout(child, &hyps, rng, &mut tail)?;
            break;
        }
        self.backpropagate(&path, &tail);
        self.record_trace();
        Ok(())
    }

    fn rollout(&self, from: usize, hyps: &[usize], rng: &mut Rng, out: &mut Vec<(Summary, Vec<f64>)>) -> Result<()> {
        let game = self.game;
        let per_agent = self.spec.mode == Mode::Cooperative;
        let mut state = self.nodes[from].state.clone();
        let mut depth = self.nodes[from].depth;
        while depth < self.config.d_max && !game.is_terminal(&state) {
            let valid = game.ego_actions(&state);
            if valid.is_empty() {
                break;
            }
            let ego = valid[rng.random_range(0..valid.len())];
            let others: Vec<G::Action> = (0..self.agents)
                .map(|j| {
                    if per_agent {
                        let set = game.cooperative_actions(&state, j);
                        set[rng.random_range(0..set.len())].clone()
                    } else {
                        game.sample_other(&state, j, self.prediction(hyps[j]), rng)
                    }
                })
                .collect();
            let stage = game.step(&state, ego, &others, depth, per_agent)?;
            out.push(self.summarize(&stage));
            state = stage.state;
            depth += 1;
        }
        Ok(())
    }

    fn backpropagate(&mut self, path: &[Step], tail: &[(Summary, Vec<f64>)]) {
        let gamma = self.config.gamma;
        let tick = self.game.tick();
        let coop = self.spec.mode == Mode::Cooperative;
        let c = self.config.cooperation.factor;
        let mut ret = 0.0;
        let mut returns = vec![0.0; if coop { self.agents + 1 } else { 0 }];
        let (mut env, mut col, mut total) = (0.0, 0.0, 0.0);
        let mut absorb = |s: &Summary, r: &[f64], ret: &mut f64, returns: &mut Vec<f64>| {
            *ret = s.reward + gamma * *ret;
            for (g, x) in returns.iter_mut().zip(r) {
                *g = x + gamma * *g;
            }
            env += s.env_time;
            col += s.col_time;
            total += s.duration;
            (env / (tick + total), col / (tick + total))
        };
        for (s, r) in tail.iter().rev() {
            absorb(s, r, &mut ret, &mut returns);
        }
        let global = |returns: &[f64], i: usize| {
            let m = returns.len() - 1;
            if m == 0 {
                return returns[i];
            }
            let others: f64 = returns.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g).sum();
            (1.0 - c) * returns[i] + c * others / m as f64
        };
        for step in path.iter().rev() {
            let (rho_env, rho_col) = absorb(&step.summary, &step.rewards, &mut ret, &mut returns);
            let ego_sample = if coop { global(&returns, 0) } else { ret };
            let cost = match self.spec.mode {
                Mode::Constrained => self.lagrange.weighted_risk(rho_env, rho_col),
                Mode::Shaped => -ret,
                Mode::Cooperative => 0.0,
            };
            let nd = &mut self.nodes[step.node];
            nd.n += 1;
            let e = &mut nd.ego[step.ego];
            e.n += 1;
            let w = 1.0 / e.n as f64;
            e.q += (ego_sample - e.q) * w;
            e.rho_env += (rho_env - e.rho_env) * w;
            e.rho_col += (rho_col - e.rho_col) * w;
            for (j, &(k, i)) in step.others.iter().enumerate() {
                let value = if coop { global(&returns, j + 1) } else { cost };
                let slot = &mut nd.slots[j][k];
                slot.n += 1;
                let entry = &mut slot.entries[i];
                entry.n += 1;
                entry.value += (value - entry.value) / entry.n as f64;
            }
        }
    }

    fn record_trace(&mut self) {
        if self.spec.mode != Mode::Constrained {
            return;
        }
        let every = (self.config.iterations / 50).max(1) as u64;
        if self.lagrange.n % every == 0 && self.lagrange.n > 0 {
            self.lambda_trace.push([self.lagrange.lambda_env, self.lagrange.lambda_col]);
        }
    }

    /// Root policy after the search: the constrained LP, or a point mass on the
    /// most visited action for single-objective modes.
    pub fn finish(&mut self, planner: &str) -> Result<StochasticPolicy> {
        // The final solve sees the multipliers as the next iteration would.
        self.lagrange_update()?;
        let mut policy = self.root_policy()?;
        if self.spec.mode != Mode::Constrained {
            let stats = self.root_stats();
            let mut best = 0;
            for (i, s) in stats.iter().enumerate() {
                let b = &stats[best];
                if s.visits > b.visits || (s.visits == b.visits && s.q_r > b.q_r) {
                    best = i;
                }
            }
            for (i, a) in policy.per_action.iter_mut().enumerate() {
                a.probability = if i == best { 1.0 } else { 0.0 };
            }
            policy.fallback = false;
            policy.fill_expectations();
        }
        policy.planner = planner.to_string();
        policy.iterations = self.config.iterations;
        policy.lambda_trace = self.lambda_trace.clone();
        Ok(policy)
    }

    pub fn run(&mut self, rng: &mut Rng) -> Result<()> {
        for _ in 0..self.config.iterations {
            self.iterate(rng)?;
        }
        Ok(())
    }

    /// Visits and value estimate of every child slot entry of `agent` at the root.
    pub fn root_other_values(&self, agent: usize) -> Vec<(G::Action, u32, f64)> {
        let root = &self.nodes[0];
        root.slots[agent]
            .iter()
            .flat_map(|s| s.entries.iter())
            .map(|e| (root.pools[agent][e.action as usize].clone(), e.n, e.value))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::risk::ToyGame;
    use crate::seed::from_seed;

    fn game(text: &str) -> ToyGame {
        ToyGame::from_toml(text).unwrap()
    }

    const TWO_ACTIONS: &str = r#"
        [[states]]
        ego_actions = 2
        transitions = [{ ego = 0, next = 1 }, { ego = 1, next = 1 }]
        [[states]]
        terminal = true
    "#;

    const CONSTRAINED: SearchSpec = SearchSpec { mode: Mode::Constrained, prediction: PredictionKind::Belief };

    fn set_stats(search: &mut Search<'_, ToyGame>, stats: &[(f64, f64)]) {
        let root = &mut search.nodes[0];
        root.n = 2_000_000_000;
        for (e, &(q, env)) in root.ego.iter_mut().zip(stats) {
            *e = EgoStat { n: 1_000_000_000, q, rho_env: env, rho_col: 0.0 };
        }
    }

    #[test]
    fn ego_selection_uses_combined_value() {
        let g = game(TWO_ACTIONS);
        let cfg = PlannerConfig::default();
        let mut s = Search::new(&g, &0, &[], &cfg, CONSTRAINED).unwrap();
        s.lagrange.lambda_env = 1.0;
        set_stats(&mut s, &[(1.0, 0.5), (0.8, 0.1)]);
        assert_eq!(s.select_ego(0), 1);
        s.lagrange.lambda_env = 0.0;
        assert_eq!(s.select_ego(0), 0);
    }

    #[test]
    fn heavy_multiplier_prefers_the_safe_action() {
        let g = game(TWO_ACTIONS);
        let cfg = PlannerConfig::default();
        let mut s = Search::new(&g, &0, &[], &cfg, CONSTRAINED).unwrap();
        s.lagrange.lambda_env = 50.0;
        set_stats(&mut s, &[(0.5, 0.9), (0.5, 0.0)]);
        assert_eq!(s.select_ego(0), 1);
    }

    #[test]
    fn unvisited_actions_first() {
        let g = game(TWO_ACTIONS);
        let cfg = PlannerConfig::default();
        let mut s = Search::new(&g, &0, &[], &cfg, CONSTRAINED).unwrap();
        s.nodes[0].ego[0] = EgoStat { n: 5, q: 10.0, ..EgoStat::default() };
        s.nodes[0].n = 5;
        assert_eq!(s.select_ego(0), 1);
    }

    const ONE_OTHER: &str = r#"
        hypotheses = [[[0.5, 0.5]]]
        belief = [[1.0]]
        [[states]]
        transitions = [{ ego = 0, next = 1 }]
        [[states]]
        terminal = true
    "#;

    #[test]
    fn first_visit_samples_from_the_hypothesis() {
        let g = game(ONE_OTHER);
        let cfg = PlannerConfig::default();
        let beliefs = g.belief.clone();
        let mut s = Search::new(&g, &0, &beliefs, &cfg, CONSTRAINED).unwrap();
        let i = s.select_other(0, 0, 0, &mut from_seed(0));
        assert_eq!(i, 0);
        assert_eq!(s.nodes[0].slots[0][0].entries.len(), 1);
    }

    #[test]
    fn closed_widening_picks_the_worst_case() {
        let g = game(ONE_OTHER);
        let cfg = PlannerConfig { k_pw: 1.0, alpha_pw: 0.0, ..PlannerConfig::default() };
        let beliefs = g.belief.clone();
        let mut s = Search::new(&g, &0, &beliefs, &cfg, CONSTRAINED).unwrap();
        s.nodes[0].pools[0] = vec![0, 1];
        s.nodes[0].slots[0][0] =
            Slot { n: 10, entries: vec![Entry { action: 0, n: 5, value: 0.7 }, Entry { action: 1, n: 5, value: 0.1 }] };
        assert_eq!(s.select_other(0, 0, 0, &mut from_seed(0)), 0);
        s.nodes[0].slots[0][0].entries[1].value = 0.9;
        assert_eq!(s.select_other(0, 0, 0, &mut from_seed(0)), 1);
    }

    fn summary(env: f64) -> Summary {
        Summary { reward: 0.0, duration: 1.0, env_time: env, col_time: 0.0 }
    }

    #[test]
    fn backprop_counts_the_root_tick() {
        // Root plus two violating stages: two violations over three steps.
        let g = game(
            r#"
            [[states]]
            transitions = [{ ego = 0, next = 1 }]
            [[states]]
            envelope = true
            transitions = [{ ego = 0, next = 2 }]
            [[states]]
            envelope = true
            terminal = true
            "#,
        );
        let cfg = PlannerConfig::default();
        let mut s = Search::new(&g, &0, &[], &cfg, CONSTRAINED).unwrap();
        s.iterate(&mut from_seed(0)).unwrap();
        assert!((s.nodes[0].ego[0].rho_env - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn risk_is_a_running_mean_of_ratios() {
        let g = game("[[states]]\ntransitions = [{ ego = 0, next = 1 }]\n[[states]]\nterminal = true\n");
        let cfg = PlannerConfig::default();
        let mut s = Search::new(&g, &0, &[], &cfg, CONSTRAINED).unwrap();
        let step = |env| Step { node: 0, ego: 0, others: Vec::new(), summary: summary(env), rewards: Vec::new() };
        s.backpropagate(&[step(1.0)], &[]);
        assert_eq!(s.nodes[0].ego[0].rho_env, 0.5);
        s.backpropagate(&[step(0.0)], &[]);
        assert_eq!(s.nodes[0].ego[0].rho_env, 0.25);
    }

    #[test]
    fn shaped_mode_returns_the_most_visited_action() {
        let g = game(
            r#"
            [[states]]
            ego_actions = 2
            transitions = [{ ego = 0, next = 1, reward = 1.0 }, { ego = 1, next = 2 }]
            [[states]]
            goal = true
            terminal = true
            [[states]]
            collision = true
            terminal = true
            "#,
        );
        let cfg = PlannerConfig { iterations: 500, ..PlannerConfig::default() };
        let spec = SearchSpec { mode: Mode::Shaped, prediction: PredictionKind::FullSpace };
        let mut s = Search::new(&g, &0, &[], &cfg, spec).unwrap();
        s.run(&mut from_seed(2)).unwrap();
        let p = s.finish("mdp").unwrap();
        assert_eq!(p.probabilities(), vec![1.0, 0.0]);
        assert!(p.lambda_trace.is_empty());
    }

    #[test]
    fn bad_belief_is_rejected() {
        let g = game(ONE_OTHER);
        let cfg = PlannerConfig::default();
        let beliefs = vec![vec![0.5]];
        assert!(Search::new(&g, &0, &beliefs, &cfg, CONSTRAINED).is_err());
        assert!(Search::new(&g, &0, &[], &cfg, CONSTRAINED).is_err());
    }
}
