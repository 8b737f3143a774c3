#![allow(dead_code)]

use rcrsbg::planner::{PlannerConfig, RootStats, Search, SearchSpec, StochasticPolicy};
use rcrsbg::planner::{Mode, PredictionKind};
use rcrsbg::risk::{brute_force_risk, OracleLimits, ToyGame, ToyPolicy};
use rcrsbg::seed::from_seed;

pub const FIGURE_TWO: &str = include_str!("../fixtures/figure_two.toml");
pub const LP_TOY: &str = include_str!("../fixtures/lp_toy.toml");

pub const ORACLE_GAMES: [(&str, &str); 3] = [
    ("oracle_belief", include_str!("../fixtures/oracle_belief.toml")),
    ("oracle_two_agents", include_str!("../fixtures/oracle_two_agents.toml")),
    ("oracle_deep", include_str!("../fixtures/oracle_deep.toml")),
];

pub fn toy(text: &str) -> ToyGame {
    ToyGame::from_toml(text).expect("fixture parses")
}

pub fn toy_config(game: &ToyGame, beta: f64, iterations: usize) -> PlannerConfig {
    PlannerConfig { beta, iterations, gamma: game.discount, ..PlannerConfig::default() }
}

/// Runs a constrained belief search and returns the policy and the root statistics.
pub fn search_toy(game: &ToyGame, config: &PlannerConfig, seed: u64) -> (StochasticPolicy, Vec<RootStats>) {
    let spec = SearchSpec { mode: Mode::Constrained, prediction: PredictionKind::Belief };
    let mut search = Search::new(game, &game.root, &game.belief, config, spec).expect("search starts");
    let mut rng = from_seed(seed);
    search.run(&mut rng).expect("search runs");
    let stats = search.root_stats();
    (search.finish("rcrsbg").expect("policy"), stats)
}

/// Largest absolute deviation of the root estimates from the oracle, over
/// actions and the three quantities.
pub fn oracle_deviation(game: &ToyGame, stats: &[RootStats]) -> f64 {
    let oracle = brute_force_risk(game, &ToyPolicy::uniform(game), 6, OracleLimits::default()).expect("oracle");
    stats
        .iter()
        .zip(&oracle.per_action)
        .flat_map(|(s, o)| [s.q_r - o.q_r, s.rho_env - o.rho_env, s.rho_col - o.rho_col])
        .fold(0.0, |m: f64, d| m.max(d.abs()))
}
