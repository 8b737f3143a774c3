mod common;

use common::*;
use rcrsbg::planner::{plan, PlannerConfig};
use rcrsbg::seed::from_seed;

#[test]
fn root_estimates_match_the_oracle() {
    for (name, text) in ORACLE_GAMES {
        let game = toy(text);
        let (_, stats) = search_toy(&game, &toy_config(&game, 1.0, 50_000), 7);
        let dev = oracle_deviation(&game, &stats);
        assert!(dev <= 0.02, "{name}: deviation {dev}");
    }
}

#[test]
fn lp_toy_converges_to_the_mixture() {
    let game = toy(LP_TOY);
    let (policy, _) = search_toy(&game, &toy_config(&game, 0.2, 20_000), 1);
    assert!(!policy.fallback);
    let p = policy.probabilities();
    assert!((p[0] - 0.6).abs() <= 0.05 && (p[1] - 0.4).abs() <= 0.05, "{p:?}");
    assert!((policy.rho_env_exp - 0.2).abs() <= 0.02, "{}", policy.rho_env_exp);
}

#[test]
fn multiplier_stabilizes_when_the_constraint_binds() {
    let game = toy(LP_TOY);
    let (policy, _) = search_toy(&game, &toy_config(&game, 0.2, 20_000), 3);
    let trace: Vec<f64> = policy.lambda_trace.iter().map(|l| l[0]).collect();
    let tail = &trace[trace.len() * 4 / 5..];
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let sd = (tail.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / tail.len() as f64).sqrt();
    assert!(mean > 0.0 && sd < 0.1 * mean, "mean {mean} sd {sd}");
}

#[test]
fn single_action_gives_point_mass() {
    let game = toy(
        r#"
        [[states]]
        transitions = [{ ego = 0, next = 1 }]
        [[states]]
        terminal = true
        "#,
    );
    let cfg = PlannerConfig { iterations: 50, ..PlannerConfig::default() };
    let policy = plan(&game, &game.root, &game.belief, &cfg, &mut from_seed(0)).unwrap();
    assert_eq!(policy.probabilities(), vec![1.0]);
    assert_eq!(policy.rho_env_exp, 0.0);
}

#[test]
fn same_seed_same_policy() {
    let game = toy(ORACLE_GAMES[1].1);
    let cfg = toy_config(&game, 0.3, 3000);
    let a = plan(&game, &game.root, &game.belief, &cfg, &mut from_seed(11)).unwrap();
    let b = plan(&game, &game.root, &game.belief, &cfg, &mut from_seed(11)).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn terminal_root_is_rejected() {
    let game = toy("[[states]]\nterminal = true\n");
    let cfg = PlannerConfig { iterations: 10, ..PlannerConfig::default() };
    assert!(plan(&game, &game.root, &game.belief, &cfg, &mut from_seed(0)).is_err());
}

