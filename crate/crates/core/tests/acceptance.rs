//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, TestCaseError, TestRunner};

use common::*;
use rcrsbg::behavior::{partition_hypotheses, BeliefState, BehaviorSpace};
use rcrsbg::benchmark::*;
use rcrsbg::planner::plan;
use rcrsbg::risk::{brute_force_risk, sequence_violation_fraction, OracleLimits, ToyPolicy};
use rcrsbg::seed::from_seed;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn within(elapsed: Duration, budget_s: u64) -> bool {
    elapsed < Duration::from_secs(budget_s)
}

fn figure_two() -> Verdict {
    let t = Instant::now();
    let game = toy(FIGURE_TWO);
    let r = brute_force_risk(&game, &ToyPolicy::uniform(&game), 5, OracleLimits::default()).expect("oracle");
    let pass = (r.policy.rho_env - 0.35).abs() <= 1e-12 && (r.policy.rho_col - 0.05).abs() <= 1e-12 && within(t.elapsed(), 1);
    verdict(pass, format!("rho_env {:.15} rho_col {:.15} in {:.3?}", r.policy.rho_env, r.policy.rho_col, t.elapsed()))
}

fn oracle_equivalence() -> Verdict {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (name, text) in ORACLE_GAMES {
        let game = toy(text);
        let (_, stats) = search_toy(&game, &toy_config(&game, 1.0, 50_000), 7);
        let dev = oracle_deviation(&game, &stats);
        worst = worst.max(dev);
        parts.push(format!("{name} {dev:.4}"));
    }
    let pass = worst <= 0.02 && within(t.elapsed(), 120);
    verdict(pass, format!("max deviation {} (tolerance 0.02) in {:.1?}", parts.join(", "), t.elapsed()))
}

fn lp_toy() -> Verdict {
    let t = Instant::now();
    let game = toy(LP_TOY);
    let (policy, _) = search_toy(&game, &toy_config(&game, 0.2, 20_000), 1);
    let p = policy.probabilities();
    let pass = !policy.fallback
        && (p[0] - 0.6).abs() <= 0.05
        && (p[1] - 0.4).abs() <= 0.05
        && (0.18..=0.22).contains(&policy.rho_env_exp)
        && within(t.elapsed(), 60);
    verdict(pass, format!("policy ({:.3}, {:.3}) rho_env {:.4} in {:.2?}", p[0], p[1], policy.rho_env_exp, t.elapsed()))
}

struct Sweep {
    reports: Vec<MetricsReport>,
    elapsed: Duration,
}

impl Sweep {
    fn cell(&self, planner: PlannerKind, beta: f64) -> &MetricsReport {
        self.reports.iter().find(|r| r.planner == planner.name() && r.beta == beta).expect("cell present")
    }
}

const BETAS: [f64; 3] = [0.2, 0.4, 0.6];

fn desk_sweep() -> Sweep {
    let mut cfg = ExperimentConfig::default();
    cfg.scenario.trials = 20;
    cfg.planner.iterations = 2000;
    let planners = [PlannerKind::Rcrsbg, PlannerKind::RcrsbgFullinfo, PlannerKind::Mdp, PlannerKind::Cooperative];
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let t = Instant::now();
    let res = run_sweep(&cfg, &BETAS, &planners, jobs).expect("sweep runs");
    let sweep = Sweep { reports: res.reports, elapsed: t.elapsed() };
    for r in &sweep.reports {
        println!(
            "    {:16} beta {:.1}: P_suc {:.2} P_col {:.2} P_max {:.2} beta* {:.3}",
            r.planner, r.beta, r.p_suc, r.p_col, r.p_max, r.beta_star
        );
    }
    sweep
}

fn beta_tracking(sweep: &Sweep) -> Verdict {
    let stars: Vec<f64> = BETAS.iter().map(|&b| sweep.cell(PlannerKind::Rcrsbg, b).beta_star).collect();
    let close = BETAS.iter().zip(&stars).all(|(b, s)| (b - s).abs() <= 0.1);
    let monotone = stars.windows(2).all(|w| w[1] >= w[0]);
    let pass = close && monotone && within(sweep.elapsed, 30 * 60);
    let shown: Vec<String> = stars.iter().map(|s| format!("{s:.3}")).collect();
    verdict(pass, format!("beta* [{}] for beta [0.2, 0.4, 0.6], monotone {monotone}, sweep {:.0?}", shown.join(", "), sweep.elapsed))
}

fn baseline_ordering(sweep: &Sweep) -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for beta in [0.4, 0.6] {
        let ours = sweep.cell(PlannerKind::Rcrsbg, beta).p_suc;
        let mdp = sweep.cell(PlannerKind::Mdp, beta).p_suc;
        let coop = sweep.cell(PlannerKind::Cooperative, beta).p_suc;
        ok &= ours >= mdp && ours >= coop;
        parts.push(format!("beta {beta}: rcrsbg {ours:.2} mdp {mdp:.2} cooperative {coop:.2}"));
    }
    verdict(ok, format!("P_suc {}", parts.join("; ")))
}

fn fullinfo_safety(sweep: &Sweep) -> Verdict {
    let cols: Vec<f64> = BETAS.iter().map(|&b| sweep.cell(PlannerKind::RcrsbgFullinfo, b).p_col).collect();
    verdict(cols.iter().all(|&c| c == 0.0), format!("P_col {cols:?} over 20 trials per beta"))
}

fn record(outcome: Outcome, length: u32, violations: u32) -> EpisodeRecord {
    EpisodeRecord {
        trial: 0,
        planner: PlannerKind::Rcrsbg,
        beta: 0.2,
        outcome,
        length,
        violations,
        envelope_trace: Vec::new(),
        diagnostics: Vec::new(),
        seeds: EpisodeSeeds { scenario: 0, planner: 0, execute: 0, belief: 0 },
        initial_fingerprint: 0,
        error: None,
    }
}

fn property<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(RunnerConfig { cases, failure_persistence: None, ..RunnerConfig::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn invariants() -> Verdict {
    let t = Instant::now();
    let space = BehaviorSpace::default_hypothesized();
    let reference = space.reference;
    let oracle_game = toy(ORACLE_GAMES[1].1);
    let suites: Vec<(&str, Result<(), String>)> = vec![
        (
            "belief simplex",
            property(
                256,
                (2usize..8).prop_flat_map(|k| (prop::collection::vec(0.01f64..1.0, k), prop::collection::vec(prop::collection::vec(1e-6f64..10.0, k), 1..20))),
                |(prior, updates)| {
                    let z: f64 = prior.iter().sum();
                    let mut b = BeliefState::uniform([1], prior.len());
                    b.beliefs.insert(1, prior.iter().map(|p| p / z).collect());
                    for l in &updates {
                        b = b.update_with_likelihoods(1, l).map_err(|e| TestCaseError::fail(e.to_string()))?;
                        prop_assert!(b.is_valid());
                    }
                    Ok(())
                },
            ),
        ),
        (
            "risk range",
            property(256, prop::collection::vec(any::<bool>(), 1..40), |flags| {
                let f = sequence_violation_fraction(&flags, |x| *x, 0.2);
                prop_assert!((0.0..=1.0).contains(&f));
                Ok(())
            }),
        ),
        (
            "root risk range",
            property(16, any::<u64>(), |seed| {
                let (policy, stats) = search_toy(&oracle_game, &toy_config(&oracle_game, 0.3, 400), seed);
                for s in &stats {
                    prop_assert!((0.0..=1.0).contains(&s.rho_env) && (0.0..=1.0).contains(&s.rho_col));
                }
                prop_assert!((0.0..=1.0).contains(&policy.rho_env_exp) && (0.0..=1.0).contains(&policy.rho_col_exp));
                Ok(())
            }),
        ),
        (
            "partition coverage",
            property(256, (0.1f64..2.0, 0.01f64..3.0, 1usize..64, 0.0f64..=1.0), |(lo, width, k, u)| {
                let hi = lo + width;
                let sp = BehaviorSpace::headway_1d(lo, hi, reference).map_err(|e| TestCaseError::fail(e.to_string()))?;
                let hs = partition_hypotheses(&sp, k).map_err(|e| TestCaseError::fail(e.to_string()))?;
                prop_assert_eq!(hs.len(), k);
                prop_assert_eq!(hs[0].headway[0], lo);
                prop_assert_eq!(hs[k - 1].headway[1], hi);
                for w in hs.windows(2) {
                    prop_assert_eq!(w[0].headway[1], w[1].headway[0]);
                }
                let x = (lo + u * width).min(hi);
                let owners = hs
                    .iter()
                    .enumerate()
                    .filter(|(i, h)| h.headway[0] <= x && (x < h.headway[1] || (*i == k - 1 && x <= h.headway[1])))
                    .count();
                prop_assert_eq!(owners, 1);
                Ok(())
            }),
        ),
        (
            "determinism under seed",
            property(16, (any::<u64>(), 0u64..50), |(seed, trial)| {
                let mut cfg = ExperimentConfig::default();
                cfg.scenario.seed = seed;
                let a = generate_scenario(&cfg, trial).map_err(|e| TestCaseError::fail(e.to_string()))?;
                let b = generate_scenario(&cfg, trial).map_err(|e| TestCaseError::fail(e.to_string()))?;
                prop_assert_eq!(a.state.fingerprint(), b.state.fingerprint());
                let pc = toy_config(&oracle_game, 0.3, 300);
                let p = plan(&oracle_game, &oracle_game.root, &oracle_game.belief, &pc, &mut from_seed(seed)).unwrap();
                let q = plan(&oracle_game, &oracle_game.root, &oracle_game.belief, &pc, &mut from_seed(seed)).unwrap();
                prop_assert_eq!(serde_json::to_string(&p).unwrap(), serde_json::to_string(&q).unwrap());
                Ok(())
            }),
        ),
        (
            "outcome partition",
            property(
                256,
                prop::collection::vec((0u8..4, 1u32..40, 0u32..40), 1..40),
                |cells| {
                    let rs: Vec<EpisodeRecord> = cells
                        .iter()
                        .map(|&(o, l, v)| {
                            let o = [Outcome::Success, Outcome::Collision, Outcome::MaxTime, Outcome::Excluded][o as usize];
                            record(o, l, v.min(l))
                        })
                        .collect();
                    if rs.iter().all(|r| r.excluded()) {
                        return Ok(());
                    }
                    let rep = compute_report("rcrsbg", 0.2, &rs, 0.2, 6.0).map_err(|e| TestCaseError::fail(e.to_string()))?;
                    prop_assert!((rep.p_suc + rep.p_col + rep.p_max - 1.0).abs() <= 1e-12);
                    Ok(())
                },
            ),
        ),
        (
            "waiting time series",
            property(256, (0.0f64..=0.5, 0.0f64..=1.0, 0.0f64..6.0, 0.0f64..10.0), |(p_max, frac, t_suc, t_max)| {
                let p_suc = frac * (1.0 - p_max);
                let closed = expected_waiting_time(p_suc, p_max, t_suc, t_max).unwrap();
                let series: f64 = (0..=50).map(|k| (t_max * k as f64 + t_suc) * p_suc * p_max.powi(k)).sum();
                prop_assert!((closed - series).abs() <= 1e-9 * closed.abs().max(f64::MIN_POSITIVE), "{} vs {}", closed, series);
                Ok(())
            }),
        ),
    ];
    let failed: Vec<String> = suites.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    let pass = failed.is_empty() && within(t.elapsed(), 120);
    let detail = if failed.is_empty() {
        format!("{} property suites in {:.1?}", suites.len(), t.elapsed())
    } else {
        failed.join("; ")
    };
    verdict(pass, detail)
}

fn metric_formulas() -> Verdict {
    let exact = |a: f64, b: f64| (a - b).abs() <= 1e-12;
    let beta_cases = [
        (beta_star(&[record(Outcome::Success, 10, 0)]), 0.0),
        (beta_star(&[record(Outcome::Success, 10, 3)]), 0.3),
        (beta_star(&[record(Outcome::Success, 10, 1), record(Outcome::MaxTime, 5, 3)]), 4.0 / 15.0),
    ];
    let tw = |p_suc, p_max, t_suc, t_max| expected_waiting_time(p_suc, p_max, t_suc, t_max).unwrap();
    let tw_cases = [(tw(1.0, 0.0, 3.2, 6.0), 3.2), (tw(0.0, 0.4, 3.0, 6.0), 0.0), (tw(0.5, 0.5, 4.0, 6.0), 10.0)];
    let diverges = matches!(expected_waiting_time(0.3, 1.0, 4.0, 6.0), Err(rcrsbg::Error::Divergence(_)));
    let pass = beta_cases.iter().chain(&tw_cases).all(|&(a, b)| exact(a, b)) && diverges;
    verdict(pass, format!("beta* {:?}, t_w {:?}, P_max = 1 diverges {diverges}", beta_cases.map(|c| c.0), tw_cases.map(|c| c.0)))
}

fn main() {
    let mut results: Vec<(u8, &str, Verdict)> = Vec::new();
    results.push((1, "risk oracle reproduces the four-sequence example", figure_two()));
    results.push((2, "planner matches the brute-force oracle", oracle_equivalence()));
    results.push((3, "LP constraint satisfaction on the safe/risky toy", lp_toy()));
    results.push((8, "metric formulas", metric_formulas()));
    results.push((7, "invariant suites", invariants()));
    println!("running desk-scale freeway sweep (20 trials, 2000 iterations, 4 planners)");
    let sweep = desk_sweep();
    results.push((4, "beta-tracking at desk scale", beta_tracking(&sweep)));
    results.push((5, "baseline ordering of P_suc", baseline_ordering(&sweep)));
    results.push((6, "full-information planner has no collisions", fullinfo_safety(&sweep)));
    results.sort_by_key(|r| r.0);
    for (id, name, v) in &results {
        println!("{} criterion {id} ({name}): {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    let failed = results.iter().filter(|r| !r.2.pass).count();
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
