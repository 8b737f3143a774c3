use serde::{Deserialize, Serialize};

use super::episode::{EpisodeRecord, Outcome};
use crate::error::{Error, Result};

/// Pooled violation time over simulated time: `sum violations / sum length`.
pub fn beta_star(records: &[EpisodeRecord]) -> f64 {
    let (v, l) = records
        .iter()
        .filter(|r| !r.excluded())
        .fold((0u64, 0u64), |(v, l), r| (v + r.violations as u64, l + r.length as u64));
    if l == 0 {
        0.0
    } else {
        v as f64 / l as f64
    }
}

/// Closed form of `sum_k (t_max * k + t_suc) * p_suc * p_max^k`.
pub fn expected_waiting_time(p_suc: f64, p_max: f64, t_suc: f64, t_max: f64) -> Result<f64> {
    if p_max >= 1.0 {
        return Err(Error::Divergence("expected waiting time diverges for P_max = 1".into()));
    }
    if !(0.0..=1.0).contains(&p_suc) || p_max < 0.0 || t_suc < 0.0 || t_max < 0.0 {
        return Err(crate::error::contract("need probabilities in [0, 1] and nonnegative durations"));
    }
    let q = 1.0 - p_max;
    Ok(p_suc * (t_suc / q + t_max * p_max / (q * q)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub planner: String,
    pub beta: f64,
    pub episodes: usize,
    pub excluded: usize,
    pub p_suc: f64,
    pub p_col: f64,
    pub p_max: f64,
    /// Mean duration of successful episodes [s]; absent without successes.
    pub t_suc: Option<f64>,
    pub beta_star: f64,
    /// Absent when every episode timed out.
    pub t_w: Option<f64>,
}

/// Metrics of one sweep cell. Excluded episodes are counted but not scored.
pub fn compute_report(planner: &str, beta: f64, records: &[EpisodeRecord], tau_a: f64, t_max: f64) -> Result<MetricsReport> {
    let scored: Vec<&EpisodeRecord> = records.iter().filter(|r| !r.excluded()).collect();
    if scored.is_empty() {
        return Err(Error::Contract("no episodes to score".into()));
    }
    let n = scored.len() as f64;
    let count = |o: Outcome| scored.iter().filter(|r| r.outcome == o).count();
    let (suc, col, max) = (count(Outcome::Success), count(Outcome::Collision), count(Outcome::MaxTime));
    let t_suc = (suc > 0).then(|| {
        scored.iter().filter(|r| r.outcome == Outcome::Success).map(|r| r.length as f64 * tau_a).sum::<f64>() / suc as f64
    });
    let (p_suc, p_col, p_max) = (suc as f64 / n, col as f64 / n, max as f64 / n);
    let owned: Vec<EpisodeRecord> = scored.iter().map(|r| (*r).clone()).collect();
    Ok(MetricsReport {
        planner: planner.to_string(),
        beta,
        episodes: records.len(),
        excluded: records.len() - scored.len(),
        p_suc,
        p_col,
        p_max,
        t_suc,
        beta_star: beta_star(&owned),
        t_w: expected_waiting_time(p_suc, p_max, t_suc.unwrap_or(0.0), t_max).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::{EpisodeSeeds, PlannerKind};
    use proptest::prelude::*;

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

    fn series(p_suc: f64, p_max: f64, t_suc: f64, t_max: f64, k: usize) -> f64 {
        (0..=k).map(|k| (t_max * k as f64 + t_suc) * p_suc * p_max.powi(k as i32)).sum()
    }

    #[test]
    fn beta_star_examples() {
        assert_eq!(beta_star(&[record(Outcome::Success, 10, 0)]), 0.0);
        assert!((beta_star(&[record(Outcome::Success, 10, 3)]) - 0.3).abs() < 1e-12);
        let two = [record(Outcome::Success, 10, 1), record(Outcome::MaxTime, 5, 3)];
        assert!((beta_star(&two) - 4.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn excluded_episodes_do_not_count() {
        let mut bad = record(Outcome::Excluded, 4, 4);
        bad.error = Some("planner failed".into());
        let rs = [record(Outcome::Success, 10, 3), bad];
        assert!((beta_star(&rs) - 0.3).abs() < 1e-12);
        let rep = compute_report("rcrsbg", 0.2, &rs, 0.2, 6.0).unwrap();
        assert_eq!((rep.episodes, rep.excluded, rep.p_suc), (2, 1, 1.0));
    }

    #[test]
    fn waiting_time_examples() {
        assert!((expected_waiting_time(1.0, 0.0, 3.2, 6.0).unwrap() - 3.2).abs() < 1e-12);
        assert_eq!(expected_waiting_time(0.0, 0.4, 3.0, 6.0).unwrap(), 0.0);
        assert!((expected_waiting_time(0.5, 0.5, 4.0, 6.0).unwrap() - 10.0).abs() < 1e-12);
        let s = series(0.5, 0.5, 4.0, 6.0, 50);
        assert!((s - 10.0).abs() / 10.0 < 1e-9, "{s}");
        assert!(matches!(expected_waiting_time(0.0, 1.0, 3.0, 6.0), Err(Error::Divergence(_))));
    }

    #[test]
    fn report_of_a_mixed_cell() {
        let rs = [record(Outcome::Success, 10, 2), record(Outcome::Collision, 4, 4), record(Outcome::MaxTime, 30, 0), record(Outcome::Success, 20, 0)];
        let rep = compute_report("mdp", 0.4, &rs, 0.2, 6.0).unwrap();
        assert_eq!((rep.p_suc, rep.p_col, rep.p_max), (0.5, 0.25, 0.25));
        assert!((rep.t_suc.unwrap() - 3.0).abs() < 1e-12);
        assert!((rep.beta_star - 6.0 / 64.0).abs() < 1e-12);
        assert!(compute_report("mdp", 0.4, &[], 0.2, 6.0).is_err());
    }

    fn outcome() -> impl Strategy<Value = Outcome> {
        prop_oneof![Just(Outcome::Success), Just(Outcome::Collision), Just(Outcome::MaxTime)]
    }

    fn records() -> impl Strategy<Value = Vec<EpisodeRecord>> {
        prop::collection::vec((outcome(), 1u32..40, 0u32..40), 1..30)
            .prop_map(|v| v.into_iter().map(|(o, l, x)| record(o, l, x.min(l))).collect())
    }

    proptest! {
        #[test]
        fn outcome_fractions_sum_to_one(rs in records()) {
            let rep = compute_report("rcrsbg", 0.2, &rs, 0.2, 6.0).unwrap();
            prop_assert!((rep.p_suc + rep.p_col + rep.p_max - 1.0).abs() < 1e-9);
        }

        #[test]
        fn beta_star_pools_over_batches(rs in records(), split in 0usize..30, rot in 0usize..30) {
            let split = split.min(rs.len());
            let (a, b) = rs.split_at(split);
            let pooled = |x: &[EpisodeRecord]| (x.iter().map(|r| r.violations).sum::<u32>(), x.iter().map(|r| r.length).sum::<u32>());
            let ((va, la), (vb, lb)) = (pooled(a), pooled(b));
            let whole = beta_star(&rs);
            prop_assert!((whole - (va + vb) as f64 / (la + lb) as f64).abs() < 1e-12);
            let mut rotated = rs.clone();
            rotated.rotate_left(rot % rs.len());
            prop_assert!((beta_star(&rotated) - whole).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&whole));
        }

        #[test]
        fn waiting_time_closed_form_matches_series(p_suc in 0.0f64..1.0, p_max in 0.0f64..0.5, t_suc in 0.0f64..6.0) {
            let p_max = p_max.min(1.0 - p_suc);
            let closed = expected_waiting_time(p_suc, p_max, t_suc, 6.0).unwrap();
            let s = series(p_suc, p_max, t_suc, 6.0, 50);
            prop_assert!((closed - s).abs() <= 1e-9 * closed.max(1e-12), "{} vs {}", closed, s);
        }
    }
}
