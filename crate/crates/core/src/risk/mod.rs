//! Time-based violation risk of observation sequences.
//!
//! For a sequence `o = (o_0, o_1, ..., o_{n-1})` starting at the current
//! observation, the violation fraction is
//! `sum_{z=1}^{n-1} f(o_z) * tau_a / (n * tau_a)`: the starting observation is
//! not counted, the terminal one is, and the denominator is the full length.

pub mod toy;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};

pub use toy::{brute_force_risk, monte_carlo_risk, OracleLimits, OracleResult, ToyGame, ToyPolicy};

#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSequence<S> {
    pub states: Vec<S>,
    pub probability: Option<f64>,
}

impl<S> ObservationSequence<S> {
    pub fn new(states: Vec<S>) -> Result<Self> {
        if states.len() < 2 {
            return Err(contract("an observation sequence has at least two observations"));
        }
        Ok(Self { states, probability: None })
    }

    pub fn with_probability(mut self, p: f64) -> Self {
        self.probability = Some(p);
        self
    }

    pub fn violation_fraction(&self, f: impl Fn(&S) -> bool, tau_a: f64) -> f64 {
        sequence_violation_fraction(&self.states, f, tau_a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RiskPair {
    pub rho_env: f64,
    pub rho_col: f64,
}

pub fn sequence_violation_fraction<S>(states: &[S], f: impl Fn(&S) -> bool, tau_a: f64) -> f64 {
    if states.is_empty() {
        return 0.0;
    }
    let violated: f64 = states[1..].iter().filter(|s| f(s)).map(|_| tau_a).sum();
    violated / (states.len() as f64 * tau_a)
}

/// Probability-weighted mean of per-sequence fractions, given as `(weight, fraction)`.
pub fn expected_risk(weighted: &[(f64, f64)]) -> Result<f64> {
    let mut total = 0.0;
    let mut acc = 0.0;
    for &(w, frac) in weighted {
        if w < 0.0 {
            return Err(contract("negative sequence weight"));
        }
        total += w;
        acc += w * frac;
    }
    if total > 1.0 + 1e-9 {
        return Err(contract(format!("sequence weights sum to {total} > 1")));
    }
    Ok(acc)
}
