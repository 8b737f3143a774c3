//! Risk-constrained interactive planning under behavior uncertainty.
//!
//! The crate is organised bottom-up:
//!
//! - [`world`]: deterministic lane-based traffic world and ego macro-actions.
//! - [`behavior`]: Intelligent Driver Model, behavior spaces, hypotheses and
//!   Bayesian belief tracking over them.
//! - [`safety`]: longitudinal safe-distance envelope and inflated collision check.
//! - [`risk`]: time-based violation risk of observation sequences and an exact
//!   enumeration oracle over small toy games.
//! - [`planner`]: multi-agent MCTS with Lagrangian risk constraints and a
//!   stochastic root policy.
//! - [`driving`]: the traffic world as a search game.
//! - [`baselines`]: single-objective and cooperative planners on the same engine.
//! - [`benchmark`]: scenario generation, closed-loop episodes, metrics, sweeps.

pub mod baselines;
pub mod behavior;
pub mod benchmark;
pub mod driving;
pub mod error;
pub mod planner;
pub mod risk;
pub mod safety;
pub mod seed;
pub mod world;

pub use error::{Error, Result};
