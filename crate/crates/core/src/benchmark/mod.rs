//! Scenario generation, closed-loop episodes, metrics and sweeps.

pub mod config;
pub mod episode;
pub mod metrics;
pub mod output;
pub mod scenario;
pub mod sweep;

pub use config::{
    BehaviorConfig, ExecuteMode, ExperimentConfig, PlannerKind, SafetyConfig, ScenarioConfig, ScenarioKind, SweepConfig,
};
pub use episode::{driving_game, plan_step, run_episode, run_scripted_episode, EpisodeRecord, EpisodeSeeds, Outcome, StepDiagnostics};
pub use metrics::{beta_star, compute_report, expected_waiting_time, MetricsReport};
pub use scenario::{build_layout, generate_scenario, ScenarioInstance};
pub use sweep::{reports_from_records, run_sweep, SweepResult};
