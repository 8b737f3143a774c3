//! Driver behavior: the IDM, behavior spaces and per-agent truth models,
//! hypothesis partitions and Bayesian belief tracking.

pub mod belief;
pub mod hypothesis;
pub mod idm;
pub mod space;

pub use belief::BeliefState;
pub use hypothesis::{hypothesis_action_likelihood, partition_hypotheses, BehaviorHypothesis, LikelihoodConfig};
pub use idm::{idm_acceleration, idm_or_brake, IdmParameters, LeaderContext, MAX_BRAKE};
pub use space::{sample_truth_state, simulate_other_agent, AgentTruthModel, BehaviorSpace, SpaceKind};
