//! Deterministic lane-based traffic world.

pub mod geometry;
pub mod layout;
pub mod state;
pub mod traffic;

pub use geometry::{OrientedRect, Pose};
pub use layout::{ConflictZone, GoalRegion, Lane, LaneId, RoadLayout, ZoneKind};
pub use state::{
    ego_macro_rollforward, step, AgentId, AgentState, EgoAction, LaneChange, OtherAction, Side, TerminalFlag,
    WorldConfig, WorldState, EGO,
};
