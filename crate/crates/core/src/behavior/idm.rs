use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};

/// Hardest deceleration any vehicle can apply, as a magnitude.
pub const MAX_BRAKE: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdmParameters {
    pub v_desired: f64,
    /// Desired time headway [s].
    pub t_desired: f64,
    pub s_min: f64,
    pub a_factor: f64,
    /// Comfortable braking, positive magnitude.
    pub b_comft: f64,
}

impl IdmParameters {
    pub const DIMENSIONS: [&'static str; 5] = ["v_desired", "t_desired", "s_min", "a_factor", "b_comft"];

    pub fn validate(&self) -> Result<()> {
        if self.to_array().iter().all(|x| *x > 0.0) {
            Ok(())
        } else {
            Err(contract(format!("IDM parameters must be strictly positive: {self:?}")))
        }
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.v_desired, self.t_desired, self.s_min, self.a_factor, self.b_comft]
    }

    pub fn from_array(a: [f64; 5]) -> Self {
        Self { v_desired: a[0], t_desired: a[1], s_min: a[2], a_factor: a[3], b_comft: a[4] }
    }
}

/// Vehicle ahead on the same axis: bumper-to-bumper gap and its speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeaderContext {
    pub gap: f64,
    pub speed: f64,
}

/// Intelligent Driver Model acceleration, clamped to `[-MAX_BRAKE, a_factor]`.
pub fn idm_acceleration(params: &IdmParameters, v: f64, leader: Option<LeaderContext>) -> Result<f64> {
    if v < 0.0 {
        return Err(contract("speed must be nonnegative"));
    }
    let free = 1.0 - (v / params.v_desired).powi(4);
    let interaction = match leader {
        None => 0.0,
        Some(l) if l.gap <= 0.0 => {
            return Err(Error::Degenerate(format!("nonpositive gap {} to leader", l.gap)));
        }
        Some(l) => {
            let dv = v - l.speed;
            let s_star = params.s_min + v * params.t_desired + v * dv / (2.0 * (params.a_factor * params.b_comft).sqrt());
            (s_star / l.gap).powi(2)
        }
    };
    Ok((params.a_factor * (free - interaction)).clamp(-MAX_BRAKE, params.a_factor))
}

/// As [`idm_acceleration`], but a touching or overlapping leader yields
/// emergency braking instead of an error.
pub fn idm_or_brake(params: &IdmParameters, v: f64, leader: Option<LeaderContext>) -> f64 {
    match leader {
        Some(l) if l.gap <= 0.0 => -MAX_BRAKE,
        _ => idm_acceleration(params, v.max(0.0), leader).unwrap_or(-MAX_BRAKE),
    }
}
