use serde::{Deserialize, Serialize};

/// Dual variables of the envelope and collision constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LagrangeState {
    pub lambda_env: f64,
    pub lambda_col: f64,
    /// Number of gradient steps taken.
    pub n: u64,
    pub alpha_0: f64,
    pub lambda_max: f64,
}

impl LagrangeState {
    pub fn new(alpha_0: f64, lambda_max: f64) -> Self {
        Self { lambda_env: 0.0, lambda_col: 0.0, n: 0, alpha_0, lambda_max }
    }

    /// Step size of the next update, `alpha_0 / (1 + n * alpha_0)`.
    pub fn step_size(&self) -> f64 {
        self.alpha_0 / (1.0 + self.n as f64 * self.alpha_0)
    }

    pub fn step(&mut self, rho_env_exp: f64, rho_col_exp: f64, beta: f64) {
        self.step_with(self.step_size(), rho_env_exp, rho_col_exp, beta);
    }

    /// Update with an explicit step size.
    pub fn step_with(&mut self, alpha: f64, rho_env_exp: f64, rho_col_exp: f64, beta: f64) {
        self.lambda_env = (self.lambda_env + alpha * (rho_env_exp - beta)).clamp(0.0, self.lambda_max);
        self.lambda_col = (self.lambda_col + alpha * rho_col_exp).clamp(0.0, self.lambda_max);
        self.n += 1;
    }

    pub fn weighted_risk(&self, rho_env: f64, rho_col: f64) -> f64 {
        self.lambda_env * rho_env + self.lambda_col * rho_col
    }
}
