use serde::Serialize;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Shared run parameters, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_degree: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 2,
            m: 2,
            trials: DEFAULT_TRIALS,
            seed: 0,
            tol: DEFAULT_TOL,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n == 0 || self.m == 0 {
            return Err("n and m must be at least 1".into());
        }
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err("tol must be a positive finite number".into());
        }
        Ok(())
    }

    /// A check threshold: `base` is the bound at the default tolerance and
    /// scales linearly with `tol`.
    pub fn threshold(&self, base: f64) -> f64 {
        base * (self.tol / DEFAULT_TOL)
    }
}
