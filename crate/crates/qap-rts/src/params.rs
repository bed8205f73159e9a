use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("iterations must be at least 1")]
    NoIterations,
    #[error("tabu tenure factors must satisfy 0 < min <= max, got {min} and {max}")]
    BadTenureFactors { min: f64, max: f64 },
    #[error("aspiration horizon must be at least 1")]
    NoAspiration,
}

/// Tabu search parameters.
///
/// [`RtsParams::for_size`] gives the standard setting for a problem of
/// size `n`: `n^2` iterations, tenure resampled each iteration from
/// `[0.9n, 1.1n]`, aspiration horizon `2n^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct RtsParams {
    pub iterations: u64,
    pub tabu_min_factor: f64,
    pub tabu_max_factor: f64,
    pub aspiration: u64,
    pub seed: u64,
    /// Capture a best-cost trace in the run record. Off by default; each
    /// improvement stores one point.
    pub trace: bool,
}

impl RtsParams {
    pub fn for_size(n: usize, seed: u64) -> Self {
        let n = n as u64;
        Self {
            iterations: n * n,
            tabu_min_factor: 0.9,
            tabu_max_factor: 1.1,
            aspiration: 2 * n * n,
            seed,
            trace: false,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.iterations < 1 {
            return Err(ParamError::NoIterations);
        }
        if !(self.tabu_min_factor > 0.0 && self.tabu_min_factor <= self.tabu_max_factor) {
            return Err(ParamError::BadTenureFactors {
                min: self.tabu_min_factor,
                max: self.tabu_max_factor,
            });
        }
        if self.aspiration < 1 {
            return Err(ParamError::NoAspiration);
        }
        Ok(())
    }

    /// Inclusive tenure bounds for problem size `n`.
    pub(crate) fn tenure_bounds(&self, n: usize) -> (u64, u64) {
        let lo = ((self.tabu_min_factor * n as f64).floor() as u64).max(1);
        let hi = ((self.tabu_max_factor * n as f64).ceil() as u64).max(lo);
        (lo, hi)
    }
}
