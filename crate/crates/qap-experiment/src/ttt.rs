use thiserror::Error;

use qap_core::{derive_seed, Cost, Instance};

use crate::solver::{run_solver, SolverSpec};

#[derive(Debug, Error, PartialEq)]
pub enum TttError {
    #[error("a time-to-target series needs at least one time")]
    Empty,
    #[error("times must be positive, got {0}")]
    NonPositiveTime(f64),
    #[error("t50 values must be positive, got {0}")]
    NonPositiveT50(f64),
    #[error("the normalizer must be positive, got {0}")]
    NonPositiveNormalizer(i64),
}

/// Sorted run times with their empirical probabilities.
///
/// The i-th shortest of m times is plotted at probability
/// `(i - 1/2) / m`, the standard plotting positions for an empirical
/// distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct TttSeries {
    times: Vec<f64>,
}

impl TttSeries {
    pub fn new(mut times: Vec<f64>) -> Result<Self, TttError> {
        if times.is_empty() {
            return Err(TttError::Empty);
        }
        if let Some(&bad) = times.iter().find(|&&t| !(t > 0.0)) {
            return Err(TttError::NonPositiveTime(bad));
        }
        times.sort_by(|a, b| a.partial_cmp(b).expect("positive finite times"));
        Ok(Self { times })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// Always false: construction rejects empty series.
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The plot points `(t_i, P_i)` in ascending time order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let m = self.times.len() as f64;
        self.times
            .iter()
            .enumerate()
            .map(|(idx, &t)| (t, (idx as f64 + 0.5) / m))
            .collect()
    }

    /// Time to reach the target with 50% probability: the empirical curve
    /// evaluated at probability one half by linear interpolation, clamped
    /// to the extreme times outside the observed probability range.
    pub fn t50(&self) -> f64 {
        self.time_at_probability(0.5)
    }

    pub fn time_at_probability(&self, p: f64) -> f64 {
        let pts = self.points();
        if p <= pts[0].1 {
            return pts[0].0;
        }
        if p >= pts[pts.len() - 1].1 {
            return pts[pts.len() - 1].0;
        }
        for w in pts.windows(2) {
            let (t0, p0) = w[0];
            let (t1, p1) = w[1];
            if p0 <= p && p <= p1 {
                if p1 == p0 {
                    return t0;
                }
                return t0 + (p - p0) / (p1 - p0) * (t1 - t0);
            }
        }
        unreachable!("probability {p} inside the covered range")
    }
}

/// Builds the empirical time-to-target distribution from raw times.
pub fn ttt_series(times: &[f64]) -> Result<TttSeries, TttError> {
    TttSeries::new(times.to_vec())
}

/// Ratio of the two median times-to-target: how much faster the hybrid
/// reaches the target than tabu search alone.
pub fn improvement_factor(t50_rts: f64, t50_hybrid: f64) -> Result<f64, TttError> {
    if !(t50_rts > 0.0) {
        return Err(TttError::NonPositiveT50(t50_rts));
    }
    if !(t50_hybrid > 0.0) {
        return Err(TttError::NonPositiveT50(t50_hybrid));
    }
    Ok(t50_rts / t50_hybrid)
}

/// Target value relative to a per-instance calibration constant:
/// `(tau - b) / b`. Lets curves for different sizes share one axis.
pub fn normalized_target(tau: Cost, b: Cost) -> Result<f64, TttError> {
    if b.0 <= 0 {
        return Err(TttError::NonPositiveNormalizer(b.0));
    }
    Ok((tau.0 - b.0) as f64 / b.0 as f64)
}

/// Controls for one time-to-target measurement.
#[derive(Debug, Clone)]
pub struct TttConfig {
    /// Cap on restart attempts; hitting it without reaching the target
    /// records a censored outcome. Counting attempts rather than wall
    /// time keeps the outcome deterministic per seed.
    pub max_attempts: u64,
}

impl Default for TttConfig {
    fn default() -> Self {
        Self { max_attempts: 1000 }
    }
}

/// One time-to-target measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct TttOutcome {
    pub target: Cost,
    /// Attempts actually executed (the successful one included).
    pub attempts: u64,
    /// Whether the target was reached before the attempt cap.
    pub reached: bool,
    /// Cumulative wall time over all attempts.
    pub time_s: f64,
    /// Best cost seen across all attempts.
    pub best_cost: Cost,
}

/// Measures the time to reach `target`: independent seeded attempts of
/// the chosen solver run back to back until one attains `cost <= target`,
/// with the cumulative wall time recorded.
///
/// Attempt seeds derive deterministically from `seed`, so the attempt
/// count and every cost are reproducible; only the clock readings vary
/// between invocations. A censored outcome (attempt cap hit first) is
/// reported as such rather than folded into any series.
pub fn time_to_target(
    inst: &Instance,
    target: Cost,
    spec: &SolverSpec,
    seed: u64,
    cfg: &TttConfig,
) -> TttOutcome {
    let attempt_stream = derive_seed(seed, 3);
    let mut total = 0.0;
    let mut best = Cost(i64::MAX);
    for attempt in 0..cfg.max_attempts {
        let run = run_solver(inst, spec, derive_seed(attempt_stream, attempt));
        total += run.total_seconds();
        best = best.min(run.record.best_cost);
        if run.record.best_cost <= target {
            return TttOutcome {
                target,
                attempts: attempt + 1,
                // Tiny runs can under-resolve the clock; a nanosecond
                // floor keeps recorded times valid series members.
                time_s: total.max(1e-9),
                reached: true,
                best_cost: best,
            };
        }
    }
    TttOutcome {
        target,
        attempts: cfg.max_attempts,
        reached: false,
        time_s: total,
        best_cost: best,
    }
}
