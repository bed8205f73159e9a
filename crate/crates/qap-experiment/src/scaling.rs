use serde::{Deserialize, Serialize};
use thiserror::Error;

use qap_core::{derive_seed, generate_instance};
use qap_vdss::SearchBudget;

use crate::solver::hybrid_run;

#[derive(Debug, Error, PartialEq)]
pub enum ScalingError {
    #[error("a scaling study needs at least 3 sizes, got {0}")]
    TooFewSizes(usize),
    #[error("runs per size must be at least 1")]
    NoRuns,
    #[error("size {0} is too small to generate")]
    BadSize(usize),
}

/// Median per-phase wall times for one problem size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub rts_median_s: f64,
    pub vdss_median_s: f64,
}

/// Fitted growth exponents for the two phases: wall time modeled as
/// `c * n^exponent`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    pub rts_exponent: f64,
    pub vdss_exponent: f64,
}

impl ScalingReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report always serializes")
    }
}

/// Least-squares slope of `ln t` against `ln n`: the growth exponent of
/// a power law through the measured points.
pub fn fit_power_law(points: &[(f64, f64)]) -> f64 {
    assert!(points.len() >= 2, "need at least two points to fit a slope");
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, t)| (n.ln(), t.ln())).collect();
    let m = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in logs {
        num += (x - mean_x) * (y - mean_y);
        den += (x - mean_x) * (x - mean_x);
    }
    num / den
}

/// Times hybrid runs on generated instances of each size and fits the
/// per-phase growth exponents on log-log axes.
///
/// Every size gets its own seeded instance and `runs_per_size` seeded
/// hybrid runs; the medians of the tabu-phase and chain-search-phase
/// times enter the fit. Runs execute sequentially so the timings are not
/// distorted by contention.
pub fn scaling_study(
    sizes: &[usize],
    runs_per_size: usize,
    seed: u64,
    rts_iterations: Option<u64>,
    budget: &SearchBudget,
) -> Result<ScalingReport, ScalingError> {
    if sizes.len() < 3 {
        return Err(ScalingError::TooFewSizes(sizes.len()));
    }
    if runs_per_size < 1 {
        return Err(ScalingError::NoRuns);
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let inst = generate_instance(n, derive_seed(seed, n as u64), 99)
            .map_err(|_| ScalingError::BadSize(n))?;
        let mut rts_times = Vec::with_capacity(runs_per_size);
        let mut vdss_times = Vec::with_capacity(runs_per_size);
        for run in 0..runs_per_size {
            let run_seed = derive_seed(seed, ((n as u64) << 20) | run as u64);
            let out = hybrid_run(&inst, run_seed, rts_iterations, budget);
            rts_times.push(out.rts_seconds);
            vdss_times.push(out.vdss_seconds);
        }
        rows.push(ScalingRow {
            n,
            rts_median_s: median(&mut rts_times),
            vdss_median_s: median(&mut vdss_times),
        });
    }
    let rts_points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.rts_median_s)).collect();
    let vdss_points: Vec<(f64, f64)> =
        rows.iter().map(|r| (r.n as f64, r.vdss_median_s)).collect();
    Ok(ScalingReport {
        rts_exponent: fit_power_law(&rts_points),
        vdss_exponent: fit_power_law(&vdss_points),
        rows,
    })
}

fn median(times: &mut [f64]) -> f64 {
    times.sort_by(|a, b| a.partial_cmp(b).expect("finite times"));
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law_is_recovered() {
        let points: Vec<(f64, f64)> = [60.0, 100.0, 200.0, 400.0]
            .iter()
            .map(|&n: &f64| (n, 3.0e-9 * n.powi(4)))
            .collect();
        let exp = fit_power_law(&points);
        assert!((exp - 4.0).abs() < 1e-6, "fitted {exp}");
    }

    #[test]
    fn too_few_sizes_is_an_error() {
        let budget = SearchBudget::default();
        assert_eq!(
            scaling_study(&[10, 20], 1, 0, None, &budget).unwrap_err(),
            ScalingError::TooFewSizes(2)
        );
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn small_study_produces_finite_exponents() {
        let budget = SearchBudget::default();
        let report = scaling_study(&[8, 12, 16], 2, 5, None, &budget).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(report.rts_exponent.is_finite());
        assert!(report.vdss_exponent.is_finite());
    }
}
