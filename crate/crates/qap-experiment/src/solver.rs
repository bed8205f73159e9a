use std::time::Instant;

use qap_core::{derive_seed, random_assignment, Cost, Instance, RunRecord};
use qap_rts::{rts_run, RtsParams};
use qap_vdss::{vdss_run, SearchBudget};

/// Which solver to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SolverKind {
    Rts,
    Vdss,
    Hybrid,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Rts => "rts",
            SolverKind::Vdss => "vdss",
            SolverKind::Hybrid => "hybrid",
        }
    }
}

impl std::fmt::Display for SolverKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SolverKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rts" => Ok(SolverKind::Rts),
            "vdss" => Ok(SolverKind::Vdss),
            "hybrid" => Ok(SolverKind::Hybrid),
            other => Err(format!("unknown solver {other:?}, expected rts, vdss, or hybrid")),
        }
    }
}

/// Everything needed to execute one solver attempt, minus the seed.
#[derive(Debug, Clone)]
pub struct SolverSpec {
    pub kind: SolverKind,
    /// Tabu search iterations; `None` means the size-standard `n^2`.
    pub rts_iterations: Option<u64>,
    pub budget: SearchBudget,
}

impl SolverSpec {
    pub fn new(kind: SolverKind) -> Self {
        Self {
            kind,
            rts_iterations: None,
            budget: SearchBudget::default(),
        }
    }

    fn rts_params(&self, n: usize, seed: u64) -> RtsParams {
        let mut params = RtsParams::for_size(n, seed);
        if let Some(iters) = self.rts_iterations {
            params.iterations = iters;
        }
        params
    }
}

/// One solver attempt with per-phase timings.
#[derive(Debug, Clone)]
pub struct SolverRun {
    pub kind: SolverKind,
    pub seed: u64,
    /// Combined result; for the hybrid this is the post-VDSS state.
    pub record: RunRecord,
    /// Best cost after the tabu phase, when one ran.
    pub rts_cost: Option<Cost>,
    pub rts_seconds: f64,
    pub vdss_seconds: f64,
}

impl SolverRun {
    pub fn total_seconds(&self) -> f64 {
        self.rts_seconds + self.vdss_seconds
    }
}

/// Runs one seeded solver attempt. The seed determines the random start
/// and the tabu tenure stream through separate derived streams, so a
/// single integer reproduces the whole attempt.
pub fn run_solver(inst: &Instance, spec: &SolverSpec, seed: u64) -> SolverRun {
    let n = inst.n();
    let start = random_assignment(n, derive_seed(seed, 1));
    let rts_seed = derive_seed(seed, 2);
    match spec.kind {
        SolverKind::Rts => {
            let t = Instant::now();
            let record = rts_run(inst, &start, &spec.rts_params(n, rts_seed));
            let rts_seconds = t.elapsed().as_secs_f64();
            SolverRun {
                kind: spec.kind,
                seed,
                rts_cost: Some(record.best_cost),
                record,
                rts_seconds,
                vdss_seconds: 0.0,
            }
        }
        SolverKind::Vdss => {
            let t = Instant::now();
            let record = vdss_run(inst, &start, &spec.budget);
            SolverRun {
                kind: spec.kind,
                seed,
                record,
                rts_cost: None,
                rts_seconds: 0.0,
                vdss_seconds: t.elapsed().as_secs_f64(),
            }
        }
        SolverKind::Hybrid => {
            let t = Instant::now();
            let rts_record = rts_run(inst, &start, &spec.rts_params(n, rts_seed));
            let rts_seconds = t.elapsed().as_secs_f64();
            let t = Instant::now();
            let mut record = vdss_run(inst, &rts_record.best_assignment, &spec.budget);
            let vdss_seconds = t.elapsed().as_secs_f64();
            record.iterations_used += rts_record.iterations_used;
            record.wall_time_s = rts_seconds + vdss_seconds;
            SolverRun {
                kind: spec.kind,
                seed,
                rts_cost: Some(rts_record.best_cost),
                record,
                rts_seconds,
                vdss_seconds,
            }
        }
    }
}

/// One tabu search from a seeded random start, then one variable-depth
/// search from the tabu result.
pub fn hybrid_run(
    inst: &Instance,
    seed: u64,
    rts_iterations: Option<u64>,
    budget: &SearchBudget,
) -> SolverRun {
    let spec = SolverSpec {
        kind: SolverKind::Hybrid,
        rts_iterations,
        budget: budget.clone(),
    };
    run_solver(inst, &spec, seed)
}
