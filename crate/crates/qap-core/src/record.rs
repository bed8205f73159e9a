use crate::{Assignment, Cost};

/// One point of a best-cost trace: the best cost seen after `iteration`
/// solver steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TracePoint {
    pub iteration: u64,
    pub best_cost: Cost,
}

/// Outcome of a single solver run.
///
/// `best_cost` always equals the exact cost of `best_assignment`. All
/// fields except `wall_time_s` are deterministic for a fixed seed.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub best_assignment: Assignment,
    pub best_cost: Cost,
    pub iterations_used: u64,
    pub wall_time_s: f64,
    /// Best-cost trace, captured only when the run was asked to; the
    /// recorded best values are non-increasing.
    pub cost_trace: Option<Vec<TracePoint>>,
}

impl RunRecord {
    /// Equality on everything except wall-clock time; the determinism
    /// contract for solver runs.
    pub fn same_outcome(&self, other: &RunRecord) -> bool {
        self.best_assignment == other.best_assignment
            && self.best_cost == other.best_cost
            && self.iterations_used == other.iterations_used
            && self.cost_trace == other.cost_trace
    }
}
