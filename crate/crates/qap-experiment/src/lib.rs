//! Experiment harness: the RTS+VDSS hybrid, time-to-target measurement,
//! improvement-factor reporting, scaling studies, and run persistence.
//!
//! A hybrid run is one tabu search from a random start followed by one
//! variable-depth search seeded with the tabu result. Solver quality is
//! compared by time-to-target: repeat independent runs until a target
//! cost is reached, record the cumulative time, and read the empirical
//! distribution of those times.

mod report;
mod scaling;
mod solver;
mod ttt;
mod workers;

pub use report::{
    consolidated_report, parse_runs_csv, plot_data, preset_for, strip_timing_csv,
    strip_timing_json, summarize_ttt, write_runs_csv, InstancePreset, ReportError, ReportRow,
    RunRow, SolverTtt, TttSummary, RUN_CSV_HEADER, TABLE1_PRESETS,
};
pub use scaling::{fit_power_law, scaling_study, ScalingError, ScalingReport, ScalingRow};
pub use solver::{hybrid_run, run_solver, SolverKind, SolverRun, SolverSpec};
pub use ttt::{
    improvement_factor, normalized_target, time_to_target, ttt_series, TttConfig, TttError,
    TttOutcome, TttSeries,
};
pub use workers::run_indexed;
