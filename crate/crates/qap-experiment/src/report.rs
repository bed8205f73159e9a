//! Run persistence and report assembly.
//!
//! Runs are stored as flat CSV (one row per time-to-target measurement),
//! summaries as JSON, and plot data as two-column text ready for external
//! plotting tools. Timing fields can be stripped canonically so that
//! everything else is byte-reproducible across invocations with the same
//! master seed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ttt::{improvement_factor, normalized_target, TttOutcome, TttSeries};
use qap_core::Cost;

pub const RUN_CSV_HEADER: &str = "instance,solver,seed,target,attempts,time_s,final_cost";

#[derive(Debug, Error, PartialEq)]
pub enum ReportError {
    #[error("CSV schema mismatch: expected header {RUN_CSV_HEADER:?}, got {found:?}")]
    SchemaMismatch { found: String },
    #[error("row {row}: expected 7 fields, got {found}")]
    FieldCount { row: usize, found: usize },
    #[error("row {row}: invalid {field} value {value:?}")]
    BadField {
        row: usize,
        field: &'static str,
        value: String,
    },
    #[error("no rows to report on")]
    NoRows,
}

/// One persisted run: a single time-to-target measurement (or plain
/// solve, in which case `target` is empty and `attempts` is 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub instance: String,
    pub solver: String,
    pub seed: u64,
    pub target: Option<i64>,
    pub attempts: u64,
    pub time_s: f64,
    pub final_cost: i64,
}

impl RunRow {
    fn to_csv_line(&self) -> String {
        debug_assert!(
            !self.instance.contains(',') && !self.instance.contains('\n'),
            "instance names must stay CSV-safe"
        );
        format!(
            "{},{},{},{},{},{},{}",
            self.instance,
            self.solver,
            self.seed,
            self.target.map_or(String::new(), |t| t.to_string()),
            self.attempts,
            self.time_s,
            self.final_cost
        )
    }
}

pub fn write_runs_csv(rows: &[RunRow]) -> String {
    let mut out = String::from(RUN_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

pub fn parse_runs_csv(text: &str) -> Result<Vec<RunRow>, ReportError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("").trim();
    if header != RUN_CSV_HEADER {
        return Err(ReportError::SchemaMismatch {
            found: header.to_string(),
        });
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let row = idx + 2; // 1-based, after the header
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(ReportError::FieldCount {
                row,
                found: fields.len(),
            });
        }
        let bad = |field: &'static str, value: &str| ReportError::BadField {
            row,
            field,
            value: value.to_string(),
        };
        rows.push(RunRow {
            instance: fields[0].to_string(),
            solver: fields[1].to_string(),
            seed: fields[2].parse().map_err(|_| bad("seed", fields[2]))?,
            target: if fields[3].is_empty() {
                None
            } else {
                Some(fields[3].parse().map_err(|_| bad("target", fields[3]))?)
            },
            attempts: fields[4].parse().map_err(|_| bad("attempts", fields[4]))?,
            time_s: fields[5].parse().map_err(|_| bad("time_s", fields[5]))?,
            final_cost: fields[6]
                .parse()
                .map_err(|_| bad("final_cost", fields[6]))?,
        });
    }
    Ok(rows)
}

/// Canonical timing exclusion for reproducibility comparisons: the same
/// CSV with every `time_s` zeroed. Costs, seeds, and attempt counts are
/// untouched.
pub fn strip_timing_csv(text: &str) -> Result<String, ReportError> {
    let mut rows = parse_runs_csv(text)?;
    for row in &mut rows {
        row.time_s = 0.0;
    }
    Ok(write_runs_csv(&rows))
}

/// Canonical timing exclusion for JSON documents: removes every field
/// whose name marks it as wall-clock derived (`time`/`seconds`/`t50`
/// fragments and the improvement factor, which is a ratio of times).
pub fn strip_timing_json(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.retain(|key, _| !is_timing_key(key));
            for v in map.values_mut() {
                strip_timing_json(v);
            }
        }
        serde_json::Value::Array(items) => {
            for v in items.iter_mut() {
                strip_timing_json(v);
            }
        }
        _ => {}
    }
}

fn is_timing_key(key: &str) -> bool {
    key.contains("time") || key.contains("seconds") || key.contains("t50") || key == "improvement_factor"
}

/// Two-column plot data: time then probability, one point per line.
pub fn plot_data(series: &TttSeries) -> String {
    let mut out = String::new();
    for (t, p) in series.points() {
        out.push_str(&format!("{t:.6} {p:.6}\n"));
    }
    out
}

/// Per-solver aggregation of a batch of time-to-target measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverTtt {
    pub runs: u64,
    pub reached: u64,
    /// Runs that hit the attempt cap; they carry no time and are never
    /// folded into the series.
    pub censored: u64,
    /// Median time-to-target; absent when every run was censored.
    pub t50: Option<f64>,
}

/// JSON summary of a time-to-target experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TttSummary {
    pub instance: String,
    pub target: i64,
    pub solvers: BTreeMap<String, SolverTtt>,
    /// `t50(rts) / t50(hybrid)`, present when both solvers have a t50.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub improvement_factor: Option<f64>,
}

impl TttSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary always serializes")
    }
}

/// Builds the summary, keeping censored runs out of every series.
pub fn summarize_ttt(
    instance: &str,
    target: Cost,
    per_solver: &BTreeMap<String, Vec<TttOutcome>>,
) -> TttSummary {
    let mut solvers = BTreeMap::new();
    for (name, outcomes) in per_solver {
        let times: Vec<f64> = outcomes
            .iter()
            .filter(|o| o.reached)
            .map(|o| o.time_s)
            .collect();
        let t50 = TttSeries::new(times).ok().map(|s| s.t50());
        solvers.insert(
            name.clone(),
            SolverTtt {
                runs: outcomes.len() as u64,
                reached: outcomes.iter().filter(|o| o.reached).count() as u64,
                censored: outcomes.iter().filter(|o| !o.reached).count() as u64,
                t50,
            },
        );
    }
    let improvement = match (
        solvers.get("rts").and_then(|s| s.t50),
        solvers.get("hybrid").and_then(|s| s.t50),
    ) {
        (Some(r), Some(h)) => improvement_factor(r, h).ok(),
        _ => None,
    };
    TttSummary {
        instance: instance.to_string(),
        target: target.0,
        solvers,
        improvement_factor: improvement,
    }
}

/// Published reference values for the five standard instances: best known
/// cost, the target cost below which the hybrid is measured, and the
/// threshold cost below which the hybrid starts paying off. The
/// thresholds double as the default normalizers for target normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstancePreset {
    pub name: &'static str,
    pub best_known: i64,
    pub improvement_threshold: i64,
    pub target: i64,
}

pub const TABLE1_PRESETS: [InstancePreset; 5] = [
    InstancePreset {
        name: "tai60a",
        best_known: 7_205_962,
        improvement_threshold: 7_320_000,
        target: 7_256_000,
    },
    InstancePreset {
        name: "tai80a",
        best_known: 13_511_780,
        improvement_threshold: 13_720_000,
        target: 13_620_000,
    },
    InstancePreset {
        name: "tai100a",
        best_known: 21_052_466,
        improvement_threshold: 21_360_000,
        target: 21_200_000,
    },
    InstancePreset {
        name: "pau200a",
        best_known: 89_282_330,
        improvement_threshold: 89_740_000,
        target: 89_460_000,
    },
    InstancePreset {
        name: "pau400a",
        best_known: 366_463_098,
        improvement_threshold: 367_600_000,
        target: 367_060_000,
    },
];

/// Looks up a preset by instance name (case-insensitive, file stems
/// accepted).
pub fn preset_for(name: &str) -> Option<&'static InstancePreset> {
    let stem = name.rsplit('/').next().unwrap_or(name);
    let stem = stem.strip_suffix(".dat").unwrap_or(stem).to_ascii_lowercase();
    TABLE1_PRESETS.iter().find(|p| p.name == stem)
}

/// One line of the consolidated report: what was found on an instance and
/// how the hybrid compares against plain tabu search at the target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub instance: String,
    pub runs: u64,
    pub best_found: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub improvement_threshold: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized_target: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub improvement_factor: Option<f64>,
}

/// Merges persisted runs into per-instance summary rows. Statistics are
/// order-free: merging two row sets equals reporting on their
/// concatenation. The improvement factor appears when both `rts` and
/// `hybrid` measurements at the row's target reached it.
pub fn consolidated_report(
    rows: &[RunRow],
    normalizer_override: Option<i64>,
) -> Result<Vec<ReportRow>, ReportError> {
    if rows.is_empty() {
        return Err(ReportError::NoRows);
    }
    let mut by_instance: BTreeMap<&str, Vec<&RunRow>> = BTreeMap::new();
    for row in rows {
        by_instance.entry(&row.instance).or_default().push(row);
    }
    let mut out = Vec::new();
    for (instance, rows) in by_instance {
        let preset = preset_for(instance);
        let best_found = rows.iter().map(|r| r.final_cost).min().expect("nonempty");
        let target = rows.iter().find_map(|r| r.target).or(preset.map(|p| p.target));
        let threshold = preset.map(|p| p.improvement_threshold);
        let normalizer = normalizer_override.or(threshold);
        let normalized = match (target, normalizer) {
            (Some(t), Some(b)) => normalized_target(Cost(t), Cost(b)).ok(),
            _ => None,
        };

        let t50_for = |solver: &str| -> Option<f64> {
            let times: Vec<f64> = rows
                .iter()
                .filter(|r| {
                    r.solver == solver
                        && r.target.is_some()
                        && r.target == target
                        && r.final_cost <= r.target.unwrap()
                })
                .map(|r| r.time_s)
                .collect();
            TttSeries::new(times).ok().map(|s| s.t50())
        };
        let factor = match (t50_for("rts"), t50_for("hybrid")) {
            (Some(r), Some(h)) => improvement_factor(r, h).ok(),
            _ => None,
        };

        out.push(ReportRow {
            instance: instance.to_string(),
            runs: rows.len() as u64,
            best_found,
            target,
            improvement_threshold: threshold,
            normalized_target: normalized,
            improvement_factor: factor,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rows() -> Vec<RunRow> {
        vec![
            RunRow {
                instance: "tai60a".into(),
                solver: "rts".into(),
                seed: 1,
                target: Some(7_400_000),
                attempts: 3,
                time_s: 1.5,
                final_cost: 7_390_000,
            },
            RunRow {
                instance: "tai60a".into(),
                solver: "hybrid".into(),
                seed: 2,
                target: Some(7_400_000),
                attempts: 1,
                time_s: 0.5,
                final_cost: 7_380_000,
            },
        ]
    }

    #[test]
    fn csv_round_trip() {
        let rows = sample_rows();
        let text = write_runs_csv(&rows);
        assert!(text.starts_with(RUN_CSV_HEADER));
        assert_eq!(parse_runs_csv(&text).unwrap(), rows);
    }

    #[test]
    fn header_mismatch_is_detected() {
        let err = parse_runs_csv("a,b,c\n").unwrap_err();
        assert!(matches!(err, ReportError::SchemaMismatch { .. }));
    }

    #[test]
    fn bad_field_is_located() {
        let text = format!("{RUN_CSV_HEADER}\ntai60a,rts,xyz,,1,0.5,100\n");
        let err = parse_runs_csv(&text).unwrap_err();
        assert_eq!(
            err,
            ReportError::BadField {
                row: 2,
                field: "seed",
                value: "xyz".into()
            }
        );
    }

    #[test]
    fn timing_stripping_zeroes_only_time() {
        let rows = sample_rows();
        let stripped = strip_timing_csv(&write_runs_csv(&rows)).unwrap();
        let parsed = parse_runs_csv(&stripped).unwrap();
        assert_eq!(parsed[0].time_s, 0.0);
        assert_eq!(parsed[0].final_cost, rows[0].final_cost);
        assert_eq!(parsed[0].attempts, rows[0].attempts);
    }

    #[test]
    fn json_timing_keys_are_removed_recursively() {
        let mut v: serde_json::Value = serde_json::json!({
            "t50": 1.0,
            "wall_time_s": 2.0,
            "improvement_factor": 1.3,
            "nested": {"rts_seconds": 0.1, "cost": 42},
            "list": [{"time_s": 5.0, "seed": 7}]
        });
        strip_timing_json(&mut v);
        assert_eq!(
            v,
            serde_json::json!({"nested": {"cost": 42}, "list": [{"seed": 7}]})
        );
    }

    #[test]
    fn plot_data_lists_time_probability_pairs() {
        let s = TttSeries::new(vec![3.0, 1.0]).unwrap();
        assert_eq!(plot_data(&s), "1.000000 0.250000\n3.000000 0.750000\n");
    }

    #[test]
    fn summary_reports_censoring_and_factor() {
        let mut per_solver = BTreeMap::new();
        per_solver.insert(
            "rts".to_string(),
            vec![
                TttOutcome { target: Cost(10), attempts: 2, reached: true, time_s: 4.0, best_cost: Cost(9) },
                TttOutcome { target: Cost(10), attempts: 5, reached: false, time_s: 9.0, best_cost: Cost(12) },
            ],
        );
        per_solver.insert(
            "hybrid".to_string(),
            vec![TttOutcome { target: Cost(10), attempts: 1, reached: true, time_s: 2.0, best_cost: Cost(8) }],
        );
        let summary = summarize_ttt("toy", Cost(10), &per_solver);
        assert_eq!(summary.solvers["rts"].censored, 1);
        assert_eq!(summary.solvers["rts"].t50, Some(4.0));
        assert_eq!(summary.improvement_factor, Some(2.0));
    }

    #[test]
    fn merging_row_sets_is_order_free() {
        let rows = sample_rows();
        let (a, b) = rows.split_at(1);
        let merged: Vec<RunRow> = a.iter().chain(b.iter()).cloned().collect();
        assert_eq!(
            consolidated_report(&merged, None).unwrap(),
            consolidated_report(&rows, None).unwrap()
        );
    }

    #[test]
    fn report_uses_table1_presets() {
        let report = consolidated_report(&sample_rows(), None).unwrap();
        assert_eq!(report.len(), 1);
        let row = &report[0];
        assert_eq!(row.improvement_threshold, Some(7_320_000));
        assert_eq!(row.best_found, 7_380_000);
        // Both solvers reached the target once each.
        assert_eq!(row.improvement_factor, Some(3.0));
    }

    #[test]
    fn empty_report_is_an_error() {
        assert_eq!(consolidated_report(&[], None).unwrap_err(), ReportError::NoRows);
    }

    #[test]
    fn preset_lookup_accepts_paths_and_case() {
        assert_eq!(preset_for("data/Tai60a.dat").unwrap().best_known, 7_205_962);
        assert_eq!(preset_for("pau400a").unwrap().target, 367_060_000);
        assert!(preset_for("nug30").is_none());
    }
}
