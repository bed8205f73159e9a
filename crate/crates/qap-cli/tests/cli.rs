//! End-to-end tests of the qapvdss binary: workflows, file outputs,
//! determinism, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

use qap_core::{parse_instance, parse_solution};

const TOY: &str = "2\n0 3\n3 0\n0 5\n5 0\n";
const ZERO_FLOW: &str = "3\n0 0 0\n0 0 0\n0 0 0\n0 2 3\n2 0 4\n3 4 0\n";

fn qapvdss(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qapvdss"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn solve_writes_a_valid_solution_and_reports_the_cost() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("toy.dat"), TOY).unwrap();
    let out = qapvdss(
        dir.path(),
        &["solve", "--instance", "toy.dat", "--solver", "hybrid", "--seed", "1"],
    );
    let summary = stdout_json(&out);
    assert_eq!(summary["best_cost"], 30);
    assert_eq!(summary["seed_was_drawn"], false);

    let inst = parse_instance(TOY).unwrap();
    let sln_text = std::fs::read_to_string(dir.path().join("toy.sln")).unwrap();
    let sln = parse_solution(&sln_text).unwrap();
    sln.validate(&inst).unwrap();
}

#[test]
fn solve_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("toy.dat"), TOY).unwrap();
    let mut files = Vec::new();
    for run in 0..2 {
        let out_name = format!("run{run}.sln");
        let out = qapvdss(
            dir.path(),
            &[
                "solve", "--instance", "toy.dat", "--solver", "rts", "--seed", "7", "--runs", "3",
                "--output", &out_name,
            ],
        );
        assert!(out.status.success());
        files.push(std::fs::read(dir.path().join(out_name)).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn solve_zero_flow_instance_costs_nothing() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("zero.dat"), ZERO_FLOW).unwrap();
    let out = qapvdss(
        dir.path(),
        &["solve", "--instance", "zero.dat", "--solver", "vdss", "--seed", "2"],
    );
    assert_eq!(stdout_json(&out)["best_cost"], 0);
}

#[test]
fn invalid_instance_exits_with_parse_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.dat"), "2\n0 3\n4 0\n0 5\n5 0\n").unwrap();
    let out = qapvdss(
        dir.path(),
        &["solve", "--instance", "bad.dat", "--seed", "1"],
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("asymmetric"), "diagnostic missing: {stderr}");
}

#[test]
fn generate_is_reproducible_and_documents_its_rng() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.dat", "b.dat"] {
        let out = qapvdss(
            dir.path(),
            &["generate", "--n", "12", "--seed", "9", "--output", name],
        );
        assert!(out.status.success());
    }
    let a = std::fs::read(dir.path().join("a.dat")).unwrap();
    let b = std::fs::read(dir.path().join("b.dat")).unwrap();
    assert_eq!(a, b);

    let inst = parse_instance(std::str::from_utf8(&a).unwrap()).unwrap();
    assert_eq!(inst.n(), 12);
    for i in 0..12 {
        for j in 0..12 {
            assert!((0..=99).contains(&inst.flow(i, j)));
            assert!((0..=99).contains(&inst.distance(i, j)));
        }
    }

    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.dat.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["rng_name"], "splitmix64");
    assert_eq!(meta["seed"], 9);
}

#[test]
fn ttt_emits_plot_points_summary_and_factor() {
    let dir = tempfile::tempdir().unwrap();
    let gen = qapvdss(
        dir.path(),
        &["generate", "--n", "6", "--seed", "4", "--output", "small.dat"],
    );
    assert!(gen.status.success());
    let out = qapvdss(
        dir.path(),
        &[
            "ttt", "--instance", "small.dat", "--target", "99999999", "--runs", "2", "--seed",
            "11",
        ],
    );
    let summary = stdout_json(&out);
    assert!(summary["improvement_factor"].is_number());
    assert_eq!(summary["solvers"]["rts"]["reached"], 2);

    for solver in ["rts", "hybrid"] {
        let plot = std::fs::read_to_string(dir.path().join(format!("small.{solver}.ttt"))).unwrap();
        let probs: Vec<&str> = plot
            .lines()
            .map(|l| l.split_whitespace().nth(1).unwrap())
            .collect();
        assert_eq!(probs, ["0.250000", "0.750000"]);
    }

    // Rows round-trip through the report command.
    let report = qapvdss(
        dir.path(),
        &["report", "--input", "small.runs.csv"],
    );
    let rows = stdout_json(&report);
    assert_eq!(rows[0]["instance"], "small");
    assert_eq!(rows[0]["runs"], 4);
}

#[test]
fn single_solver_ttt_omits_the_improvement_factor() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("zero.dat"), ZERO_FLOW).unwrap();
    let out = qapvdss(
        dir.path(),
        &[
            "ttt", "--instance", "zero.dat", "--solver", "rts", "--target", "0", "--runs", "2",
            "--seed", "3",
        ],
    );
    let summary = stdout_json(&out);
    assert!(summary.get("improvement_factor").is_none());
    assert_eq!(summary["solvers"]["rts"]["reached"], 2);
}

#[test]
fn unreached_target_reports_censoring_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let gen = qapvdss(
        dir.path(),
        &["generate", "--n", "6", "--seed", "4", "--output", "small.dat"],
    );
    assert!(gen.status.success());
    let out = qapvdss(
        dir.path(),
        &[
            "ttt", "--instance", "small.dat", "--target", "1", "--runs", "2", "--seed", "3",
            "--max-attempts", "3",
        ],
    );
    assert_eq!(out.status.code(), Some(4));
    // The censoring report still lands on disk.
    let csv = std::fs::read_to_string(dir.path().join("small.runs.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn ttt_without_target_on_unknown_instance_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("zero.dat"), ZERO_FLOW).unwrap();
    let out = qapvdss(dir.path(), &["ttt", "--instance", "zero.dat", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn report_merge_is_order_free_and_rejects_bad_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let header = "instance,solver,seed,target,attempts,time_s,final_cost";
    std::fs::write(
        dir.path().join("a.csv"),
        format!("{header}\nx,rts,1,100,2,1.5,90\n"),
    )
    .unwrap();
    std::fs::write(
        dir.path().join("b.csv"),
        format!("{header}\nx,hybrid,2,100,1,0.5,80\n"),
    )
    .unwrap();
    let ab = stdout_json(&qapvdss(
        dir.path(),
        &["report", "--input", "a.csv", "--input", "b.csv"],
    ));
    let ba = stdout_json(&qapvdss(
        dir.path(),
        &["report", "--input", "b.csv", "--input", "a.csv"],
    ));
    assert_eq!(ab, ba);
    assert_eq!(ab[0]["best_found"], 80);

    std::fs::write(dir.path().join("bad.csv"), "not,a,run,file\n").unwrap();
    let out = qapvdss(dir.path(), &["report", "--input", "bad.csv"]);
    assert_eq!(out.status.code(), Some(2));

    // A schema-valid file with no rows leaves nothing to report on.
    std::fs::write(dir.path().join("empty.csv"), format!("{header}\n")).unwrap();
    let out = qapvdss(dir.path(), &["report", "--input", "empty.csv"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn worker_count_env_var_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("toy.dat"), TOY).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qapvdss"))
        .current_dir(dir.path())
        .env("QAPVDSS_WORKERS", "many")
        .args(["solve", "--instance", "toy.dat", "--seed", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_qapvdss"))
        .current_dir(dir.path())
        .env("QAPVDSS_WORKERS", "2")
        .args(["solve", "--instance", "toy.dat", "--seed", "1", "--runs", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn config_file_supplies_defaults_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("toy.dat"), TOY).unwrap();
    std::fs::write(
        dir.path().join("conf.json"),
        r#"{"solver": "rts", "seed": 5, "runs": 2}"#,
    )
    .unwrap();
    let out = qapvdss(
        dir.path(),
        &["solve", "--instance", "toy.dat", "--config", "conf.json"],
    );
    let summary = stdout_json(&out);
    assert_eq!(summary["solver"], "rts");
    assert_eq!(summary["seed"], 5);
    assert_eq!(summary["runs"], 2);

    // A flag beats the same setting from the file.
    let out = qapvdss(
        dir.path(),
        &[
            "solve", "--instance", "toy.dat", "--config", "conf.json", "--solver", "vdss",
        ],
    );
    assert_eq!(stdout_json(&out)["solver"], "vdss");

    // Unknown config keys are rejected as config errors.
    std::fs::write(dir.path().join("typo.json"), r#"{"sover": "rts"}"#).unwrap();
    let out = qapvdss(
        dir.path(),
        &["solve", "--instance", "toy.dat", "--config", "typo.json"],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn drawn_seeds_are_recorded_in_output() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("toy.dat"), TOY).unwrap();
    let out = qapvdss(dir.path(), &["solve", "--instance", "toy.dat"]);
    let summary = stdout_json(&out);
    assert_eq!(summary["seed_was_drawn"], true);
    assert!(summary["seed"].is_u64());
}
