use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::json;

use qap_core::{
    derive_seed, generate_instance, parse_instance, write_instance, write_solution, Cost,
    GeneratorMeta, Instance,
};
use qap_experiment::{
    consolidated_report, parse_runs_csv, plot_data, preset_for, run_indexed, summarize_ttt,
    time_to_target, ttt_series, write_runs_csv, RunRow, SolverKind, SolverSpec, TttConfig,
};

use crate::config::{resolve_settings, CliError, FileConfig};
use crate::{GenerateArgs, ReportArgs, SolveArgs, TttArgs};

fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::data(format!("cannot read instance {}: {e}", path.display())))?;
    parse_instance(&text)
        .map_err(|e| CliError::data(format!("invalid instance {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::data(format!("cannot write {}: {e}", path.display())))
}

fn parse_solver(name: &str) -> Result<SolverKind, CliError> {
    name.parse::<SolverKind>().map_err(CliError::config)
}

fn instance_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".to_string())
}

pub fn solve(args: SolveArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let settings = resolve_settings(&args.common, &file)?;
    let solver = parse_solver(
        args.solver
            .as_deref()
            .or(file.solver.as_deref())
            .unwrap_or("hybrid"),
    )?;
    let runs = args.runs.or(file.runs).unwrap_or(1).max(1);
    let inst = read_instance(&args.instance)?;

    let spec = SolverSpec {
        kind: solver,
        rts_iterations: settings.rts_iterations,
        budget: settings.budget.clone(),
    };
    let results = run_indexed(runs as usize, settings.workers, |i| {
        let run_seed = derive_seed(settings.seed, i as u64);
        (run_seed, qap_experiment::run_solver(&inst, &spec, run_seed))
    });
    let (best_seed, best) = results
        .iter()
        .min_by_key(|(_, run)| run.record.best_cost)
        .expect("at least one run");

    let out_path = args
        .output
        .clone()
        .unwrap_or_else(|| args.instance.with_extension("sln"));
    write_file(
        &out_path,
        &write_solution(inst.n(), best.record.best_cost, &best.record.best_assignment),
    )?;

    let summary = json!({
        "instance": instance_stem(&args.instance),
        "solver": solver.name(),
        "seed": settings.seed,
        "seed_was_drawn": settings.seed_was_drawn,
        "runs": runs,
        "best_cost": best.record.best_cost.0,
        "best_run_seed": best_seed,
        "solution": out_path.display().to_string(),
        "total_time_s": results.iter().map(|(_, r)| r.total_seconds()).sum::<f64>(),
        "per_run": results
            .iter()
            .map(|(s, r)| json!({ "seed": s, "cost": r.record.best_cost.0 }))
            .collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    Ok(())
}

pub fn generate(args: GenerateArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let settings = resolve_settings(&args.common, &file)?;
    let max_entry = args.max_entry.unwrap_or(99);
    let inst = generate_instance(args.n, settings.seed, max_entry)
        .map_err(|e| CliError::config(e.to_string()))?;
    write_file(&args.output, &write_instance(&inst))?;

    let meta = GeneratorMeta::new(args.n, settings.seed, max_entry);
    let meta_path = sidecar_path(&args.output);
    write_file(&meta_path, &meta.to_json())?;

    let summary = json!({
        "instance": args.output.display().to_string(),
        "metadata": meta_path.display().to_string(),
        "n": args.n,
        "seed": settings.seed,
        "seed_was_drawn": settings.seed_was_drawn,
        "max_entry": max_entry,
        "rng_name": meta.rng_name,
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    Ok(())
}

fn sidecar_path(instance_path: &Path) -> PathBuf {
    let mut name = instance_path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

pub fn ttt(args: TttArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let settings = resolve_settings(&args.common, &file)?;
    let inst = read_instance(&args.instance)?;
    let stem = instance_stem(&args.instance);

    let solver_names = args
        .solver
        .clone()
        .or_else(|| file.solver.clone().map(|s| vec![s]))
        .unwrap_or_else(|| vec!["rts".into(), "hybrid".into()]);
    let mut solvers = Vec::new();
    for name in &solver_names {
        let kind = parse_solver(name)?;
        if !solvers.contains(&kind) {
            solvers.push(kind);
        }
    }

    let target = match args.target.or(file.target) {
        Some(t) => Cost(t),
        None => match preset_for(&stem) {
            Some(p) => Cost(p.target),
            None => {
                return Err(CliError::config(format!(
                    "no --target given and no published target known for {stem:?}"
                )))
            }
        },
    };
    let runs = args.runs.or(file.runs).unwrap_or(20).max(1);
    let cfg = TttConfig {
        max_attempts: args.max_attempts.or(file.max_attempts).unwrap_or(1000),
    };

    let mut rows = Vec::new();
    let mut per_solver = BTreeMap::new();
    for &kind in &solvers {
        let spec = SolverSpec {
            kind,
            rts_iterations: settings.rts_iterations,
            budget: settings.budget.clone(),
        };
        // Paired streams: measurement i uses the same master seed for
        // every solver, so comparisons share their random starts.
        let outcomes = run_indexed(runs as usize, settings.workers, |i| {
            time_to_target(&inst, target, &spec, derive_seed(settings.seed, i as u64), &cfg)
        });
        for (i, out) in outcomes.iter().enumerate() {
            rows.push(RunRow {
                instance: stem.clone(),
                solver: kind.name().into(),
                seed: derive_seed(settings.seed, i as u64),
                target: Some(target.0),
                attempts: out.attempts,
                time_s: out.time_s,
                final_cost: out.best_cost.0,
            });
        }
        per_solver.insert(kind.name().to_string(), outcomes);
    }

    let mut summary = summarize_ttt(&stem, target, &per_solver);
    if per_solver.values().all(|o| o.iter().all(|r| !r.reached)) {
        let csv = write_runs_csv(&rows);
        let prefix = output_prefix(&args);
        let _ = write_file(&with_suffix(&prefix, ".runs.csv"), &csv);
        return Err(CliError::unreached(format!(
            "no run reached target {target} within {} attempts; censoring report in {}",
            cfg.max_attempts,
            with_suffix(&prefix, ".runs.csv").display()
        )));
    }

    let prefix = output_prefix(&args);
    let csv = write_runs_csv(&rows);
    write_file(&with_suffix(&prefix, ".runs.csv"), &csv)?;
    let mut plots = Vec::new();
    for (name, outcomes) in &per_solver {
        let times: Vec<f64> = outcomes.iter().filter(|o| o.reached).map(|o| o.time_s).collect();
        if let Ok(series) = ttt_series(&times) {
            let path = with_suffix(&prefix, &format!(".{name}.ttt"));
            write_file(&path, &plot_data(&series))?;
            plots.push(path.display().to_string());
        }
    }

    // Context recorded with the summary so the numbers stay re-derivable.
    let normalizer = args
        .normalizer
        .or(file.normalizer)
        .or_else(|| preset_for(&stem).map(|p| p.improvement_threshold));
    let extra = json!({
        "seed": settings.seed,
        "seed_was_drawn": settings.seed_was_drawn,
        "runs_per_solver": runs,
        "max_attempts": cfg.max_attempts,
        "normalized_target": normalizer.and_then(|b| {
            qap_experiment::normalized_target(target, Cost(b)).ok()
        }),
        "plots": plots,
    });
    let mut summary_json =
        serde_json::to_value(&summary).expect("summary serializes");
    summary_json
        .as_object_mut()
        .expect("summary is an object")
        .extend(extra.as_object().expect("extra is an object").clone());
    let summary_text =
        serde_json::to_string_pretty(&summary_json).expect("summary serializes");
    write_file(&with_suffix(&prefix, ".summary.json"), &summary_text)?;

    match args.format.as_deref().or(file.format.as_deref()).unwrap_or("json") {
        "json" => println!("{summary_text}"),
        "csv" => print!("{csv}"),
        "plot" => {
            for (name, outcomes) in &per_solver {
                let times: Vec<f64> =
                    outcomes.iter().filter(|o| o.reached).map(|o| o.time_s).collect();
                if let Ok(series) = ttt_series(&times) {
                    println!("# {name}");
                    print!("{}", plot_data(&series));
                }
            }
        }
        other => return Err(CliError::config(format!("unknown format {other:?}"))),
    }
    summary.solvers.retain(|_, s| s.censored > 0);
    for (name, s) in &summary.solvers {
        eprintln!("warning: {} of {} {name} runs were censored and excluded from the series", s.censored, s.runs);
    }
    Ok(())
}

fn output_prefix(args: &TttArgs) -> PathBuf {
    args.output
        .clone()
        .unwrap_or_else(|| args.instance.with_extension(""))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

pub fn report(args: ReportArgs) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for path in &args.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
        let mut parsed = parse_runs_csv(&text)
            .map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
        rows.append(&mut parsed);
    }
    let report = consolidated_report(&rows, args.normalizer)
        .map_err(|e| CliError::unreached(e.to_string()))?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.output {
        Some(path) => write_file(path, &text)?,
        None => println!("{text}"),
    }
    Ok(())
}
