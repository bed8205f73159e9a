use std::time::Instant;

use qap_core::{cost, Assignment, Cost, Instance, RunRecord, TracePoint};

use crate::chain::apply_chain;
use crate::gain::GainTable;
use crate::search::{search_from_node, SearchBudget};

/// Runs the full multi-depth search to a local optimum.
///
/// Depths are visited in increasing order; within a depth every facility
/// serves once as the chain start node with a fresh move budget. The
/// first improving chain found is applied, the gain table is patched, and
/// the schedule restarts from the smallest depth and start node 0. The
/// run terminates when a complete pass over all depths and start nodes
/// finds no improvement.
///
/// `iterations_used` in the returned record counts accepted chains.
pub fn vdss_run(inst: &Instance, start: &Assignment, budget: &SearchBudget) -> RunRecord {
    assert_eq!(start.n(), inst.n(), "start assignment does not match instance size");
    let t0 = Instant::now();
    let n = inst.n();
    let mut a = start.clone();
    let mut current = cost(inst, &a).0;
    let mut table = GainTable::new(inst, &a);
    let mut accepted = 0u64;
    let mut trace = vec![TracePoint {
        iteration: 0,
        best_cost: Cost(current),
    }];

    'schedule: loop {
        for &depth in budget.depths() {
            for start_node in 0..n {
                let mut evals = budget.move_limit();
                let found = search_from_node(inst, &a, &table, start_node, depth, &mut evals);
                if let Some(chain) = found {
                    let gain = chain.total_gain();
                    debug_assert!(gain > 0, "accepted chains must strictly improve");
                    let next = apply_chain(&a, &chain);
                    table.update_after_chain(inst, &chain, &next);
                    a = next;
                    current -= gain;
                    accepted += 1;
                    trace.push(TracePoint {
                        iteration: accepted,
                        best_cost: Cost(current),
                    });
                    debug_assert_eq!(
                        current,
                        cost(inst, &a).0,
                        "applied cost change diverged from the chain gain"
                    );
                    #[cfg(debug_assertions)]
                    if n <= 24 {
                        debug_assert!(
                            table == GainTable::new(inst, &a),
                            "gain table diverged from a fresh build"
                        );
                    }
                    continue 'schedule;
                }
            }
        }
        break;
    }

    debug_assert_eq!(current, cost(inst, &a).0);
    RunRecord {
        best_assignment: a,
        best_cost: Cost(current),
        iterations_used: accepted,
        wall_time_s: t0.elapsed().as_secs_f64(),
        cost_trace: Some(trace),
    }
}
