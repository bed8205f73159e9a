use std::time::Instant;

use qap_core::{cost, Assignment, Cost, Instance, RunRecord, SplitMix64, TracePoint};

use crate::delta::SwapDeltaTable;
use crate::params::RtsParams;

/// Runs robust tabu search from `start` for the configured number of
/// iterations and returns the best assignment seen.
///
/// Each iteration scans all location pairs, picks the best admissible
/// swap, applies it, and forbids the two moved facilities from returning
/// to the locations they just left for a tenure drawn fresh from the
/// configured band. A tabu swap is admitted when it would improve on the
/// best cost seen, or when both of its facility-location pairs have not
/// been current for longer than the aspiration horizon. If every swap is
/// tabu and none aspirates, the least-recently-forbidden swap is taken so
/// small instances cannot stall.
pub fn rts_run(inst: &Instance, start: &Assignment, params: &RtsParams) -> RunRecord {
    params.validate().expect("invalid tabu search parameters");
    assert_eq!(start.n(), inst.n(), "start assignment does not match instance size");

    let t0 = Instant::now();
    let n = inst.n();
    let mut a = start.clone();
    let mut current = cost(inst, &a).0;
    let mut best = current;
    let mut best_a = a.clone();
    let mut trace = params.trace.then(|| {
        vec![TracePoint {
            iteration: 0,
            best_cost: Cost(best),
        }]
    });

    if n < 2 {
        return RunRecord {
            best_assignment: best_a,
            best_cost: Cost(best),
            iterations_used: 0,
            wall_time_s: t0.elapsed().as_secs_f64(),
            cost_trace: trace,
        };
    }

    let mut table = SwapDeltaTable::new(inst, &a);
    let mut rng = SplitMix64::new(params.seed);
    let (tenure_lo, tenure_hi) = params.tenure_bounds(n);
    // tabu_until[f * n + l]: first iteration at which facility f may
    // occupy location l again.
    let mut tabu_until = vec![0u64; n * n];
    let aspiration = params.aspiration;

    for iter in 0..params.iterations {
        let tenure = tenure_lo + rng.next_below(tenure_hi - tenure_lo + 1);

        let mut chosen: Option<(usize, usize)> = None;
        let mut chosen_delta = i64::MAX;
        let mut chose_aspired = false;
        // Fallback when everything is tabu: the pair whose later
        // expiry is earliest.
        let mut fallback: Option<(usize, usize)> = None;
        let mut fallback_expiry = u64::MAX;

        for i in 0..n {
            for j in (i + 1)..n {
                let u = a.facility_at(i);
                let v = a.facility_at(j);
                let delta = table.get(i, j);
                let until_u = tabu_until[u * n + j];
                let until_v = tabu_until[v * n + i];
                let tabu = until_u > iter && until_v > iter;
                let aspired = current + delta < best
                    || until_u.saturating_add(aspiration) <= iter
                    || until_v.saturating_add(aspiration) <= iter;

                let take = if aspired {
                    !chose_aspired || delta < chosen_delta
                } else {
                    !tabu && !chose_aspired && delta < chosen_delta
                };
                if take {
                    chosen = Some((i, j));
                    chosen_delta = delta;
                    chose_aspired = aspired;
                }
                if tabu {
                    let expiry = until_u.max(until_v);
                    if expiry < fallback_expiry {
                        fallback_expiry = expiry;
                        fallback = Some((i, j));
                    }
                }
            }
        }

        let (i, j) = match chosen.or(fallback) {
            Some(m) => m,
            None => break, // n < 2 is handled above; unreachable in practice
        };
        let delta = table.get(i, j);
        let u = a.facility_at(i);
        let v = a.facility_at(j);

        a.swap_locations(i, j);
        current += delta;
        tabu_until[u * n + i] = iter + 1 + tenure;
        tabu_until[v * n + j] = iter + 1 + tenure;
        table.update_after_swap(inst, &a, i, j);

        #[cfg(debug_assertions)]
        {
            // Sampled table coherence check against the O(n) recompute.
            let k = rng_probe(iter, n);
            let l = (k + 1 + (iter as usize % (n - 1))) % n;
            if k != l {
                debug_assert_eq!(
                    table.get(k, l),
                    crate::delta::swap_delta(inst, &a, k, l),
                    "delta table entry ({k},{l}) diverged at iteration {iter}"
                );
            }
            if iter % 64 == 0 {
                debug_assert_eq!(current, cost(inst, &a).0);
            }
        }

        if current < best {
            best = current;
            best_a = a.clone();
            if let Some(t) = trace.as_mut() {
                t.push(TracePoint {
                    iteration: iter + 1,
                    best_cost: Cost(best),
                });
            }
        }
    }

    debug_assert_eq!(best, cost(inst, &best_a).0);
    RunRecord {
        best_assignment: best_a,
        best_cost: Cost(best),
        iterations_used: params.iterations,
        wall_time_s: t0.elapsed().as_secs_f64(),
        cost_trace: trace,
    }
}

#[cfg(debug_assertions)]
fn rng_probe(iter: u64, n: usize) -> usize {
    // Cheap deterministic probe index; not a statistical sample.
    (iter as usize).wrapping_mul(2654435761) % n
}
