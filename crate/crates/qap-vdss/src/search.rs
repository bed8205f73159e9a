use thiserror::Error;

use qap_core::{Assignment, Instance};

use crate::chain::{Move, MoveChain};
use crate::gain::GainTable;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BudgetError {
    #[error("depth schedule must be non-empty")]
    NoDepths,
    #[error("depth schedule must be strictly increasing with every depth >= 1")]
    BadDepths,
    #[error("move limit must be at least 1")]
    NoMoveLimit,
}

/// Search effort: the schedule of maximum chain depths and the cap on
/// moves performed (chain extensions taken) from any single start node
/// within one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    depths: Vec<usize>,
    move_limit: u64,
}

impl SearchBudget {
    pub fn new(depths: Vec<usize>, move_limit: u64) -> Result<Self, BudgetError> {
        if depths.is_empty() {
            return Err(BudgetError::NoDepths);
        }
        if depths[0] < 1 || depths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BudgetError::BadDepths);
        }
        if move_limit < 1 {
            return Err(BudgetError::NoMoveLimit);
        }
        Ok(Self { depths, move_limit })
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn move_limit(&self) -> u64 {
        self.move_limit
    }
}

impl Default for SearchBudget {
    /// The standard setting: depths 2 then 5, at most 10^5 moves
    /// performed per start node.
    fn default() -> Self {
        Self {
            depths: vec![2, 5],
            move_limit: 100_000,
        }
    }
}

/// Incremental gain of moving `facility` to `target` as the next move of
/// a chain, in O(chain length).
///
/// The first move reads straight from the table; later moves correct the
/// table value by, for each prior move, the difference between that
/// mover's current and original contribution to the shared edge.
/// Panics if `facility` already moved in the chain.
pub fn chain_gain(
    table: &GainTable,
    inst: &Instance,
    a: &Assignment,
    prior: &[Move],
    facility: usize,
    target: usize,
) -> i64 {
    assert!(
        prior.iter().all(|mv| mv.facility != facility),
        "facility {facility} already moved in this chain"
    );
    let source = a.location_of(facility);
    debug_assert!(
        prior.last().map_or(true, |mv| mv.to == source),
        "chain linkage broken: mover must be the displaced facility"
    );
    let flows = inst.flows().row(facility);
    let dist = inst.distances();
    let mut correction = 0i64;
    for mv in prior {
        let f = flows[mv.facility];
        if f == 0 {
            continue;
        }
        let current = dist.get(mv.to, source) - dist.get(mv.to, target);
        let original = dist.get(mv.from, source) - dist.get(mv.from, target);
        correction += (current - original) * f;
    }
    table.gain(facility, target) + 2 * correction
}

enum Step {
    Found,
    Dead,
    Exhausted,
}

/// Depth-first search for an improving closed chain rooted at
/// `start_facility`.
///
/// At each level the mover may relocate to any location whose occupant
/// has not yet moved (extending the chain, kept only while the cumulative
/// gain stays strictly positive) or back to the origin (closing it,
/// accepted only if the total gain is strictly positive). Candidates are
/// scanned in ascending location order and the first improving closed
/// chain is returned. At the last level permitted by `max_depth` only the
/// closing move is evaluated. Every move performed — every extension the
/// search actually takes, backtracked or not — spends one unit of
/// `budget`; once it hits zero the whole search aborts with `None`.
pub fn search_from_node(
    inst: &Instance,
    a: &Assignment,
    table: &GainTable,
    start_facility: usize,
    max_depth: usize,
    budget: &mut u64,
) -> Option<MoveChain> {
    let n = inst.n();
    assert!(start_facility < n);
    let mut ctx = Dfs {
        inst,
        a,
        table,
        origin: a.location_of(start_facility),
        max_depth,
        chain: Vec::with_capacity(max_depth),
        moved: vec![false; n],
    };
    match ctx.extend(start_facility, 0, budget) {
        Step::Found => Some(MoveChain::from_search(ctx.chain)),
        Step::Dead | Step::Exhausted => None,
    }
}

struct Dfs<'a> {
    inst: &'a Instance,
    a: &'a Assignment,
    table: &'a GainTable,
    origin: usize,
    max_depth: usize,
    chain: Vec<Move>,
    moved: Vec<bool>,
}

impl Dfs<'_> {
    fn extend(&mut self, mover: usize, cumulative: i64, budget: &mut u64) -> Step {
        let n = self.inst.n();
        let source = self.a.location_of(mover);
        let last_slot = self.chain.len() + 1 == self.max_depth;
        for target in 0..n {
            if target == source {
                continue;
            }
            if target == self.origin {
                // Closing move: restores a bijection; accept only a
                // strictly positive total.
                let gain = chain_gain(self.table, self.inst, self.a, &self.chain, mover, target);
                let total = cumulative + gain;
                if total > 0 {
                    self.chain.push(Move {
                        facility: mover,
                        from: source,
                        to: target,
                        gain,
                        cumulative_gain: total,
                    });
                    return Step::Found;
                }
                continue;
            }
            if last_slot {
                // Nothing non-closing can still close within the depth
                // bound, so it is not even evaluated.
                continue;
            }
            let displaced = self.a.facility_at(target);
            if self.moved[displaced] {
                continue;
            }
            let gain = chain_gain(self.table, self.inst, self.a, &self.chain, mover, target);
            let next_cumulative = cumulative + gain;
            if next_cumulative > 0 {
                if *budget == 0 {
                    return Step::Exhausted;
                }
                *budget -= 1;
                self.chain.push(Move {
                    facility: mover,
                    from: source,
                    to: target,
                    gain,
                    cumulative_gain: next_cumulative,
                });
                self.moved[mover] = true;
                match self.extend(displaced, next_cumulative, budget) {
                    Step::Dead => {
                        self.chain.pop();
                        self.moved[mover] = false;
                    }
                    found_or_exhausted => return found_or_exhausted,
                }
            }
        }
        Step::Dead
    }
}
