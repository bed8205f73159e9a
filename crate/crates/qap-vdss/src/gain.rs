use qap_core::{Assignment, Instance};

use crate::chain::MoveChain;

/// Table of first-move gains: entry `(u, k)` is the cost reduction of
/// relocating facility `u` alone to location `k`, evaluated against the
/// assignment the table was built for (positive means cheaper).
///
/// Relocating onto an occupied location is a legal intermediate state;
/// the gain prices the resulting doubly-occupied map. The diagonal-in-
/// assignment entries `(u, location_of(u))` are always zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainTable {
    n: usize,
    delta0: Vec<i64>,
}

impl GainTable {
    /// Full build: every entry from the defining sum, O(n^3) total.
    pub fn new(inst: &Instance, a: &Assignment) -> Self {
        let n = inst.n();
        let mut delta0 = vec![0i64; n * n];
        let dist = inst.distances();
        for u in 0..n {
            let lu = a.location_of(u);
            let flows = inst.flows().row(u);
            let row = &mut delta0[u * n..(u + 1) * n];
            for v in 0..n {
                if v == u || flows[v] == 0 {
                    continue;
                }
                let lv = a.location_of(v);
                let base = dist.get(lv, lu) * flows[v];
                let drow = dist.row(lv);
                for (k, slot) in row.iter_mut().enumerate() {
                    *slot += base - drow[k] * flows[v];
                }
            }
            for slot in row.iter_mut() {
                *slot *= 2;
            }
        }
        Self { n, delta0 }
    }

    #[inline(always)]
    pub fn gain(&self, facility: usize, location: usize) -> i64 {
        self.delta0[facility * self.n + location]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Patches the table after `chain` has been applied and the assignment
    /// advanced to `new_a`.
    ///
    /// Rows of facilities that did not move get a constant-time correction
    /// per chain move and table entry; rows of moved facilities are rebuilt
    /// from the definition. The result equals a fresh build against
    /// `new_a`, entry for entry.
    pub fn update_after_chain(&mut self, inst: &Instance, chain: &MoveChain, new_a: &Assignment) {
        let n = self.n;
        let mut in_chain = vec![false; n];
        for mv in chain.moves() {
            in_chain[mv.facility] = true;
        }
        let dist = inst.distances();
        for v in 0..n {
            if in_chain[v] {
                continue;
            }
            let i = new_a.location_of(v);
            let flows = inst.flows().row(v);
            let row = &mut self.delta0[v * n..(v + 1) * n];
            for mv in chain.moves() {
                let f = flows[mv.facility];
                if f == 0 {
                    continue;
                }
                let to_row = dist.row(mv.to);
                let from_row = dist.row(mv.from);
                let base = (to_row[i] - from_row[i]) * f;
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot += 2 * (base - (to_row[j] - from_row[j]) * f);
                }
            }
        }
        for mv in chain.moves() {
            self.rebuild_row(inst, new_a, mv.facility);
        }
    }

    fn rebuild_row(&mut self, inst: &Instance, a: &Assignment, u: usize) {
        let n = self.n;
        let lu = a.location_of(u);
        let flows = inst.flows().row(u);
        let dist = inst.distances();
        let row = &mut self.delta0[u * n..(u + 1) * n];
        row.fill(0);
        for v in 0..n {
            if v == u || flows[v] == 0 {
                continue;
            }
            let lv = a.location_of(v);
            let base = dist.get(lv, lu) * flows[v];
            let drow = dist.row(lv);
            for (k, slot) in row.iter_mut().enumerate() {
                *slot += base - drow[k] * flows[v];
            }
        }
        for slot in row.iter_mut() {
            *slot *= 2;
        }
    }
}
