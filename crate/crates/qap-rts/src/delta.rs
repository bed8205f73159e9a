use qap_core::{Assignment, Instance};

/// Cost change of swapping the facilities at locations `i` and `j`,
/// computed in O(n) without re-evaluating the full sum.
///
/// Negative means the swap improves the assignment. For symmetric
/// instances with zero diagonals the pair term between the two swapped
/// facilities cancels, leaving only third-party contributions.
pub fn swap_delta(inst: &Instance, a: &Assignment, i: usize, j: usize) -> i64 {
    if i == j {
        return 0;
    }
    let u = a.facility_at(i);
    let v = a.facility_at(j);
    let fu = inst.flows().row(u);
    let fv = inst.flows().row(v);
    let di = inst.distances().row(i);
    let dj = inst.distances().row(j);
    let mut acc = 0i64;
    for w in 0..inst.n() {
        if w == u || w == v {
            continue;
        }
        let lw = a.location_of(w);
        acc += (fu[w] - fv[w]) * (dj[lw] - di[lw]);
    }
    2 * acc
}

/// All pairwise swap deltas for the current assignment, maintained
/// incrementally across applied swaps.
///
/// Entry `(i,j)` is the cost change of swapping locations `i` and `j`;
/// the table is symmetric with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapDeltaTable {
    n: usize,
    deltas: Vec<i64>,
}

impl SwapDeltaTable {
    /// Full O(n^3) build from scratch.
    pub fn new(inst: &Instance, a: &Assignment) -> Self {
        let n = inst.n();
        let mut table = Self {
            n,
            deltas: vec![0; n * n],
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let d = swap_delta(inst, a, i, j);
                table.set(i, j, d);
            }
        }
        table
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.deltas[i * self.n + j]
    }

    #[inline(always)]
    fn set(&mut self, i: usize, j: usize, value: i64) {
        self.deltas[i * self.n + j] = value;
        self.deltas[j * self.n + i] = value;
    }

    /// Refreshes the table after the swap of locations `i` and `j` has
    /// been applied to `a`.
    ///
    /// Pairs not touching `i` or `j` update in O(1) from the flow and
    /// distance differences of the two relocated facilities; the touched
    /// rows are recomputed directly.
    pub fn update_after_swap(&mut self, inst: &Instance, a: &Assignment, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.n;
        // Post-swap, the facility that left location i sits at j and
        // vice versa.
        let u = a.facility_at(j);
        let v = a.facility_at(i);
        let fu = inst.flows().row(u);
        let fv = inst.flows().row(v);
        let dist = inst.distances();
        for k in 0..n {
            if k == i || k == j {
                continue;
            }
            let x = a.facility_at(k);
            let fx = fu[x] - fv[x];
            let dk = dist.get(k, i) - dist.get(k, j);
            for l in (k + 1)..n {
                if l == i || l == j {
                    continue;
                }
                let y = a.facility_at(l);
                let factor = fx - (fu[y] - fv[y]);
                let adj = 2 * factor * (dk + dist.get(l, j) - dist.get(l, i));
                let cur = self.get(k, l);
                self.set(k, l, cur + adj);
            }
        }
        for k in 0..n {
            if k != i {
                self.set(k, i, swap_delta(inst, a, k, i));
            }
            if k != j {
                self.set(k, j, swap_delta(inst, a, k, j));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qap_core::{cost, generate_instance, random_assignment, SplitMix64};

    fn n3() -> Instance {
        Instance::from_matrices(
            vec![vec![0, 2, 4], vec![2, 0, 1], vec![4, 1, 0]],
            vec![vec![0, 3, 6], vec![3, 0, 2], vec![6, 2, 0]],
        )
        .unwrap()
    }

    #[test]
    fn identity_swap_is_free() {
        let inst = n3();
        let a = Assignment::identity(3);
        assert_eq!(swap_delta(&inst, &a, 1, 1), 0);
    }

    #[test]
    fn known_improving_swap() {
        // Swapping locations 0 and 1 takes the identity from 64 to 40.
        let inst = n3();
        let a = Assignment::identity(3);
        assert_eq!(swap_delta(&inst, &a, 0, 1), -24);
    }

    #[test]
    fn swap_delta_matches_brute_force_difference() {
        let mut rng = SplitMix64::new(99);
        for trial in 0..1000 {
            let n = 4 + (trial % 9);
            let inst = generate_instance(n, rng.next_u64(), 99).unwrap();
            let a = random_assignment(n, rng.next_u64());
            let i = rng.next_below(n as u64) as usize;
            let j = rng.next_below(n as u64) as usize;
            let before = cost(&inst, &a);
            let mut swapped = a.clone();
            swapped.swap_locations(i, j);
            let after = cost(&inst, &swapped);
            assert_eq!(swap_delta(&inst, &a, i, j), after.0 - before.0);
        }
    }

    #[test]
    fn table_diagonal_is_zero_after_init() {
        let inst = generate_instance(12, 5, 99).unwrap();
        let a = random_assignment(12, 6);
        let table = SwapDeltaTable::new(&inst, &a);
        for i in 0..12 {
            assert_eq!(table.get(i, i), 0);
        }
    }

    #[test]
    fn incremental_update_equals_fresh_build() {
        let mut rng = SplitMix64::new(123);
        for trial in 0..60 {
            let n = 4 + (trial % 27);
            let inst = generate_instance(n, rng.next_u64(), 99).unwrap();
            let mut a = random_assignment(n, rng.next_u64());
            let mut table = SwapDeltaTable::new(&inst, &a);
            // Two successive swaps commute with the two updates in order.
            for _ in 0..2 {
                let i = rng.next_below(n as u64) as usize;
                let j = rng.next_below(n as u64) as usize;
                a.swap_locations(i, j);
                table.update_after_swap(&inst, &a, i, j);
                assert_eq!(table, SwapDeltaTable::new(&inst, &a));
            }
        }
    }
}
