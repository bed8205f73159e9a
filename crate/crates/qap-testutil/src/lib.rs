//! Brute-force oracles and fixtures shared by the solver test suites.
//!
//! Everything here evaluates costs straight from the definition (full
//! permutation enumeration, direct relocation sums) and is deliberately
//! independent of the incremental machinery it is used to check.

use qap_core::{cost, Assignment, Cost, Instance};

/// Visits every permutation of `0..n` exactly once.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == perm.len() {
            visit(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(perm, k + 1, visit);
            perm.swap(k, i);
        }
    }
    rec(&mut perm, 0, &mut visit);
}

/// Global optimum by full enumeration; only sensible for small `n`.
pub fn brute_force_optimum(inst: &Instance) -> (Cost, Assignment) {
    let n = inst.n();
    assert!(n <= 9, "enumeration of {n}! permutations is not what you want");
    let mut best: Option<(Cost, Assignment)> = None;
    for_each_permutation(n, |perm| {
        let a = Assignment::from_loc_of(perm.to_vec()).unwrap();
        let c = cost(inst, &a);
        if best.as_ref().map_or(true, |(bc, _)| c < *bc) {
            best = Some((c, a));
        }
    });
    best.expect("n >= 1")
}

/// Visits every closed no-reuse move cycle that starts by moving the
/// facility at `start_loc`.
///
/// A cycle is reported as the ordered list of visited locations
/// `[l0, k0, k1, ..]`: the facility at `l0` moves to `k0`, the displaced
/// facility moves to `k1`, and so on until the last displaced facility
/// moves back to `l0`. Locations are distinct, which is exactly the
/// "no facility moved twice" rule. Gains are ignored; this enumerates
/// structure only.
pub fn for_each_closed_cycle(n: usize, start_loc: usize, mut visit: impl FnMut(&[usize])) {
    let mut cycle = vec![start_loc];
    let mut used = vec![false; n];
    used[start_loc] = true;
    fn rec(
        n: usize,
        cycle: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if cycle.len() >= 2 {
            visit(cycle);
        }
        for next in 0..n {
            if !used[next] {
                used[next] = true;
                cycle.push(next);
                rec(n, cycle, used, visit);
                cycle.pop();
                used[next] = false;
            }
        }
    }
    rec(n, &mut cycle, &mut used, &mut visit);
}

/// Applies a location cycle (as produced by [`for_each_closed_cycle`])
/// to an assignment: each location's facility moves to the next location
/// in the cycle, the last wrapping around to the first.
pub fn apply_cycle(a: &Assignment, cycle: &[usize]) -> Assignment {
    let mut loc_of = a.loc_of().to_vec();
    for (idx, &from) in cycle.iter().enumerate() {
        let to = cycle[(idx + 1) % cycle.len()];
        loc_of[a.facility_at(from)] = to;
    }
    Assignment::from_loc_of(loc_of).expect("cycles preserve bijectivity")
}

/// The 3-facility fixture used across the solver test suites.
///
/// Identity cost 64; swapping locations 0 and 1 drops it to 40.
pub fn n3_fixture() -> Instance {
    Instance::from_matrices(
        vec![vec![0, 2, 4], vec![2, 0, 1], vec![4, 1, 0]],
        vec![vec![0, 3, 6], vec![3, 0, 2], vec![6, 2, 0]],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_count_is_factorial() {
        let mut count = 0usize;
        for_each_permutation(5, |_| count += 1);
        assert_eq!(count, 120);
    }

    #[test]
    fn optimum_of_n3_fixture() {
        let (best, a) = brute_force_optimum(&n3_fixture());
        assert_eq!(best, Cost(40));
        // Swapping the two heavy-flow facilities onto the short edge.
        assert_eq!(a.fac_at(), &[1, 0, 2]);
    }

    #[test]
    fn cycle_enumeration_counts() {
        // Cycles from one start of lengths 2..=4 over 4 locations:
        // 3 + 3*2 + 3*2*1 = 15.
        let mut count = 0usize;
        for_each_closed_cycle(4, 0, |_| count += 1);
        assert_eq!(count, 15);
    }

    #[test]
    fn apply_cycle_rotates_facilities() {
        let a = Assignment::identity(4);
        let b = apply_cycle(&a, &[0, 2, 3]);
        // Facility 0: 0 -> 2, facility 2: 2 -> 3, facility 3: 3 -> 0.
        assert_eq!(b.loc_of(), &[2, 1, 3, 0]);
    }
}
