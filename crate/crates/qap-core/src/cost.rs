use serde::{Deserialize, Serialize};

use crate::{Assignment, Instance};

/// Total assignment cost in flow-times-distance units.
///
/// Exact 64-bit signed integer; non-negative for valid instances.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct Cost(pub i64);

impl std::fmt::Display for Cost {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl From<i64> for Cost {
    fn from(v: i64) -> Self {
        Cost(v)
    }
}

/// Cost of an assignment: the flow-weighted distance summed over all
/// ordered facility pairs.
///
/// Panics if the assignment size does not match the instance size.
pub fn cost(inst: &Instance, a: &Assignment) -> Cost {
    assert_eq!(
        a.n(),
        inst.n(),
        "assignment size {} does not match instance size {}",
        a.n(),
        inst.n()
    );
    relocation_cost(inst, a.loc_of())
}

/// Cost of an arbitrary facility -> location map, which need not be a
/// bijection (locations may be vacant or doubly occupied).
///
/// Agrees with [`cost`] on bijective maps. This is the reference
/// evaluation the incremental gain machinery is checked against: it
/// prices intermediate chain states directly from the definition.
///
/// Panics if any location index is out of range.
pub fn relocation_cost(inst: &Instance, loc_of: &[usize]) -> Cost {
    let n = inst.n();
    assert_eq!(loc_of.len(), n, "map covers {} facilities, instance has {}", loc_of.len(), n);
    for (u, &l) in loc_of.iter().enumerate() {
        assert!(l < n, "facility {u} mapped to out-of-range location {l}");
    }
    let mut total = 0i64;
    for u in 0..n {
        let flow_row = inst.flows().row(u);
        let dist_row = inst.distances().row(loc_of[u]);
        for v in 0..n {
            total += flow_row[v] * dist_row[loc_of[v]];
        }
    }
    Cost(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n3() -> Instance {
        Instance::from_matrices(
            vec![vec![0, 2, 4], vec![2, 0, 1], vec![4, 1, 0]],
            vec![vec![0, 3, 6], vec![3, 0, 2], vec![6, 2, 0]],
        )
        .unwrap()
    }

    #[test]
    fn zero_flows_cost_nothing() {
        let inst = Instance::from_matrices(
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![0, 5], vec![5, 0]],
        )
        .unwrap();
        assert_eq!(cost(&inst, &Assignment::identity(2)), Cost(0));
        assert_eq!(cost(&inst, &Assignment::from_loc_of(vec![1, 0]).unwrap()), Cost(0));
    }

    #[test]
    fn two_facility_instance_counts_both_ordered_pairs() {
        let inst = Instance::from_matrices(
            vec![vec![0, 3], vec![3, 0]],
            vec![vec![0, 5], vec![5, 0]],
        )
        .unwrap();
        assert_eq!(cost(&inst, &Assignment::identity(2)), Cost(30));
    }

    #[test]
    fn three_facility_identity_cost() {
        // Independent double-sum over ordered pairs:
        // 2*(F01*D01 + F02*D02 + F12*D12) = 2*(6 + 24 + 2) = 64.
        assert_eq!(cost(&n3(), &Assignment::identity(3)), Cost(64));
    }

    #[test]
    fn relocation_cost_matches_cost_on_bijections() {
        let inst = n3();
        let a = Assignment::from_loc_of(vec![1, 2, 0]).unwrap();
        assert_eq!(relocation_cost(&inst, a.loc_of()), cost(&inst, &a));
    }

    #[test]
    fn relocation_cost_with_double_occupancy() {
        // Facility 0 relocated onto location 1 (occupied by facility 1):
        // pairs (0,1) now sit on the same location and contribute nothing.
        assert_eq!(relocation_cost(&n3(), &[1, 1, 2]), Cost(20));
    }

    #[test]
    fn all_facilities_stacked_on_one_location() {
        assert_eq!(relocation_cost(&n3(), &[0, 0, 0]), Cost(0));
    }

    #[test]
    #[should_panic(expected = "does not match instance size")]
    fn size_mismatch_is_a_contract_violation() {
        cost(&n3(), &Assignment::identity(4));
    }

    #[test]
    #[should_panic(expected = "out-of-range location")]
    fn out_of_range_location_is_rejected() {
        relocation_cost(&n3(), &[0, 1, 3]);
    }
}
