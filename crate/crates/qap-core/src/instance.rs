use thiserror::Error;

use crate::matrix::SquareMatrix;

/// Largest value an instance entry may take: non-negative 32-bit.
pub(crate) const MAX_ENTRY_VALUE: i64 = u32::MAX as i64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("instance size must be at least 1")]
    Empty,
    #[error("{matrix} matrix is {rows}x{cols}, expected {n}x{n}")]
    ShapeMismatch {
        matrix: &'static str,
        rows: usize,
        cols: usize,
        n: usize,
    },
    #[error("{matrix} matrix entry ({row},{col}) = {value} outside [0, {max}]", max = MAX_ENTRY_VALUE)]
    EntryOutOfRange {
        matrix: &'static str,
        row: usize,
        col: usize,
        value: i64,
    },
    #[error("{matrix} matrix asymmetric at ({row},{col}): {forward} vs {backward}")]
    Asymmetric {
        matrix: &'static str,
        row: usize,
        col: usize,
        forward: i64,
        backward: i64,
    },
    #[error("{matrix} matrix has nonzero diagonal entry ({index},{index}) = {value}")]
    NonzeroDiagonal {
        matrix: &'static str,
        index: usize,
        value: i64,
    },
}

/// A symmetric QAP instance: problem size, flows between facilities,
/// distances between locations.
///
/// Immutable after construction, so it can be shared freely across
/// concurrent solver runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    flows: SquareMatrix,
    distances: SquareMatrix,
}

impl Instance {
    /// Validates symmetry, zero diagonals, and the 32-bit entry range.
    pub fn new(flows: SquareMatrix, distances: SquareMatrix) -> Result<Self, InstanceError> {
        let n = flows.n();
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        if distances.n() != n {
            return Err(InstanceError::ShapeMismatch {
                matrix: "distance",
                rows: distances.n(),
                cols: distances.n(),
                n,
            });
        }
        validate_matrix("flow", &flows)?;
        validate_matrix("distance", &distances)?;
        Ok(Self {
            n,
            flows,
            distances,
        })
    }

    /// Convenience constructor from nested rows.
    pub fn from_matrices(
        flows: Vec<Vec<i64>>,
        distances: Vec<Vec<i64>>,
    ) -> Result<Self, InstanceError> {
        let n = flows.len();
        let f = SquareMatrix::from_rows(flows).ok_or(InstanceError::ShapeMismatch {
            matrix: "flow",
            rows: n,
            cols: 0,
            n,
        })?;
        let d = SquareMatrix::from_rows(distances).ok_or(InstanceError::ShapeMismatch {
            matrix: "distance",
            rows: n,
            cols: 0,
            n,
        })?;
        Self::new(f, d)
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Flow between facilities `u` and `v`.
    #[inline(always)]
    pub fn flow(&self, u: usize, v: usize) -> i64 {
        self.flows.get(u, v)
    }

    /// Distance between locations `i` and `j`.
    #[inline(always)]
    pub fn distance(&self, i: usize, j: usize) -> i64 {
        self.distances.get(i, j)
    }

    pub fn flows(&self) -> &SquareMatrix {
        &self.flows
    }

    pub fn distances(&self) -> &SquareMatrix {
        &self.distances
    }
}

fn validate_matrix(name: &'static str, m: &SquareMatrix) -> Result<(), InstanceError> {
    let n = m.n();
    for i in 0..n {
        let diag = m.get(i, i);
        if diag != 0 {
            return Err(InstanceError::NonzeroDiagonal {
                matrix: name,
                index: i,
                value: diag,
            });
        }
        for j in 0..n {
            let v = m.get(i, j);
            if !(0..=MAX_ENTRY_VALUE).contains(&v) {
                return Err(InstanceError::EntryOutOfRange {
                    matrix: name,
                    row: i,
                    col: j,
                    value: v,
                });
            }
            if j > i {
                let back = m.get(j, i);
                if v != back {
                    return Err(InstanceError::Asymmetric {
                        matrix: name,
                        row: i,
                        col: j,
                        forward: v,
                        backward: back,
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_instance() {
        let inst = Instance::from_matrices(
            vec![vec![0, 3], vec![3, 0]],
            vec![vec![0, 5], vec![5, 0]],
        )
        .unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.flow(0, 1), 3);
        assert_eq!(inst.distance(1, 0), 5);
    }

    #[test]
    fn rejects_asymmetric_flow() {
        let err = Instance::from_matrices(
            vec![vec![0, 3], vec![4, 0]],
            vec![vec![0, 5], vec![5, 0]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            InstanceError::Asymmetric {
                matrix: "flow",
                row: 0,
                col: 1,
                forward: 3,
                backward: 4,
            }
        );
    }

    #[test]
    fn rejects_nonzero_diagonal() {
        let err = Instance::from_matrices(
            vec![vec![1, 3], vec![3, 0]],
            vec![vec![0, 5], vec![5, 0]],
        )
        .unwrap_err();
        assert!(matches!(err, InstanceError::NonzeroDiagonal { matrix: "flow", index: 0, .. }));
    }

    #[test]
    fn rejects_negative_entry() {
        let err = Instance::from_matrices(
            vec![vec![0, -3], vec![-3, 0]],
            vec![vec![0, 5], vec![5, 0]],
        )
        .unwrap_err();
        assert!(matches!(err, InstanceError::EntryOutOfRange { .. }));
    }
}
