/// Dense square matrix with flat row-major storage.
///
/// Entries are held as `i64` so the hot loops in the solvers never cast;
/// construction enforces the 32-bit non-negative range of instance data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<i64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    /// Builds from nested rows. Fails if the rows do not form an n-by-n block.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            data.extend(row);
        }
        Some(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.n + j] = value;
    }

    /// Row `i` as a slice; lets inner loops skip the index multiply.
    #[inline(always)]
    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rows_rejects_ragged_input() {
        assert!(SquareMatrix::from_rows(vec![vec![0, 1], vec![2]]).is_none());
        let m = SquareMatrix::from_rows(vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(m.get(1, 0), 2);
        assert_eq!(m.row(1), &[2, 3]);
    }
}
