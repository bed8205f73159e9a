use thiserror::Error;

use crate::rng::SplitMix64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssignmentError {
    #[error("permutation entry {value} out of range for size {n}")]
    OutOfRange { value: usize, n: usize },
    #[error("permutation is not a bijection: value {value} appears more than once")]
    Duplicate { value: usize },
}

/// A facility-to-location bijection, maintained in both directions.
///
/// `location_of(u)` gives the location of facility `u`; `facility_at(i)`
/// gives the facility occupying location `i`. The two views are kept
/// mutually inverse by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    loc_of: Vec<usize>,
    fac_at: Vec<usize>,
}

impl Assignment {
    /// Facility `u` at location `u` for every `u`.
    pub fn identity(n: usize) -> Self {
        let ids: Vec<usize> = (0..n).collect();
        Self {
            loc_of: ids.clone(),
            fac_at: ids,
        }
    }

    /// Builds from the facility -> location view, validating bijectivity.
    pub fn from_loc_of(loc_of: Vec<usize>) -> Result<Self, AssignmentError> {
        let fac_at = invert(&loc_of)?;
        Ok(Self { loc_of, fac_at })
    }

    /// Builds from the location -> facility view, validating bijectivity.
    pub fn from_fac_at(fac_at: Vec<usize>) -> Result<Self, AssignmentError> {
        let loc_of = invert(&fac_at)?;
        Ok(Self { loc_of, fac_at })
    }

    /// Uniformly random permutation via an unbiased Fisher-Yates shuffle;
    /// deterministic for a fixed seed.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut loc_of: Vec<usize> = (0..n).collect();
        SplitMix64::new(seed).shuffle(&mut loc_of);
        Self::from_loc_of(loc_of).expect("shuffled identity stays a bijection")
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.loc_of.len()
    }

    #[inline(always)]
    pub fn location_of(&self, facility: usize) -> usize {
        self.loc_of[facility]
    }

    #[inline(always)]
    pub fn facility_at(&self, location: usize) -> usize {
        self.fac_at[location]
    }

    pub fn loc_of(&self) -> &[usize] {
        &self.loc_of
    }

    pub fn fac_at(&self) -> &[usize] {
        &self.fac_at
    }

    /// Swaps the facilities at locations `i` and `j`.
    pub fn swap_locations(&mut self, i: usize, j: usize) {
        let u = self.fac_at[i];
        let v = self.fac_at[j];
        self.fac_at[i] = v;
        self.fac_at[j] = u;
        self.loc_of[u] = j;
        self.loc_of[v] = i;
    }
}

fn invert(perm: &[usize]) -> Result<Vec<usize>, AssignmentError> {
    let n = perm.len();
    let mut inv = vec![usize::MAX; n];
    for (i, &p) in perm.iter().enumerate() {
        if p >= n {
            return Err(AssignmentError::OutOfRange { value: p, n });
        }
        if inv[p] != usize::MAX {
            return Err(AssignmentError::Duplicate { value: p });
        }
        inv[p] = i;
    }
    Ok(inv)
}
