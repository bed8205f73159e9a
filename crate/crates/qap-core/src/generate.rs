use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::SquareMatrix;
use crate::rng::{SplitMix64, RNG_NAME};
use crate::{Assignment, Instance};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("generated instances need n >= 2, got {0}")]
    SizeTooSmall(usize),
}

/// Sidecar metadata describing how an instance file was produced.
///
/// The instance format itself has no room for comments, so the generator
/// identity travels in this separate JSON document; with it, the exact
/// instance can be rebuilt from `(n, seed, max_entry)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMeta {
    pub n: usize,
    pub seed: u64,
    pub max_entry: u32,
    pub rng_name: String,
}

impl GeneratorMeta {
    pub fn new(n: usize, seed: u64, max_entry: u32) -> Self {
        Self {
            n,
            seed,
            max_entry,
            rng_name: RNG_NAME.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metadata always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Generates a random symmetric instance with zero diagonals and
/// off-diagonal entries drawn independently and uniformly from
/// `[0, max_entry]`.
///
/// Only the upper triangle is drawn (flows first, then distances, row by
/// row) and mirrored, so the output is fully determined by
/// `(n, seed, max_entry)`.
pub fn generate_instance(n: usize, seed: u64, max_entry: u32) -> Result<Instance, GenerateError> {
    if n < 2 {
        return Err(GenerateError::SizeTooSmall(n));
    }
    let mut rng = SplitMix64::new(seed);
    let flows = random_symmetric(n, max_entry, &mut rng);
    let distances = random_symmetric(n, max_entry, &mut rng);
    Ok(Instance::new(flows, distances).expect("construction satisfies all invariants"))
}

fn random_symmetric(n: usize, max_entry: u32, rng: &mut SplitMix64) -> SquareMatrix {
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.next_below(u64::from(max_entry) + 1) as i64;
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

/// Uniformly random starting assignment; deterministic per seed.
pub fn random_assignment(n: usize, seed: u64) -> Assignment {
    Assignment::random(n, seed)
}
