/// Name of the generator recorded in instance sidecar metadata, so any
/// emitted instance can be regenerated bit-identically later.
pub const RNG_NAME: &str = "splitmix64";

/// SplitMix64 pseudo-random generator (Steele, Lea & Flood's mixer, as
/// used to seed xoshiro-family generators).
///
/// Chosen because it is tiny, well known, and its output for a given seed
/// is frozen here rather than borrowed from a crate whose algorithm could
/// change under a version bump. Every seeded artifact in this workspace
/// flows through this generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, bound)` via rejection sampling, so every value
    /// is exactly equally likely (no modulo bias).
    #[inline]
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        // 2^64 mod bound values at the bottom of the range would be
        // over-represented; reject them.
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// Unbiased Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}

/// Derives an independent child seed from a master seed and a stream
/// index. Used wherever one user-facing seed has to drive several
/// internal random processes (start assignment, tabu tenure, per-attempt
/// seeds) without correlation.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut r = SplitMix64::new(master ^ stream.wrapping_mul(0xA076_1D64_78BD_642F));
    r.next_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_sequence_is_frozen() {
        // First outputs for seed 0 from the published SplitMix64 routine.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn next_below_stays_in_range() {
        let mut r = SplitMix64::new(42);
        for bound in [1u64, 2, 3, 7, 100, 1 << 33] {
            for _ in 0..200 {
                assert!(r.next_below(bound) < bound);
            }
        }
    }

    #[test]
    fn derive_seed_separates_streams() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_eq!(derive_seed(1, 0), derive_seed(1, 0));
    }
}
