/// SplitMix64 generator.
///
/// This is the fixed generator used by every randomized routine in the
/// crate so that runs are reproducible from a single 64-bit seed, and so
/// that an independent implementation can regenerate the same instances.
/// The update is the standard one: the state advances by the golden-ratio
/// increment 0x9E3779B97F4A7C15 and the output is the finalizer
/// `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
///  z *= 0x94D049BB133111EB; z ^= z >> 31` applied to the new state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough value in `[0, n)`. Reduction is by modulo; the bias
    /// is irrelevant here (instance generation, not statistics) and keeping
    /// the mapping trivial makes it easy to reproduce elsewhere.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        self.next_u64() % n
    }

    /// Uniform value in the inclusive range `[lo, hi]`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        let span = (hi - lo) as u64 + 1;
        lo + self.below(span) as i64
    }

    /// Derive an independent stream for a sub-task.
    pub fn fork(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }
}
