//! Seeded, splittable random number generation.
//!
//! The generator is xoshiro256++ (Blackman & Vigna), seeded through SplitMix64.
//! A stream is identified by a `(seed, stream)` pair of 64-bit integers:
//! SplitMix64 is run on `seed`, then on `stream` scrambled by a golden-ratio
//! constant, and the two sequences are combined into the 256-bit state. The
//! same pair always reproduces the same draw sequence, and distinct stream ids
//! give statistically independent streams, so Monte Carlo trials parallelize
//! by assigning one stream per trial.

/// Identifier of a reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngState {
    pub seed: u64,
    pub stream: u64,
}

impl RngState {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngState { seed, stream }
    }

    /// A derived state with the same seed and a different stream id.
    pub fn substream(self, k: u64) -> Self {
        RngState { seed: self.seed, stream: self.stream.wrapping_add(k) }
    }
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// xoshiro256++ generator.
#[derive(Debug, Clone)]
pub struct Xoshiro256 {
    s: [u64; 4],
}

impl Xoshiro256 {
    pub fn from_state(st: RngState) -> Self {
        let mut sm = st.seed;
        let a = splitmix64(&mut sm);
        let b = splitmix64(&mut sm);
        let mut sm2 = st.stream.wrapping_mul(GOLDEN) ^ 0x6a09_e667_f3bc_c909;
        let c = splitmix64(&mut sm2);
        let d = splitmix64(&mut sm2);
        let mut g = Xoshiro256 { s: [a ^ c, b.wrapping_add(d), a.wrapping_add(d), b ^ c] };
        // the all-zero state is invalid; GOLDEN is as good a rescue as any
        if g.s == [0, 0, 0, 0] {
            g.s = [GOLDEN, !GOLDEN, GOLDEN >> 1, !GOLDEN << 1];
        }
        for _ in 0..8 {
            g.next_u64();
        }
        g
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let out = self.s[0]
            .wrapping_add(self.s[3])
            .rotate_left(23)
            .wrapping_add(self.s[0]);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        out
    }

    /// Uniform draw on (0, 1): 53 mantissa bits, never exactly 0.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        let u = self.next_u64() >> 11;
        (u as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_across_instances() {
        let mut a = Xoshiro256::from_state(RngState::new(42, 7));
        let mut b = Xoshiro256::from_state(RngState::new(42, 7));
        for _ in 0..1000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = Xoshiro256::from_state(RngState::new(42, 0));
        let mut b = Xoshiro256::from_state(RngState::new(42, 1));
        let same = (0..64).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn uniform_in_open_interval() {
        let mut g = Xoshiro256::from_state(RngState::new(1, 1));
        for _ in 0..100_000 {
            let u = g.uniform();
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn uniform_mean_sane() {
        let mut g = Xoshiro256::from_state(RngState::new(3, 0));
        let n = 1_000_000;
        let mean = (0..n).map(|_| g.uniform()).sum::<f64>() / n as f64;
        // SE = 1/sqrt(12 n) ~ 2.9e-4
        assert!((mean - 0.5).abs() < 4.0 * 2.9e-4, "mean = {mean}");
    }
}
