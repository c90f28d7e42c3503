//! SplitMix64, the deterministic generator behind every randomized routine.
//!
//! State advances by `0x9E3779B97F4A7C15`; each output is the state passed
//! through the finalizer
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z =  z ^ (z >> 31)
//! ```
//!
//! (all arithmetic wrapping mod 2^64). Independent streams for indexed work
//! items come from [`SplitMix64::for_index`], so results do not depend on how
//! items are spread across workers.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Stream for work item `index` under `seed`: seeded with
    /// `seed ^ mix(index + GOLDEN_GAMMA)`.
    pub fn for_index(seed: u64, index: u64) -> Self {
        SplitMix64::new(seed ^ mix(index.wrapping_add(GOLDEN_GAMMA)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }

    /// Uniform value in `0..bound` by rejection (`bound > 0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// `len` uniform signs; bit `j % 64` of the `j / 64`-th output decides term `j`
    /// (set bit means `-1`).
    pub fn signs(&mut self, len: usize) -> Vec<i8> {
        let mut out = Vec::with_capacity(len);
        while out.len() < len {
            let word = self.next_u64();
            let take = (len - out.len()).min(64);
            out.extend((0..take).map(|b| if (word >> b) & 1 == 1 { -1 } else { 1 }));
        }
        out
    }
}
