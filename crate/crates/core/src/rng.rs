//! Counter-based random streams.
//!
//! Every replica of a Monte Carlo experiment draws from its own ChaCha8
//! stream. The key is derived from `(seed, domain)` and the stream id is the
//! replica index, so replica `i` sees the same numbers no matter which
//! worker runs it or in which order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Separates unrelated uses of one user seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamDomain {
    /// Bridge paths.
    Paths,
    /// Reference samples of a simulated limit law.
    LimitLaw,
    /// Direct draws from a reference distribution (no SDE involved).
    Direct,
}

impl StreamDomain {
    fn tag(self) -> u64 {
        match self {
            StreamDomain::Paths => 0x5041_5448,
            StreamDomain::LimitLaw => 0x4c49_4d49,
            StreamDomain::Direct => 0x4449_5245,
        }
    }
}

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Factory for per-replica generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamFactory {
    key: [u8; 32],
}

impl StreamFactory {
    pub fn new(seed: u64, domain: StreamDomain) -> Self {
        let mut state = seed ^ domain.tag().rotate_left(32);
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        Self { key }
    }

    /// Generator for replica `index`. Independent of call order.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(index);
        rng
    }
}
