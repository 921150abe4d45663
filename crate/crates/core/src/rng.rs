//! Seeded, streamed random numbers that do not depend on thread count.
//!
//! Work is cut into fixed-size blocks of items. Block `i` of an `RngSpec`
//! always draws from the same ChaCha8 key stream starting at word offset
//! `i << BLOCK_SHIFT`, so a block produces the same values whether it runs
//! first, last, or on another thread.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use rand_chacha::ChaCha8Rng as BlockRng;

/// Items per block.
pub const BLOCK_LEN: usize = 4096;

/// Word-offset spacing between blocks: 2^36 32-bit words each, 2^32 blocks.
const BLOCK_SHIFT: u32 = 36;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSpec {
    pub seed: u64,
    pub stream: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngSpec {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngSpec { seed, stream }
    }

    /// A child spec on a different stream, keyed by `tag`.
    pub fn fork(&self, tag: u64) -> RngSpec {
        RngSpec {
            seed: self.seed,
            stream: splitmix64(self.stream ^ splitmix64(tag.wrapping_add(1))),
        }
    }

    /// The generator for block `index`.
    pub fn block(&self, index: u64) -> ChaCha8Rng {
        assert!(index < 1 << 32, "block index out of range");
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng.set_word_pos(u128::from(index) << BLOCK_SHIFT);
        rng
    }

    /// Produces `n` items, item `j` drawn by `f(rng, j)` where `rng` is the
    /// generator of block `j / BLOCK_LEN`. Blocks run in parallel on the
    /// current rayon pool; the result is the same for any pool size.
    pub fn generate<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
    {
        let blocks = n.div_ceil(BLOCK_LEN);
        let parts: Vec<Vec<T>> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut rng = self.block(b as u64);
                let start = b * BLOCK_LEN;
                let end = (start + BLOCK_LEN).min(n);
                (start..end).map(|j| f(&mut rng, j)).collect()
            })
            .collect();
        let mut out = Vec::with_capacity(n);
        for p in parts {
            out.extend(p);
        }
        out
    }
}

/// Uniform `[0, 1)` with 53 bits of precision from one 64-bit draw.
#[inline]
pub fn unit_f64<R: rand::RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
