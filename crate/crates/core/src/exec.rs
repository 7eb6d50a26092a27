//! Execution mode for data-parallel loops.
//!
//! With the `parallel` feature (default) loops can run on the rayon pool;
//! without it every mode falls back to the sequential path.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether loops should actually use rayon.
    #[inline]
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Apply `f` to every `chunk_len`-sized mutable chunk, with the chunk index.
pub(crate) fn for_each_chunk_mut<T, F>(exec: Execution, data: &mut [T], chunk_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        data.par_chunks_mut(chunk_len).enumerate().for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = exec;
    data.chunks_mut(chunk_len).enumerate().for_each(|(i, c)| f(i, c));
}

/// Order-preserving map over `0..len`.
pub(crate) fn map_range<R, F>(exec: Execution, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Derive an independent stream seed from a master seed and a label.
///
/// SplitMix64 over `master ^ fnv1a(label)`; the scheme is recorded in CLI
/// metadata so runs can be replayed.
pub fn derive_seed(master: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(master ^ h)
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Name of the seed split scheme, emitted in run metadata.
pub const SEED_SCHEME: &str = "splitmix64(master ^ fnv1a64(label)) -> ChaCha8";
