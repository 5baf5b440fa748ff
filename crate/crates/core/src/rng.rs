//! Counter-based seeded randomness.
//!
//! Every random draw in the crate comes from a generator derived from a
//! `(master seed, stream, index)` triple, so Monte Carlo results do not
//! depend on how trials are partitioned across workers.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic generator for trial `index` of stream `stream` under
/// `master`. Distinct triples give independent-looking streams.
pub fn derive_rng(master: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut state = splitmix64(master ^ 0x6A09_E667_F3BC_C908);
    state = splitmix64(state ^ stream);
    state = splitmix64(state ^ index);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        state = splitmix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    ChaCha8Rng::from_seed(seed)
}
