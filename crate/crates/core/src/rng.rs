//! Seeded randomness.
//!
//! Every random decision in the crate goes through [`uniform`], which consumes
//! exactly one `u64` from the generator. Ensembles derive one generator per
//! trial with [`trial_rng`]: a ChaCha8 stream keyed by the master seed
//! (expanded with `SeedableRng::seed_from_u64`) and selected by the trial
//! index. Trial `i` therefore sees the same draws no matter how trials are
//! scheduled across threads.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub use rand_chacha::ChaCha8Rng as TrialRng;

/// Generator for trial `trial_index` of an ensemble seeded with `master_seed`.
pub fn trial_rng(master_seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index);
    rng
}

/// One uniform draw in `[0, 1)` with 53 bits of precision.
pub fn uniform<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    (rng.next_u64() >> 11) as f64 * SCALE
}

/// Inverse-CDF selection over `weights` (which need not be normalized).
///
/// Outcome `i` owns the half-open interval `[c_{i-1}, c_i)` of the running
/// left-to-right sum, scaled by the total. Zero-weight outcomes own an empty
/// interval and are never chosen.
pub(crate) fn pick_index<R: RngCore + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let target = uniform(rng) * total;
    let mut cumulative = 0.0;
    let mut last_nonzero = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        last_nonzero = i;
        cumulative += w;
        if target < cumulative {
            return i;
        }
    }
    // rounding can leave `target` at or just past the final boundary
    last_nonzero
}
