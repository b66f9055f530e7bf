//! Per-replication random streams.
//!
//! Every replication draws from its own ChaCha8 stream keyed by the pair
//! (master seed, replication index). The stream for a given pair does not
//! depend on how replications are scheduled across threads, so a campaign's
//! per-replication values are fixed by its seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type ReplicationRng = ChaCha8Rng;

/// The stream owned by replication `index` of a campaign seeded with `seed`.
pub fn replication_stream(seed: u64, index: u64) -> ReplicationRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub(crate) fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub(crate) fn fill_standard_normal<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    for x in out {
        *x = rng.sample(StandardNormal);
    }
}
