//! Shared fixtures for the benchmarks.

use amvp_core::plaplace::QuadraticProbe;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded weighted sample set of the given size.
pub fn samples(size: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..size).map(|_| rng.random_range(-1.0..1.0)).collect();
    let weights = (0..size).map(|_| rng.random_range(0.05..1.0)).collect();
    (values, weights)
}

pub fn probe(n: usize, seed: u64) -> QuadraticProbe {
    QuadraticProbe::random(n, &mut ChaCha8Rng::seed_from_u64(seed), true)
}
