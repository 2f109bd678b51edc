//! Seeded inputs shared by the benchmarks.

use lochar_core::algebra::IntMatrix;
use lochar_core::pidmod::PidModule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_int_matrices(count: usize, max_side: usize, max_entry: i64, seed: u64) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (r, c) = (rng.random_range(1..=max_side), rng.random_range(1..=max_side));
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.random_range(-max_entry..=max_entry)).collect()).collect();
            IntMatrix::from_rows(&rows).expect("rectangular")
        })
        .collect()
}

pub fn random_modules(count: usize, max_factors: usize, max_factor: u64, seed: u64) -> Vec<PidModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_factors);
            PidModule::new((0..n).map(|_| rng.random_range(0..=max_factor)))
        })
        .collect()
}
