//! Seeded input fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqgauntlet::{Alphabet, MeasureTable, Sequence};

/// `n` uniform random sequences of length `len`.
pub fn random_sequences(alphabet: Alphabet, n: usize, len: usize, seed: u64) -> Vec<Sequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let idx: Vec<usize> = (0..len).map(|_| rng.random_range(0..alphabet.size())).collect();
            Sequence::from_indices(alphabet, &idx)
        })
        .collect()
}

/// Measure table of `n` random DNA sequences of length 50.
pub fn dna_table(n: usize, seed: u64) -> MeasureTable {
    MeasureTable::from_sequences(&random_sequences(Alphabet::Dna, n, 50, seed)).expect("valid sequences")
}
