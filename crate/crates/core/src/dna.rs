//! Coverage, GC content, and homopolymer run length for DNA sequences.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::seq::{Alphabet, Sequence};

/// Gate-facing names, in the order [`DnaMeasureVector::values`] emits them.
pub const DNA_MEASURE_NAMES: [&str; 6] = [
    "coverage_a",
    "coverage_c",
    "coverage_g",
    "coverage_t",
    "gc_content",
    "max_homopolymer",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DnaMeasureVector {
    pub coverage_a: f64,
    pub coverage_c: f64,
    pub coverage_g: f64,
    pub coverage_t: f64,
    pub gc_content: f64,
    pub max_homopolymer: usize,
}

impl DnaMeasureVector {
    pub fn values(&self) -> [f64; 6] {
        [
            self.coverage_a,
            self.coverage_c,
            self.coverage_g,
            self.coverage_t,
            self.gc_content,
            self.max_homopolymer as f64,
        ]
    }
}

fn base_counts(seq: &Sequence) -> Result<[usize; 4]> {
    seq.expect_alphabet(Alphabet::Dna)?;
    let mut counts = [0usize; 4];
    for i in seq.indices() {
        counts[i] += 1;
    }
    Ok(counts)
}

/// Fraction of each base, in A, C, G, T order.
pub fn coverage(seq: &Sequence) -> Result<[f64; 4]> {
    let counts = base_counts(seq)?;
    let n = seq.len() as f64;
    Ok(counts.map(|c| c as f64 / n))
}

pub fn gc_content(seq: &Sequence) -> Result<f64> {
    let counts = base_counts(seq)?;
    Ok((counts[1] + counts[2]) as f64 / seq.len() as f64)
}

/// Length of the longest run of one repeated base.
pub fn max_homopolymer(seq: &Sequence) -> Result<usize> {
    seq.expect_alphabet(Alphabet::Dna)?;
    let bytes = seq.as_bytes();
    let mut best = 1;
    let mut run = 1;
    for w in bytes.windows(2) {
        if w[0] == w[1] {
            run += 1;
            best = best.max(run);
        } else {
            run = 1;
        }
    }
    Ok(best)
}

pub fn dna_measures(seq: &Sequence) -> Result<DnaMeasureVector> {
    let counts = base_counts(seq)?;
    let n = seq.len() as f64;
    let [a, c, g, t] = counts.map(|k| k as f64 / n);
    Ok(DnaMeasureVector {
        coverage_a: a,
        coverage_c: c,
        coverage_g: g,
        coverage_t: t,
        gc_content: (counts[1] + counts[2]) as f64 / n,
        max_homopolymer: max_homopolymer(seq)?,
    })
}
