use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::ScoredDataset;
use crate::seq::{Alphabet, Sequence};

/// Longest sequence length we are willing to enumerate (4^12 = 16.7M entries).
pub const MAX_LANDSCAPE_LENGTH: usize = 12;

const MAX_LISTED: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase")]
pub enum Provenance {
    Loaded { name: String, raw_min: f64, raw_max: f64 },
    Synthetic { seed: u64, k: usize },
}

/// Every DNA sequence of one length mapped to a score in [0, 1].
///
/// Entry `i` belongs to the sequence whose base-4 digits (A=0, C=1, G=2,
/// T=3, first position most significant) spell `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape {
    length: usize,
    scores: Vec<f64>,
    provenance: Provenance,
}

impl Landscape {
    fn from_raw(length: usize, mut scores: Vec<f64>, provenance: impl FnOnce(f64, f64) -> Provenance) -> Result<Self> {
        let min = scores.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if max <= min {
            return Err(Error::Landscape("all scores are equal; cannot normalize".into()));
        }
        let span = max - min;
        for s in &mut scores {
            *s = (*s - min) / span;
        }
        Ok(Self {
            length,
            scores,
            provenance: provenance(min, max),
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::Dna
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn score(&self, index: usize) -> f64 {
        self.scores[index]
    }

    /// Base indices of entry `index`, first position first.
    pub fn symbols_at(&self, index: usize) -> Vec<usize> {
        decode(index, self.length)
    }

    pub fn sequence_at(&self, index: usize) -> Sequence {
        Sequence::from_indices(Alphabet::Dna, &self.symbols_at(index))
    }

    pub fn index_of_symbols(&self, symbols: &[usize]) -> usize {
        encode(symbols)
    }

    pub fn index_of(&self, seq: &Sequence) -> Result<usize> {
        seq.expect_alphabet(Alphabet::Dna)?;
        if seq.len() != self.length {
            return Err(Error::Landscape(format!(
                "sequence length {} does not match landscape length {}",
                seq.len(),
                self.length
            )));
        }
        Ok(encode(&seq.indices().collect::<Vec<_>>()))
    }

    /// Scored entries in index order, for CSV export.
    pub fn entries(&self) -> Vec<(Sequence, f64)> {
        (0..self.len()).map(|i| (self.sequence_at(i), self.scores[i])).collect()
    }

    /// Builds a landscape from a dataset that enumerates every sequence of
    /// one length exactly once; scores are min-max normalized.
    pub fn load(dataset: &ScoredDataset) -> Result<Self> {
        let first = dataset.entries.first().ok_or(Error::NoRecords)?;
        let length = first.0.len();
        if length > MAX_LANDSCAPE_LENGTH {
            return Err(Error::Landscape(format!(
                "length {length} exceeds the enumerable maximum {MAX_LANDSCAPE_LENGTH}"
            )));
        }
        let size = 4usize.pow(length as u32);
        let mut raw: Vec<Option<f64>> = vec![None; size];
        let mut duplicates = Vec::new();
        for (seq, score) in &dataset.entries {
            seq.expect_alphabet(Alphabet::Dna)?;
            if seq.len() != length {
                return Err(Error::Landscape(format!(
                    "mixed lengths: '{}' has length {}, expected {length}",
                    seq.residues(),
                    seq.len()
                )));
            }
            let idx = encode(&seq.indices().collect::<Vec<_>>());
            if raw[idx].replace(*score).is_some() {
                duplicates.push(seq.residues().to_string());
            }
        }
        let missing: Vec<usize> = raw
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(i, _)| i)
            .collect();
        if !missing.is_empty() || !duplicates.is_empty() {
            let mut parts = Vec::new();
            if !missing.is_empty() {
                let shown: Vec<String> = missing
                    .iter()
                    .take(MAX_LISTED)
                    .map(|&i| Sequence::from_indices(Alphabet::Dna, &decode(i, length)).to_string())
                    .collect();
                parts.push(format!("{} missing (e.g. {})", missing.len(), shown.join(", ")));
            }
            if !duplicates.is_empty() {
                let shown: Vec<&str> = duplicates.iter().take(MAX_LISTED).map(String::as_str).collect();
                parts.push(format!("{} duplicated (e.g. {})", duplicates.len(), shown.join(", ")));
            }
            return Err(Error::Landscape(parts.join("; ")));
        }
        let scores = raw.into_iter().map(|s| s.expect("checked complete")).collect();
        let name = dataset.name.clone();
        Self::from_raw(length, scores, |raw_min, raw_max| Provenance::Loaded {
            name,
            raw_min,
            raw_max,
        })
    }
}

pub fn load_landscape(dataset: &ScoredDataset) -> Result<Landscape> {
    Landscape::load(dataset)
}

pub(crate) fn decode(mut index: usize, length: usize) -> Vec<usize> {
    let mut out = vec![0; length];
    for slot in out.iter_mut().rev() {
        *slot = index & 3;
        index >>= 2;
    }
    out
}

pub(crate) fn encode(symbols: &[usize]) -> usize {
    symbols.iter().fold(0, |acc, &s| (acc << 2) | s)
}

/// NK-style landscape: position `i` contributes `f_i(s_i, s_{i+1}, ..,
/// s_{i+K})` (neighbours wrap around), each `f_i` a table of U[0, 1)
/// draws; the score is the mean contribution, then min-max normalized.
pub fn synth_landscape(seed: u64, k: usize, length: usize) -> Result<Landscape> {
    if length == 0 || length > MAX_LANDSCAPE_LENGTH {
        return Err(Error::InvalidParameter(format!(
            "landscape length must be in 1..={MAX_LANDSCAPE_LENGTH}, got {length}"
        )));
    }
    if k >= length {
        return Err(Error::InvalidParameter(format!(
            "K must be smaller than the length ({k} >= {length})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table_size = 4usize.pow(k as u32 + 1);
    let tables: Vec<Vec<f64>> = (0..length)
        .map(|_| (0..table_size).map(|_| rng.random::<f64>()).collect())
        .collect();

    let size = 4usize.pow(length as u32);
    let mut scores = Vec::with_capacity(size);
    for index in 0..size {
        let s = decode(index, length);
        let mut total = 0.0;
        for (i, table) in tables.iter().enumerate() {
            let key = (0..=k).fold(0, |acc, j| (acc << 2) | s[(i + j) % length]);
            total += table[key];
        }
        scores.push(total / length as f64);
    }
    Landscape::from_raw(length, scores, |_, _| Provenance::Synthetic { seed, k })
}
