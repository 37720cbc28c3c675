use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitStrategy {
    UniformRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub split_seed: u64,
    pub strategy: SplitStrategy,
}

/// Disjoint, jointly exhaustive index sets, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub heldout: Vec<usize>,
}

impl SplitSpec {
    pub fn new(train_fraction: f64, split_seed: u64) -> Result<Self> {
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "train fraction must be in (0, 1), got {train_fraction}"
            )));
        }
        Ok(Self {
            train_fraction,
            split_seed,
            strategy: SplitStrategy::UniformRandom,
        })
    }

    pub fn train_size(&self, n: usize) -> usize {
        (self.train_fraction * n as f64).round() as usize
    }

    /// Partitions `0..n`; deterministic in `split_seed`.
    pub fn partition(&self, n: usize) -> Result<Split> {
        let n_train = self.train_size(n);
        if n_train == 0 || n_train >= n {
            return Err(Error::InvalidParameter(format!(
                "train fraction {} of {n} points leaves an empty partition",
                self.train_fraction
            )));
        }
        let mut order: Vec<usize> = (0..n).collect();
        match self.strategy {
            SplitStrategy::UniformRandom => order.shuffle(&mut ChaCha8Rng::seed_from_u64(self.split_seed)),
        }
        let mut train = order[..n_train].to_vec();
        let mut heldout = order[n_train..].to_vec();
        train.sort_unstable();
        heldout.sort_unstable();
        Ok(Split { train, heldout })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fraction_bounds() {
        assert!(SplitSpec::new(0.0, 1).is_err());
        assert!(SplitSpec::new(1.0, 1).is_err());
        assert!(SplitSpec::new(1.5, 1).is_err());
        assert!(SplitSpec::new(0.01, 1).is_ok());
        assert!(SplitSpec::new(0.01, 1).unwrap().partition(10).is_err());
    }

    #[test]
    fn one_percent_of_tfbind_sized_space() {
        let split = SplitSpec::new(0.01, 0).unwrap().partition(65_536).unwrap();
        assert_eq!(split.train.len(), 655);
        assert_eq!(split.heldout.len(), 65_536 - 655);
    }

    proptest! {
        #[test]
        fn partition_is_exact(n in 2usize..500, f in 0.01f64..0.99, seed in any::<u64>()) {
            let spec = SplitSpec::new(f, seed).unwrap();
            if let Ok(split) = spec.partition(n) {
                let mut all: Vec<usize> = split.train.iter().chain(&split.heldout).copied().collect();
                all.sort_unstable();
                prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
                prop_assert_eq!(split.clone(), spec.partition(n).unwrap());
            }
        }
    }
}
