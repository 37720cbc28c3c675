//! Evaluation toolkit for in-silico biological sequence design.
//!
//! - [`seq`] and [`io`]: alphabets, validated sequences, FASTA and CSV.
//! - [`dna`] and [`protein`]: per-sequence biophysical descriptors.
//! - [`gate`]: reference-quantile validity gating plus a k-NN conformity
//!   cross-check.
//! - [`rank`]: ranking design methods under several oracles and measuring
//!   how much the rankings disagree.
//! - [`lab`]: a fully enumerated landscape for studying surrogate-oracle
//!   errors away from the training data.

pub mod dna;
pub mod error;
pub mod gate;
pub mod io;
pub mod lab;
pub mod measures;
pub mod protein;
pub mod rank;
pub mod seq;
pub mod stats;
pub mod tables;

pub use error::{Error, Result};
pub use gate::{AcceptanceRanges, ConformityReport, ValidityReport};
pub use io::ScoredDataset;
pub use lab::{ErrorHistogram, Landscape, Oracle, OracleKind, OracleModel, SplitSpec};
pub use measures::{MeasureTable, MeasureVector};
pub use rank::{ConsistencyReport, MethodBatch, RankTable, StatisticKind};
pub use seq::{filter_by_length, Alphabet, Sequence};
