//! A fully enumerated DNA landscape with trainable surrogate oracles, for
//! measuring how learned oracles behave away from their training data.

mod eval;
mod landscape;
mod mlp;
mod model;
mod ridge;
mod split;

pub use eval::{evaluate_oracle, ood_probe, ErrorHistogram, PartitionSummary, ProbeReport, ProbeRow, HISTOGRAM_BINS};
pub use landscape::{load_landscape, synth_landscape, Landscape, Provenance, MAX_LANDSCAPE_LENGTH};
pub use mlp::{Mlp, MlpConfig};
pub use model::{
    one_hot_width, train_oracle, train_oracle_on, ConstantOracle, Oracle, OracleKind, OracleModel, OracleParams,
    TrainingInfo,
};
pub use ridge::{fit_ridge, RIDGE_LAMBDA};
pub use split::{Split, SplitSpec, SplitStrategy};
