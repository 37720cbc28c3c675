use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::landscape::{Landscape, Provenance};
use super::mlp::{Mlp, MlpConfig};
use super::ridge::{active_features, fit_ridge, RIDGE_LAMBDA};
use super::split::SplitSpec;
use crate::error::{Error, Result};
use crate::seq::{Alphabet, Sequence};

/// Anything that scores sequences.
pub trait Oracle {
    fn evaluator_id(&self) -> String;

    fn alphabet(&self) -> Alphabet;

    /// Required input length, if the oracle has one.
    fn sequence_length(&self) -> Option<usize>;

    /// Scores a sequence given as alphabet indices. Callers guarantee
    /// compatibility (see [`Oracle::check`]).
    fn predict_symbols(&self, symbols: &[usize]) -> f64;

    fn check(&self, seq: &Sequence) -> std::result::Result<(), String> {
        if seq.alphabet() != self.alphabet() {
            return Err(format!("expected {} sequence, got {}", self.alphabet(), seq.alphabet()));
        }
        match self.sequence_length() {
            Some(len) if len != seq.len() => Err(format!("expected length {len}, got {}", seq.len())),
            _ => Ok(()),
        }
    }

    fn predict(&self, seq: &Sequence) -> Result<f64> {
        self.check(seq).map_err(Error::InvalidParameter)?;
        Ok(self.predict_symbols(&seq.indices().collect::<Vec<_>>()))
    }
}

/// Scores every sequence with the same value.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantOracle {
    pub value: f64,
    pub alphabet: Alphabet,
    pub length: Option<usize>,
}

impl Oracle for ConstantOracle {
    fn evaluator_id(&self) -> String {
        format!("constant-{}", self.value)
    }

    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn sequence_length(&self) -> Option<usize> {
        self.length
    }

    fn predict_symbols(&self, _: &[usize]) -> f64 {
        self.value
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Lookup,
    Ridge,
    Mlp,
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleKind::Lookup => "lookup",
            OracleKind::Ridge => "ridge",
            OracleKind::Mlp => "mlp",
        })
    }
}

impl FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lookup" => Ok(OracleKind::Lookup),
            "ridge" => Ok(OracleKind::Ridge),
            "mlp" => Ok(OracleKind::Mlp),
            other => Err(Error::InvalidParameter(format!(
                "unknown oracle kind '{other}' (expected lookup, ridge or mlp)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OracleParams {
    Lookup { scores: Vec<f64> },
    Ridge { lambda: f64, weights: Vec<f64> },
    Mlp { config: MlpConfig, network: Mlp },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingInfo {
    pub landscape: Provenance,
    /// `None` when trained on an explicit index set.
    pub split: Option<SplitSpec>,
    pub train_seed: u64,
    pub train_size: usize,
    /// Range of the training targets: the "dataset range" for probes.
    pub target_min: f64,
    pub target_max: f64,
}

/// A trained surrogate over one-hot features (position-major, 4 per position).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleModel {
    pub length: usize,
    pub training: TrainingInfo,
    pub params: OracleParams,
}

pub fn one_hot_width(length: usize) -> usize {
    4 * length
}

impl OracleModel {
    pub fn kind(&self) -> OracleKind {
        match self.params {
            OracleParams::Lookup { .. } => OracleKind::Lookup,
            OracleParams::Ridge { .. } => OracleKind::Ridge,
            OracleParams::Mlp { .. } => OracleKind::Mlp,
        }
    }

    /// Ground-truth table lookup. Its training set is the whole landscape.
    pub fn lookup(landscape: &Landscape) -> Self {
        Self {
            length: landscape.length(),
            training: TrainingInfo {
                landscape: landscape.provenance().clone(),
                split: None,
                train_seed: 0,
                train_size: landscape.len(),
                target_min: 0.0,
                target_max: 1.0,
            },
            params: OracleParams::Lookup {
                scores: landscape.scores().to_vec(),
            },
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: Self = serde_json::from_str(text)?;
        let expected = match &model.params {
            OracleParams::Lookup { scores } => (scores.len(), 4usize.pow(model.length as u32)),
            OracleParams::Ridge { weights, .. } => (weights.len(), one_hot_width(model.length)),
            OracleParams::Mlp { network, .. } => (network.input_width, one_hot_width(model.length)),
        };
        if expected.0 != expected.1 {
            return Err(Error::InvalidParameter(format!(
                "model parameters do not match length {}",
                model.length
            )));
        }
        Ok(model)
    }
}

impl Oracle for OracleModel {
    fn evaluator_id(&self) -> String {
        match self.kind() {
            OracleKind::Lookup => "lookup".to_string(),
            kind => format!("{kind}-seed{}", self.training.train_seed),
        }
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Dna
    }

    fn sequence_length(&self) -> Option<usize> {
        Some(self.length)
    }

    fn predict_symbols(&self, symbols: &[usize]) -> f64 {
        match &self.params {
            OracleParams::Lookup { scores } => scores[super::landscape::encode(symbols)],
            OracleParams::Ridge { weights, .. } => active_features(symbols).map(|f| weights[f]).sum(),
            OracleParams::Mlp { network, .. } => network.predict(symbols),
        }
    }
}

/// Trains on the `split` partition of `landscape`.
pub fn train_oracle(
    landscape: &Landscape,
    split: &SplitSpec,
    kind: OracleKind,
    train_seed: u64,
) -> Result<OracleModel> {
    let partition = split.partition(landscape.len())?;
    let mut model = train_oracle_on(landscape, &partition.train, kind, train_seed)?;
    if kind != OracleKind::Lookup {
        model.training.split = Some(*split);
    }
    Ok(model)
}

/// Trains on an explicit set of landscape indices.
pub fn train_oracle_on(
    landscape: &Landscape,
    train: &[usize],
    kind: OracleKind,
    train_seed: u64,
) -> Result<OracleModel> {
    if kind == OracleKind::Lookup {
        return Ok(OracleModel::lookup(landscape));
    }
    if train.is_empty() {
        return Err(Error::InvalidParameter("empty training set".into()));
    }
    let samples: Vec<Vec<usize>> = train.iter().map(|&i| landscape.symbols_at(i)).collect();
    let refs: Vec<&[usize]> = samples.iter().map(Vec::as_slice).collect();
    let targets: Vec<f64> = train.iter().map(|&i| landscape.score(i)).collect();
    let width = one_hot_width(landscape.length());

    let params = match kind {
        OracleKind::Ridge => OracleParams::Ridge {
            lambda: RIDGE_LAMBDA,
            weights: fit_ridge(&refs, &targets, width, RIDGE_LAMBDA)?,
        },
        OracleKind::Mlp => {
            let config = MlpConfig::default();
            let mut network = Mlp::init(width, config.hidden, train_seed);
            network.train(&refs, &targets, &config);
            OracleParams::Mlp { config, network }
        }
        OracleKind::Lookup => unreachable!(),
    };
    Ok(OracleModel {
        length: landscape.length(),
        training: TrainingInfo {
            landscape: landscape.provenance().clone(),
            split: None,
            train_seed,
            train_size: train.len(),
            target_min: targets.iter().cloned().fold(f64::INFINITY, f64::min),
            target_max: targets.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        },
        params,
    })
}
