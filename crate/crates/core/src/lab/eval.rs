use std::io::Write;

use serde::{Deserialize, Serialize};

use super::landscape::{encode, Landscape, Provenance};
use super::model::{Oracle, OracleModel};
use super::split::SplitSpec;
use crate::error::{Error, Result};
use crate::io::format_real;
use crate::stats::{mean, pearson, quantile_sorted, sorted};

pub const HISTOGRAM_BINS: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionSummary {
    pub size: usize,
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub p95: Option<f64>,
    pub counts: Vec<usize>,
}

/// Absolute prediction errors on the train and held-out partitions, binned
/// into [`HISTOGRAM_BINS`] equal-width bins over `[0, max_error]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorHistogram {
    pub evaluator_id: String,
    pub landscape: Provenance,
    pub split: SplitSpec,
    pub max_error: f64,
    pub bin_width: f64,
    pub train: PartitionSummary,
    pub heldout: PartitionSummary,
    /// Pearson correlation between `|truth - median(truth)|` and absolute
    /// error on the held-out set; `None` if either side is constant.
    pub extremes_correlation: Option<f64>,
    #[serde(skip)]
    pub train_errors: Vec<f64>,
    #[serde(skip)]
    pub heldout_errors: Vec<f64>,
}

impl ErrorHistogram {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Two-column `error,partition` CSV of every per-sequence error.
    pub fn write_errors_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "error,partition")?;
        for e in &self.train_errors {
            writeln!(w, "{},train", format_real(*e))?;
        }
        for e in &self.heldout_errors {
            writeln!(w, "{},heldout", format_real(*e))?;
        }
        Ok(())
    }
}

fn summarize(errors: &[f64], max_error: f64, bin_width: f64) -> PartitionSummary {
    let mut counts = vec![0usize; HISTOGRAM_BINS];
    for &e in errors {
        let bin = if bin_width > 0.0 {
            ((e / bin_width) as usize).min(HISTOGRAM_BINS - 1)
        } else {
            0
        };
        counts[bin] += 1;
    }
    debug_assert!(errors.iter().all(|e| *e <= max_error));
    if errors.is_empty() {
        return PartitionSummary {
            size: 0,
            mean: None,
            median: None,
            p95: None,
            counts,
        };
    }
    let ordered = sorted(errors.iter().copied());
    PartitionSummary {
        size: errors.len(),
        mean: Some(mean(errors)),
        median: Some(quantile_sorted(&ordered, 0.5)),
        p95: Some(quantile_sorted(&ordered, 0.95)),
        counts,
    }
}

/// Scores the whole landscape and compares against ground truth on the
/// partitions `split` reproduces.
pub fn evaluate_oracle(oracle: &dyn Oracle, landscape: &Landscape, split: &SplitSpec) -> Result<ErrorHistogram> {
    if oracle.sequence_length().is_some_and(|l| l != landscape.length()) {
        return Err(Error::InvalidParameter(format!(
            "oracle expects length {:?}, landscape has length {}",
            oracle.sequence_length(),
            landscape.length()
        )));
    }
    let partition = split.partition(landscape.len())?;
    let error_at = |i: usize| (oracle.predict_symbols(&landscape.symbols_at(i)) - landscape.score(i)).abs();
    let train_errors: Vec<f64> = partition.train.iter().map(|&i| error_at(i)).collect();
    let heldout_errors: Vec<f64> = partition.heldout.iter().map(|&i| error_at(i)).collect();

    let max_error = train_errors.iter().chain(&heldout_errors).cloned().fold(0.0, f64::max);
    let bin_width = max_error / HISTOGRAM_BINS as f64;

    let heldout_truth: Vec<f64> = partition.heldout.iter().map(|&i| landscape.score(i)).collect();
    let median = quantile_sorted(&sorted(heldout_truth.iter().copied()), 0.5);
    let distance: Vec<f64> = heldout_truth.iter().map(|t| (t - median).abs()).collect();

    Ok(ErrorHistogram {
        evaluator_id: oracle.evaluator_id(),
        landscape: landscape.provenance().clone(),
        split: *split,
        max_error,
        bin_width,
        train: summarize(&train_errors, max_error, bin_width),
        heldout: summarize(&heldout_errors, max_error, bin_width),
        extremes_correlation: pearson(&distance, &heldout_errors),
        train_errors,
        heldout_errors,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub sequence: String,
    pub prediction: f64,
    pub truth: f64,
    pub exceeds_dataset_range: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub evaluator_id: String,
    pub training_min: f64,
    pub training_max: f64,
    pub probes: Vec<ProbeRow>,
}

impl ProbeReport {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "sequence,prediction,truth,training_max,exceeds_dataset_range")?;
        for p in &self.probes {
            writeln!(
                w,
                "{},{},{},{},{}",
                p.sequence,
                format_real(p.prediction),
                format_real(p.truth),
                format_real(self.training_max),
                p.exceeds_dataset_range
            )?;
        }
        Ok(())
    }
}

/// Scores the four homopolymers and flags predictions outside the range of
/// the oracle's training targets.
pub fn ood_probe(oracle: &OracleModel, landscape: &Landscape) -> Result<ProbeReport> {
    if oracle.length != landscape.length() {
        return Err(Error::InvalidParameter(format!(
            "oracle length {} does not match landscape length {}",
            oracle.length,
            landscape.length()
        )));
    }
    let (lo, hi) = (oracle.training.target_min, oracle.training.target_max);
    let probes = (0..4)
        .map(|base| {
            let symbols = vec![base; landscape.length()];
            let prediction = oracle.predict_symbols(&symbols);
            ProbeRow {
                sequence: landscape.sequence_at(encode(&symbols)).to_string(),
                prediction,
                truth: landscape.score(encode(&symbols)),
                exceeds_dataset_range: prediction > hi || prediction < lo,
            }
        })
        .collect();
    Ok(ProbeReport {
        evaluator_id: oracle.evaluator_id(),
        training_min: lo,
        training_max: hi,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{synth_landscape, train_oracle, ConstantOracle, OracleKind};
    use crate::seq::Alphabet;

    #[test]
    fn lookup_has_zero_error() {
        let landscape = synth_landscape(7, 2, 6).unwrap();
        let split = SplitSpec::new(0.05, 1).unwrap();
        let h = evaluate_oracle(&OracleModel::lookup(&landscape), &landscape, &split).unwrap();
        assert_eq!(h.max_error, 0.0);
        assert_eq!(h.train.mean, Some(0.0));
        assert_eq!(h.heldout.mean, Some(0.0));
        assert_eq!(h.train.counts[0], h.train.size);
        assert_eq!(h.extremes_correlation, None);
    }

    #[test]
    fn constant_mean_oracle_gives_mean_absolute_deviation() {
        let landscape = synth_landscape(3, 1, 6).unwrap();
        let split = SplitSpec::new(0.1, 2).unwrap();
        let partition = split.partition(landscape.len()).unwrap();
        let c = 0.42;
        let oracle = ConstantOracle {
            value: c,
            alphabet: Alphabet::Dna,
            length: Some(6),
        };
        let h = evaluate_oracle(&oracle, &landscape, &split).unwrap();
        let expected: f64 = partition
            .heldout
            .iter()
            .map(|&i| (landscape.score(i) - c).abs())
            .sum::<f64>()
            / partition.heldout.len() as f64;
        assert!((h.heldout.mean.unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn bins_sum_to_partition_sizes() {
        let landscape = synth_landscape(9, 2, 6).unwrap();
        let split = SplitSpec::new(0.1, 2).unwrap();
        let model = train_oracle(&landscape, &split, OracleKind::Ridge, 0).unwrap();
        let h = evaluate_oracle(&model, &landscape, &split).unwrap();
        assert_eq!(h.train.counts.iter().sum::<usize>(), h.train.size);
        assert_eq!(h.heldout.counts.iter().sum::<usize>(), h.heldout.size);
        assert_eq!(h.train.size + h.heldout.size, landscape.len());
        assert_eq!(h.train.counts.len(), HISTOGRAM_BINS);
        assert!(h.train_errors.iter().chain(&h.heldout_errors).all(|e| *e >= 0.0));

        let mut csv = Vec::new();
        h.write_errors_csv(&mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), landscape.len() + 1);
    }

    #[test]
    fn lookup_probe_never_exceeds() {
        let landscape = synth_landscape(7, 2, 8).unwrap();
        let report = ood_probe(&OracleModel::lookup(&landscape), &landscape).unwrap();
        assert_eq!(report.probes.len(), 4);
        assert_eq!(report.probes[0].sequence, "AAAAAAAA");
        assert_eq!(report.probes[3].sequence, "TTTTTTTT");
        assert!(report.probes.iter().all(|p| !p.exceeds_dataset_range));
        assert!(report.probes.iter().all(|p| p.prediction == p.truth));
    }

    #[test]
    fn probe_flag_is_definitional() {
        let landscape = synth_landscape(7, 2, 6).unwrap();
        let split = SplitSpec::new(0.05, 0).unwrap();
        let model = train_oracle(&landscape, &split, OracleKind::Ridge, 0).unwrap();
        let report = ood_probe(&model, &landscape).unwrap();
        for p in &report.probes {
            let outside = p.prediction > report.training_max || p.prediction < report.training_min;
            assert_eq!(p.exceeds_dataset_range, outside);
        }
    }
}
