//! Reference-derived acceptance ranges, batch validation, and the
//! k-nearest-neighbour conformity cross-check.

use std::io::Write;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{mismatch, MeasureTable};
use crate::stats::{mean, quantile_sorted, sample_std, sorted};

pub const DEFAULT_QUANTILE_MASS: f64 = 0.99;
pub const MIN_REFERENCE_SIZE: usize = 10;
pub const DEFAULT_NEIGHBOURS: usize = 5;
pub const DEFAULT_CONFORMITY_THRESHOLD: f64 = 0.01;

/// Closed interval; membership is inclusive at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceRanges {
    pub reference_name: String,
    pub quantile_mass: f64,
    pub reference_size: usize,
    /// Fraction of the reference that is valid under these ranges.
    pub reference_valid_fraction: f64,
    pub ranges: IndexMap<String, Interval>,
}

impl AcceptanceRanges {
    /// `q - m (1 - q)`: the union-bound floor on `reference_valid_fraction`.
    pub fn union_bound_floor(&self) -> f64 {
        self.quantile_mass - self.ranges.len() as f64 * (1.0 - self.quantile_mass)
    }

    pub fn measure_names(&self) -> Vec<String> {
        self.ranges.keys().cloned().collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Per-measure middle-quantile ranges: `[Q((1-q)/2), Q(1-(1-q)/2)]`.
pub fn compute_ranges(reference: &MeasureTable, quantile_mass: f64, reference_name: &str) -> Result<AcceptanceRanges> {
    if !(quantile_mass > 0.0 && quantile_mass <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "quantile mass must be in (0, 1], got {quantile_mass}"
        )));
    }
    if reference.len() < MIN_REFERENCE_SIZE {
        return Err(Error::ReferenceTooSmall {
            got: reference.len(),
            min: MIN_REFERENCE_SIZE,
        });
    }
    let tail = (1.0 - quantile_mass) / 2.0;
    let mut ranges = IndexMap::new();
    for (j, name) in reference.names().iter().enumerate() {
        let column = sorted(reference.column(j));
        let interval = Interval {
            lo: quantile_sorted(&column, tail),
            hi: quantile_sorted(&column, 1.0 - tail),
        };
        ranges.insert(name.clone(), interval);
    }
    let mut out = AcceptanceRanges {
        reference_name: reference_name.to_string(),
        quantile_mass,
        reference_size: reference.len(),
        reference_valid_fraction: 0.0,
        ranges,
    };
    out.reference_valid_fraction = validate_batch(reference, &out, reference_name)?.percent_valid;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureCheck {
    pub value: f64,
    pub in_range: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceValidity {
    pub id: String,
    pub valid: bool,
    pub measures: IndexMap<String, MeasureCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub batch_name: String,
    pub reference_name: String,
    pub batch_size: usize,
    pub valid_count: usize,
    /// Valid fraction in [0, 1].
    pub percent_valid: f64,
    /// Number of sequences failing each measure.
    pub failing_counts: IndexMap<String, usize>,
    pub sequences: Vec<SequenceValidity>,
}

impl ValidityReport {
    pub fn valid_flags(&self) -> Vec<bool> {
        self.sequences.iter().map(|s| s.valid).collect()
    }

    /// Measure with the most failures; the first in measure order on ties.
    pub fn top_failing_measure(&self) -> Option<(&str, usize)> {
        let mut best: Option<(&str, usize)> = None;
        for (name, &count) in &self.failing_counts {
            if count > 0 && best.is_none_or(|(_, c)| count > c) {
                best = Some((name, count));
            }
        }
        best
    }
}

pub fn validate_batch(batch: &MeasureTable, ranges: &AcceptanceRanges, batch_name: &str) -> Result<ValidityReport> {
    if batch.is_empty() {
        return Err(Error::Empty("batch"));
    }
    let expected = ranges.measure_names();
    if batch.names() != expected.as_slice() {
        return Err(mismatch(&expected, batch.names()));
    }
    let mut failing_counts: IndexMap<String, usize> = expected.iter().map(|n| (n.clone(), 0)).collect();
    let mut sequences = Vec::with_capacity(batch.len());
    for (id, row) in batch.ids().iter().zip(batch.rows()) {
        let mut measures = IndexMap::with_capacity(row.len());
        let mut valid = true;
        for ((name, interval), &value) in ranges.ranges.iter().zip(row) {
            let in_range = interval.contains(value);
            if !in_range {
                valid = false;
                failing_counts[name] += 1;
            }
            measures.insert(name.clone(), MeasureCheck { value, in_range });
        }
        sequences.push(SequenceValidity {
            id: id.clone(),
            valid,
            measures,
        });
    }
    let valid_count = sequences.iter().filter(|s| s.valid).count();
    Ok(ValidityReport {
        batch_name: batch_name.to_string(),
        reference_name: ranges.reference_name.clone(),
        batch_size: batch.len(),
        valid_count,
        percent_valid: valid_count as f64 / batch.len() as f64,
        failing_counts,
        sequences,
    })
}

/// One `method,n,percent_valid,top_failing_measure` row per report.
pub fn write_summary_csv<W: Write>(mut w: W, reports: &[ValidityReport]) -> Result<()> {
    writeln!(w, "method,n,percent_valid,top_failing_measure")?;
    for r in reports {
        let top = r.top_failing_measure().map_or("", |(name, _)| name);
        writeln!(
            w,
            "{},{},{},{}",
            r.batch_name,
            r.batch_size,
            crate::io::format_real(r.percent_valid),
            top
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformityReport {
    pub k: usize,
    pub threshold: f64,
    /// Measures excluded because they have zero spread in the reference.
    pub dropped_measures: Vec<String>,
    pub ids: Vec<String>,
    pub scores: Vec<f64>,
    pub valid: Vec<bool>,
    pub percent_valid: f64,
}

struct Standardizer {
    columns: Vec<usize>,
    means: Vec<f64>,
    stds: Vec<f64>,
}

impl Standardizer {
    fn fit(reference: &MeasureTable) -> (Self, Vec<String>) {
        let mut out = Standardizer {
            columns: Vec::new(),
            means: Vec::new(),
            stds: Vec::new(),
        };
        let mut dropped = Vec::new();
        for (j, name) in reference.names().iter().enumerate() {
            let column: Vec<f64> = reference.column(j).collect();
            let sd = sample_std(&column);
            if sd > 0.0 && sd.is_finite() {
                out.columns.push(j);
                out.means.push(mean(&column));
                out.stds.push(sd);
            } else {
                log::warn!("measure '{name}' has zero spread in the reference; dropped from conformity scoring");
                dropped.push(name.clone());
            }
        }
        (out, dropped)
    }

    fn apply(&self, row: &[f64]) -> Vec<f64> {
        self.columns
            .iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(&j, (m, s))| (row[j] - m) / s)
            .collect()
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Mean of the `k` smallest distances, summed in ascending order.
fn mean_of_smallest(distances: &mut [f64], k: usize) -> f64 {
    distances.select_nth_unstable_by(k - 1, f64::total_cmp);
    let nearest = &mut distances[..k];
    nearest.sort_by(f64::total_cmp);
    nearest.iter().sum::<f64>() / k as f64
}

/// Conformity of each batch vector to the reference distribution.
///
/// Nonconformity is the mean Euclidean distance to the `k` nearest reference
/// points in reference-z-scored space (one exact match is left out, so a
/// reference point is not its own neighbour). The score is the fraction of
/// reference nonconformities at least as large as the point's own.
pub fn conformity_scores(
    batch: &MeasureTable,
    reference: &MeasureTable,
    k: usize,
    threshold: f64,
) -> Result<ConformityReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidParameter(format!(
            "threshold must be in [0, 1], got {threshold}"
        )));
    }
    if batch.is_empty() {
        return Err(Error::Empty("batch"));
    }
    if reference.len() <= k {
        return Err(Error::ReferenceTooSmall {
            got: reference.len(),
            min: k + 1,
        });
    }
    if batch.names() != reference.names() {
        return Err(mismatch(reference.names(), batch.names()));
    }

    let (scaler, dropped_measures) = Standardizer::fit(reference);
    if scaler.columns.is_empty() {
        return Err(Error::InvalidParameter(
            "every measure has zero spread in the reference".into(),
        ));
    }
    let reference_z: Vec<Vec<f64>> = reference.rows().iter().map(|r| scaler.apply(r)).collect();

    let mut scratch = Vec::with_capacity(reference_z.len());
    let mut reference_nc: Vec<f64> = reference_z
        .iter()
        .enumerate()
        .map(|(i, x)| {
            scratch.clear();
            scratch.extend(
                reference_z
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, y)| distance(x, y)),
            );
            mean_of_smallest(&mut scratch, k)
        })
        .collect();
    reference_nc.sort_by(f64::total_cmp);
    let n_ref = reference_nc.len() as f64;

    let mut scores = Vec::with_capacity(batch.len());
    for row in batch.rows() {
        let x = scaler.apply(row);
        scratch.clear();
        let mut skipped_self = false;
        for y in &reference_z {
            let d = distance(&x, y);
            if d == 0.0 && !skipped_self {
                skipped_self = true;
                continue;
            }
            scratch.push(d);
        }
        let nc = mean_of_smallest(&mut scratch, k);
        let at_least = reference_nc.len() - reference_nc.partition_point(|&r| r < nc);
        scores.push(at_least as f64 / n_ref);
    }
    let valid: Vec<bool> = scores.iter().map(|&s| s >= threshold).collect();
    let percent_valid = valid.iter().filter(|&&v| v).count() as f64 / valid.len() as f64;
    Ok(ConformityReport {
        k,
        threshold,
        dropped_measures,
        ids: batch.ids().to_vec(),
        scores,
        valid,
        percent_valid,
    })
}

/// Fraction of sequences flagged identically by both gates.
pub fn agreement(gate: &ValidityReport, conformity: &ConformityReport) -> Result<f64> {
    let flags = gate.valid_flags();
    if flags.len() != conformity.valid.len() {
        return Err(Error::SizeMismatch {
            left: flags.len(),
            right: conformity.valid.len(),
        });
    }
    if flags.is_empty() {
        return Err(Error::Empty("batch"));
    }
    let same = flags.iter().zip(&conformity.valid).filter(|(a, b)| a == b).count();
    Ok(same as f64 / flags.len() as f64)
}
