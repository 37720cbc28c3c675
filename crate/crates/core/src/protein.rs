//! Protein physicochemical descriptors over the embedded constant tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{Alphabet, Sequence};
use crate::tables::{pka, AVERAGE_RESIDUE_MASS, DIWV, KYTE_DOOLITTLE, WATER_MASS};

pub const PROTEIN_MEASURE_NAMES: [&str; 5] = [
    "molecular_weight",
    "aromaticity",
    "isoelectric_point",
    "gravy",
    "instability_index",
];

const PI_TOLERANCE_PH: f64 = 1e-4;
const PI_TOLERANCE_CHARGE: f64 = 1e-3;
const PI_MAX_ITERATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProteinMeasureVector {
    pub molecular_weight: f64,
    pub aromaticity: f64,
    pub isoelectric_point: f64,
    pub gravy: f64,
    pub instability_index: f64,
}

impl ProteinMeasureVector {
    pub fn values(&self) -> [f64; 5] {
        [
            self.molecular_weight,
            self.aromaticity,
            self.isoelectric_point,
            self.gravy,
            self.instability_index,
        ]
    }
}

fn checked(seq: &Sequence) -> Result<()> {
    seq.expect_alphabet(Alphabet::Protein)
}

/// Average mass of the intact chain in daltons.
pub fn molecular_weight(seq: &Sequence) -> Result<f64> {
    checked(seq)?;
    let residues: f64 = seq.indices().map(|i| AVERAGE_RESIDUE_MASS[i]).sum();
    Ok(residues + WATER_MASS)
}

/// Fraction of F, W and Y residues.
pub fn aromaticity(seq: &Sequence) -> Result<f64> {
    checked(seq)?;
    let aromatic = seq
        .as_bytes()
        .iter()
        .filter(|b| matches!(b, b'F' | b'W' | b'Y'))
        .count();
    Ok(aromatic as f64 / seq.len() as f64)
}

/// Net charge at `ph` by Henderson-Hasselbalch over both termini and every
/// ionizable side chain.
pub fn charge_at_ph(seq: &Sequence, ph: f64) -> Result<f64> {
    checked(seq)?;
    let positive = |pk: f64| 1.0 / (10f64.powf(ph - pk) + 1.0);
    let negative = |pk: f64| 1.0 / (10f64.powf(pk - ph) + 1.0);

    let mut counts = [0usize; 7];
    for b in seq.as_bytes() {
        match b {
            b'K' => counts[0] += 1,
            b'R' => counts[1] += 1,
            b'H' => counts[2] += 1,
            b'D' => counts[3] += 1,
            b'E' => counts[4] += 1,
            b'C' => counts[5] += 1,
            b'Y' => counts[6] += 1,
            _ => {}
        }
    }
    let [k, r, h, d, e, c, y] = counts.map(|n| n as f64);

    let pos = positive(pka::N_TERM) + k * positive(pka::K) + r * positive(pka::R) + h * positive(pka::H);
    let neg = negative(pka::C_TERM)
        + d * negative(pka::D)
        + e * negative(pka::E)
        + c * negative(pka::C)
        + y * negative(pka::Y);
    Ok(pos - neg)
}

/// pH of zero net charge, by bisection on [0, 14].
pub fn isoelectric_point(seq: &Sequence) -> Result<f64> {
    checked(seq)?;
    let (mut lo, mut hi) = (0.0f64, 14.0f64);
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..PI_MAX_ITERATIONS {
        mid = 0.5 * (lo + hi);
        let charge = charge_at_ph(seq, mid)?;
        if hi - lo <= PI_TOLERANCE_PH && charge.abs() <= PI_TOLERANCE_CHARGE {
            break;
        }
        // Charge decreases with pH.
        if charge > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

/// Grand average of hydropathy.
pub fn gravy(seq: &Sequence) -> Result<f64> {
    checked(seq)?;
    let total: f64 = seq.indices().map(|i| KYTE_DOOLITTLE[i]).sum();
    Ok(total / seq.len() as f64)
}

pub fn instability_index(seq: &Sequence) -> Result<f64> {
    checked(seq)?;
    if seq.len() < 2 {
        return Err(Error::InsufficientLength { len: seq.len(), min: 2 });
    }
    let idx: Vec<usize> = seq.indices().collect();
    let mut total = 0.0;
    for w in idx.windows(2) {
        total += DIWV[w[0]][w[1]];
    }
    Ok(10.0 * total / seq.len() as f64)
}

pub fn protein_measures(seq: &Sequence) -> Result<ProteinMeasureVector> {
    Ok(ProteinMeasureVector {
        instability_index: instability_index(seq)?,
        molecular_weight: molecular_weight(seq)?,
        aromaticity: aromaticity(seq)?,
        isoelectric_point: isoelectric_point(seq)?,
        gravy: gravy(seq)?,
    })
}
