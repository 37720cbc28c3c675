//! Named measure vectors and tables, shared by the DNA and protein suites.

use std::io::{Read, Write};

use crate::dna::{dna_measures, DNA_MEASURE_NAMES};
use crate::error::{Error, Result};
use crate::io::format_real;
use crate::protein::{protein_measures, PROTEIN_MEASURE_NAMES};
use crate::seq::{Alphabet, Sequence};

/// Named scalar descriptors for one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureVector {
    pub names: Vec<String>,
    pub values: Vec<f64>,
}

impl MeasureVector {
    pub fn new(names: &[&str], values: Vec<f64>) -> Self {
        assert_eq!(names.len(), values.len());
        Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            values,
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| n == name).map(|i| self.values[i])
    }
}

pub fn measure_names(alphabet: Alphabet) -> &'static [&'static str] {
    match alphabet {
        Alphabet::Dna => &DNA_MEASURE_NAMES,
        Alphabet::Protein => &PROTEIN_MEASURE_NAMES,
    }
}

/// The full suite for the sequence's alphabet: 6 gate measures for DNA
/// (coverage split per base), 5 for protein.
pub fn measure_sequence(seq: &Sequence) -> Result<MeasureVector> {
    let values = match seq.alphabet() {
        Alphabet::Dna => dna_measures(seq)?.values().to_vec(),
        Alphabet::Protein => protein_measures(seq)?.values().to_vec(),
    };
    Ok(MeasureVector::new(measure_names(seq.alphabet()), values))
}

/// A row-major table of measure vectors sharing one measure set.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTable {
    names: Vec<String>,
    ids: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl MeasureTable {
    pub fn new(names: Vec<String>) -> Self {
        Self {
            names,
            ids: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn from_rows(names: &[&str], rows: Vec<Vec<f64>>) -> Result<Self> {
        let mut table = Self::new(names.iter().map(|s| s.to_string()).collect());
        for (i, row) in rows.into_iter().enumerate() {
            table.push(format!("{}", i + 1), row)?;
        }
        Ok(table)
    }

    /// Fails when the vectors do not all carry the same measure names.
    pub fn from_vectors(vectors: &[MeasureVector]) -> Result<Self> {
        let first = vectors.first().ok_or(Error::Empty("measure vectors"))?;
        let mut table = Self::new(first.names.clone());
        for (i, v) in vectors.iter().enumerate() {
            if v.names != table.names {
                return Err(mismatch(&table.names, &v.names));
            }
            table.push(format!("{}", i + 1), v.values.clone())?;
        }
        Ok(table)
    }

    /// Measures every sequence; ids come from the sequences (or their
    /// 1-based position).
    pub fn from_sequences(seqs: &[Sequence]) -> Result<Self> {
        let first = seqs.first().ok_or(Error::Empty("sequences"))?;
        let names = measure_names(first.alphabet());
        let mut table = Self::new(names.iter().map(|s| s.to_string()).collect());
        for (i, seq) in seqs.iter().enumerate() {
            let v = measure_sequence(seq)?;
            if v.names != table.names {
                return Err(mismatch(&table.names, &v.names));
            }
            let id = seq.id().map_or_else(|| format!("{}", i + 1), str::to_string);
            table.push(id, v.values)?;
        }
        Ok(table)
    }

    pub fn push(&mut self, id: String, row: Vec<f64>) -> Result<()> {
        if row.len() != self.names.len() {
            return Err(Error::SizeMismatch {
                left: self.names.len(),
                right: row.len(),
            });
        }
        self.ids.push(id);
        self.rows.push(row);
        Ok(())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(move |r| r[j])
    }

    pub fn vector(&self, i: usize) -> MeasureVector {
        MeasureVector {
            names: self.names.clone(),
            values: self.rows[i].clone(),
        }
    }

    /// Applies `f` to column `j` of every row.
    pub fn map_column(&mut self, j: usize, f: impl Fn(f64) -> f64) {
        for row in &mut self.rows {
            row[j] = f(row[j]);
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "id,{}", self.names.join(","))?;
        for (id, row) in self.ids.iter().zip(&self.rows) {
            let cells: Vec<String> = row.iter().map(|x| format_real(*x)).collect();
            writeln!(w, "{},{}", id, cells.join(","))?;
        }
        Ok(())
    }

    /// Reads the format written by [`MeasureTable::write_csv`].
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(r);
        let mut records = rdr.records();
        let csv_err = |line: usize, message: String| Error::Csv { line, message };
        let header = records
            .next()
            .ok_or(Error::NoRecords)?
            .map_err(|e| csv_err(1, e.to_string()))?;
        if header.get(0) != Some("id") || header.len() < 2 {
            return Err(csv_err(1, "expected header 'id,<measure>,...'".into()));
        }
        let mut table = Self::new(header.iter().skip(1).map(str::to_string).collect());
        for (i, record) in records.enumerate() {
            let line = i + 2;
            let record = record.map_err(|e| csv_err(line, e.to_string()))?;
            if record.len() != header.len() {
                return Err(csv_err(
                    line,
                    format!("expected {} columns, found {}", header.len(), record.len()),
                ));
            }
            let row = record
                .iter()
                .skip(1)
                .map(|cell| match cell.parse::<f64>() {
                    Ok(x) if x.is_finite() => Ok(x),
                    _ => Err(csv_err(line, format!("invalid measure value '{cell}'"))),
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(record[0].to_string(), row)?;
        }
        if table.is_empty() {
            return Err(Error::NoRecords);
        }
        Ok(table)
    }
}

pub(crate) fn mismatch(expected: &[String], got: &[String]) -> Error {
    Error::MeasureMismatch {
        expected: expected.join(","),
        got: got.join(","),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dna_table_has_six_columns() {
        let seqs = crate::io::parse_fasta(">a\nACGT\n>b\nAAAA\n>c\nGGCA\n".as_bytes(), Alphabet::Dna).unwrap();
        let table = MeasureTable::from_sequences(&seqs).unwrap();
        assert_eq!(table.len(), 3);
        assert_eq!(table.names().len(), 6);
        assert_eq!(table.ids(), ["a", "b", "c"]);
        assert_eq!(table.vector(1).get("max_homopolymer"), Some(4.0));
    }

    #[test]
    fn csv_round_trip() {
        let seqs = crate::io::parse_fasta(">p1\nMKTAYIAK\n>p2\nGGWY\n".as_bytes(), Alphabet::Protein).unwrap();
        let table = MeasureTable::from_sequences(&seqs).unwrap();
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let back = MeasureTable::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.names(), table.names());
        assert_eq!(back.ids(), table.ids());
        for (a, b) in back.rows().iter().flatten().zip(table.rows().iter().flatten()) {
            assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0));
        }
    }

    #[test]
    fn inconsistent_vectors_rejected() {
        let a = MeasureVector::new(&["x", "y"], vec![1.0, 2.0]);
        let b = MeasureVector::new(&["x", "z"], vec![1.0, 2.0]);
        assert!(matches!(
            MeasureTable::from_vectors(&[a, b]),
            Err(Error::MeasureMismatch { .. })
        ));
    }

    #[test]
    fn protein_length_one_fails() {
        let seqs = vec![Sequence::protein("G").unwrap()];
        assert!(matches!(
            MeasureTable::from_sequences(&seqs),
            Err(Error::InsufficientLength { .. })
        ));
    }
}
