//! FASTA and `sequence,score` CSV ingestion and emission.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::seq::{Alphabet, Sequence};

/// Significant digits used for every real number written to CSV.
pub const CSV_SIGNIFICANT_DIGITS: usize = 9;

/// A named list of scored sequences sharing one alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDataset {
    pub name: String,
    pub entries: Vec<(Sequence, f64)>,
}

impl ScoredDataset {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sequences(&self) -> impl Iterator<Item = &Sequence> {
        self.entries.iter().map(|(s, _)| s)
    }
}

/// Parses FASTA text. The record id is the header up to the first
/// whitespace; wrapped sequence lines are joined.
pub fn parse_fasta<R: Read>(mut reader: R, alphabet: Alphabet) -> Result<Vec<Sequence>> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;

    let mut records = Vec::new();
    let mut current: Option<(String, String)> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if let Some(header) = line.strip_prefix('>') {
            if let Some((id, residues)) = current.take() {
                records.push(Sequence::new(alphabet, &residues, Some(id))?);
            }
            let id = header.split_whitespace().next().unwrap_or("").to_string();
            current = Some((id, String::new()));
        } else if let Some((_, residues)) = current.as_mut() {
            residues.push_str(line.trim());
        } else if !line.trim().is_empty() {
            return Err(Error::Csv {
                line: lineno + 1,
                message: "sequence data before the first '>' header".into(),
            });
        }
    }
    if let Some((id, residues)) = current.take() {
        records.push(Sequence::new(alphabet, &residues, Some(id))?);
    }
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    Ok(records)
}

/// Writes sequences as FASTA with one unwrapped residue line per record.
/// Records without an id are labelled by 1-based position.
pub fn write_fasta<W: Write>(mut writer: W, seqs: &[Sequence]) -> Result<()> {
    for (i, seq) in seqs.iter().enumerate() {
        match seq.id() {
            Some(id) => writeln!(writer, ">{id}")?,
            None => writeln!(writer, ">seq{}", i + 1)?,
        }
        writeln!(writer, "{}", seq.residues())?;
    }
    Ok(())
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader)
}

fn csv_err(line: usize, message: impl Into<String>) -> Error {
    Error::Csv {
        line,
        message: message.into(),
    }
}

fn record_line(record: &csv::StringRecord, fallback: usize) -> usize {
    record.position().map_or(fallback, |p| p.line() as usize)
}

fn check_header(record: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    let got: Vec<&str> = record.iter().collect();
    if got != expected {
        return Err(csv_err(
            1,
            format!("expected header '{}', got '{}'", expected.join(","), got.join(",")),
        ));
    }
    Ok(())
}

/// Parses a `sequence,score` CSV. With `fixed_length` every sequence must
/// have the length of the first one.
pub fn parse_scored_csv<R: Read>(
    reader: R,
    alphabet: Alphabet,
    fixed_length: bool,
    name: &str,
) -> Result<ScoredDataset> {
    let mut rdr = csv_reader(reader);
    let mut records = rdr.records();
    let header = records
        .next()
        .ok_or(Error::NoRecords)?
        .map_err(|e| csv_err(1, e.to_string()))?;
    check_header(&header, &["sequence", "score"])?;

    let mut entries = Vec::new();
    for (i, record) in records.enumerate() {
        let record = record.map_err(|e| csv_err(i + 2, e.to_string()))?;
        let line = record_line(&record, i + 2);
        if record.len() != 2 {
            return Err(csv_err(line, format!("expected 2 columns, found {}", record.len())));
        }
        let seq = Sequence::new(alphabet, &record[0], Some(format!("line{line}")))
            .map_err(|e| csv_err(line, e.to_string()))?;
        let score: f64 = record[1]
            .parse()
            .map_err(|_| csv_err(line, format!("non-numeric score '{}'", &record[1])))?;
        if !score.is_finite() {
            return Err(csv_err(line, format!("non-finite score '{}'", &record[1])));
        }
        if fixed_length {
            if let Some((first, _)) = entries.first() {
                let first: &Sequence = first;
                if first.len() != seq.len() {
                    return Err(csv_err(
                        line,
                        format!("length mismatch: expected {}, got {}", first.len(), seq.len()),
                    ));
                }
            }
        }
        entries.push((seq, score));
    }
    if entries.is_empty() {
        return Err(Error::NoRecords);
    }
    Ok(ScoredDataset {
        name: name.to_string(),
        entries,
    })
}

/// Parses a single-column `sequence` CSV (the batch file format).
pub fn parse_sequence_csv<R: Read>(reader: R, alphabet: Alphabet) -> Result<Vec<Sequence>> {
    let mut rdr = csv_reader(reader);
    let mut records = rdr.records();
    let header = records
        .next()
        .ok_or(Error::NoRecords)?
        .map_err(|e| csv_err(1, e.to_string()))?;
    if header.get(0) != Some("sequence") {
        return Err(csv_err(1, "first column must be 'sequence'"));
    }
    let mut seqs = Vec::new();
    for (i, record) in records.enumerate() {
        let record = record.map_err(|e| csv_err(i + 2, e.to_string()))?;
        let line = record_line(&record, i + 2);
        if record.len() != header.len() {
            return Err(csv_err(
                line,
                format!("expected {} columns, found {}", header.len(), record.len()),
            ));
        }
        let seq = Sequence::new(alphabet, &record[0], Some(format!("line{line}")))
            .map_err(|e| csv_err(line, e.to_string()))?;
        seqs.push(seq);
    }
    if seqs.is_empty() {
        return Err(Error::NoRecords);
    }
    Ok(seqs)
}

/// Writes a `sequence,score` CSV with '\n' line endings.
pub fn write_scored_csv<W: Write>(mut writer: W, entries: &[(Sequence, f64)]) -> Result<()> {
    writeln!(writer, "sequence,score")?;
    for (seq, score) in entries {
        writeln!(writer, "{},{}", seq.residues(), format_real(*score))?;
    }
    Ok(())
}

/// Formats a real with [`CSV_SIGNIFICANT_DIGITS`] significant digits in
/// positional notation, trimming trailing zeros.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // Round in scientific form first so the exponent reflects rounding carry.
    let sci = format!("{:.*e}", CSV_SIGNIFICANT_DIGITS - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (CSV_SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').len());
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fasta(text: &str) -> Result<Vec<Sequence>> {
        parse_fasta(text.as_bytes(), Alphabet::Dna)
    }

    fn csv(text: &str, fixed: bool) -> Result<ScoredDataset> {
        parse_scored_csv(text.as_bytes(), Alphabet::Dna, fixed, "t")
    }

    #[test]
    fn single_record() {
        let seqs = fasta(">s1\nACGT\n").unwrap();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0].id(), Some("s1"));
        assert_eq!(seqs[0].residues(), "ACGT");
    }

    #[test]
    fn case_and_wrap_normalization() {
        let seqs = fasta(">s1 some description\nacgt\n>s2\nTT\nTT\n").unwrap();
        assert_eq!(seqs[0].id(), Some("s1"));
        assert_eq!(seqs[0].residues(), "ACGT");
        assert_eq!(seqs[1].residues(), "TTTT");
    }

    #[test]
    fn invalid_residue_names_record_and_position() {
        let err = fasta(">s1\nACGN\n").unwrap_err();
        match err {
            Error::InvalidResidue {
                id, position, symbol, ..
            } => {
                assert_eq!(id, "s1");
                assert_eq!(position, 4);
                assert_eq!(symbol, 'N');
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_record_and_no_records() {
        assert!(matches!(fasta(">s1\n>s2\nAC\n"), Err(Error::EmptyRecord(id)) if id == "s1"));
        assert!(matches!(fasta(""), Err(Error::NoRecords)));
        assert!(matches!(fasta("\n\n"), Err(Error::NoRecords)));
    }

    #[test]
    fn scored_csv_basic() {
        let ds = csv("sequence,score\nACGT,0.5\n", false).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.entries[0].0.residues(), "ACGT");
        assert_eq!(ds.entries[0].1, 0.5);
    }

    #[test]
    fn scored_csv_errors_carry_line_numbers() {
        let err = csv("sequence,score\nACGT,nan\n", false).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 2, ref message } if message.contains("non-finite")));

        let err = csv("sequence,score\nAC,0.1\nACG,0.2\n", true).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 3, ref message } if message.contains("length mismatch")));
        // Without the flag mixed lengths are fine.
        assert_eq!(csv("sequence,score\nAC,0.1\nACG,0.2\n", false).unwrap().len(), 2);

        let err = csv("sequence,score\nAC,0.1,7\n", false).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 2, .. }));
        let err = csv("sequence,score\nAC\n", false).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 2, .. }));
        let err = csv("sequence,score\nAC,abc\n", false).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 2, ref message } if message.contains("non-numeric")));
        let err = csv("sequence,score\nAC,1\nAX,2\n", false).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 3, .. }));
        let err = csv("seq,score\nAC,1\n", false).unwrap_err();
        assert!(matches!(err, Error::Csv { line: 1, .. }));
    }

    #[test]
    fn sequence_csv() {
        let seqs = parse_sequence_csv("sequence\nACGT\nTTTT\n".as_bytes(), Alphabet::Dna).unwrap();
        assert_eq!(seqs.len(), 2);
        assert!(parse_sequence_csv("seq\nACGT\n".as_bytes(), Alphabet::Dna).is_err());
    }

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.5), "0.5");
        assert_eq!(format_real(1.0), "1");
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(-0.0), "0");
        assert_eq!(format_real(1.0 / 3.0), "0.333333333");
        assert_eq!(format_real(2.0 / 3.0 * 1000.0), "666.666667");
        assert_eq!(format_real(9.9999999999), "10");
        assert_eq!(format_real(123456789012.0), "123456789012");
        assert_eq!(format_real(-1.25e-7), "-0.000000125");
    }

    fn dna_string() -> impl Strategy<Value = String> {
        proptest::collection::vec(
            prop::sample::select(vec!['A', 'C', 'G', 'T', 'a', 'c', 'g', 't']),
            1..80,
        )
        .prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn fasta_round_trip(records in proptest::collection::vec(("[a-z][a-z0-9_]{0,8}", dna_string()), 1..6)) {
            let text: String = records.iter().map(|(id, r)| format!(">{id} desc\n{r}\n")).collect();
            let parsed = parse_fasta(text.as_bytes(), Alphabet::Dna).unwrap();
            let mut out = Vec::new();
            write_fasta(&mut out, &parsed).unwrap();
            let reparsed = parse_fasta(out.as_slice(), Alphabet::Dna).unwrap();
            prop_assert_eq!(parsed, reparsed);
        }

        #[test]
        fn scored_csv_round_trip(rows in proptest::collection::vec((dna_string(), -1e6f64..1e6), 1..20)) {
            let text: String = std::iter::once("sequence,score\n".to_string())
                .chain(rows.iter().map(|(s, x)| format!("{s},{x}\n")))
                .collect();
            let parsed = parse_scored_csv(text.as_bytes(), Alphabet::Dna, false, "p").unwrap();
            let mut out = Vec::new();
            write_scored_csv(&mut out, &parsed.entries).unwrap();
            let reparsed = parse_scored_csv(out.as_slice(), Alphabet::Dna, false, "p").unwrap();
            for ((s0, x0), (s1, x1)) in parsed.entries.iter().zip(&reparsed.entries) {
                prop_assert_eq!(s0.residues(), s1.residues());
                let tol = 5e-9 * x0.abs().max(f64::MIN_POSITIVE);
                prop_assert!((x0 - x1).abs() <= tol, "{} vs {}", x0, x1);
            }
        }
    }
}
