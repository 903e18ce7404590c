use std::io::{Read, Write};
use std::path::Path;

use crate::{Error, Result};

use super::config::OutputFormat;
use super::run::TrialRecord;

pub const CSV_HEADER: [&str; 13] = [
    "algorithm",
    "n",
    "m",
    "N",
    "r",
    "trial",
    "seed",
    "normalized_error",
    "absolute_error",
    "output_rank",
    "nuclear_norm",
    "sum_sq_singvals",
    "wall_ms",
];

/// 17 significant digits, enough to round-trip any `f64`.
fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<usize>) -> String {
    x.map_or(String::new(), |v| v.to_string())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.algorithm.name().to_string(),
            r.n.to_string(),
            opt(r.m),
            opt(r.n_factors),
            r.r.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            float(r.normalized_error),
            float(r.absolute_error),
            r.output_rank.to_string(),
            float(r.nuclear_norm),
            float(r.sum_sq_singvals),
            float(r.wall_ms),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(records: &[TrialRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

fn field<T: std::str::FromStr>(row: &csv::StringRecord, i: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let raw = row.get(i).ok_or_else(|| Error::Parse(format!("missing column {}", CSV_HEADER[i])))?;
    raw.parse().map_err(|e| Error::Parse(format!("column {} value {raw:?}: {e}", CSV_HEADER[i])))
}

fn opt_field(row: &csv::StringRecord, i: usize) -> Result<Option<usize>> {
    match row.get(i) {
        Some("") => Ok(None),
        _ => field(row, i).map(Some),
    }
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(csv_err)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    rd.records()
        .map(|row| {
            let row = row.map_err(csv_err)?;
            Ok(TrialRecord {
                algorithm: field(&row, 0)?,
                n: field(&row, 1)?,
                m: opt_field(&row, 2)?,
                n_factors: opt_field(&row, 3)?,
                r: field(&row, 4)?,
                trial: field(&row, 5)?,
                seed: field(&row, 6)?,
                normalized_error: field(&row, 7)?,
                absolute_error: field(&row, 8)?,
                output_rank: field(&row, 9)?,
                nuclear_norm: field(&row, 10)?,
                sum_sq_singvals: field(&row, 11)?,
                wall_ms: field(&row, 12)?,
            })
        })
        .collect()
}

/// A JSON array of records with the CSV column names as keys.
pub fn to_json_string(records: &[TrialRecord]) -> Result<String> {
    serde_json::to_string_pretty(records).map_err(|e| Error::Io(e.to_string()))
}

pub fn read_json(text: &str) -> Result<Vec<TrialRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("records: {e}")))
}

pub fn render(records: &[TrialRecord], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => to_csv_string(records),
        OutputFormat::Json => to_json_string(records).map(|s| s + "\n"),
    }
}

/// Write the records to `path` in the given format.
pub fn emit(records: &[TrialRecord], format: OutputFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render(records, format)?)?;
    Ok(())
}

pub fn load(path: &Path, format: OutputFormat) -> Result<Vec<TrialRecord>> {
    let text = std::fs::read_to_string(path)?;
    match format {
        OutputFormat::Csv => read_csv(text.as_bytes()),
        OutputFormat::Json => read_json(&text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::Algorithm;

    fn record(i: usize) -> TrialRecord {
        let x = (i as f64 + 0.1).sqrt() / 7.0;
        TrialRecord {
            algorithm: Algorithm::ALL[i % Algorithm::ALL.len()],
            n: 64,
            m: (i % 2 == 0).then_some(33),
            n_factors: (i % 2 == 0).then_some(1),
            r: i % 10,
            trial: i / 10,
            seed: u64::MAX - i as u64,
            normalized_error: x,
            absolute_error: x * 1e-300,
            output_rank: i,
            nuclear_norm: 1.0 / 3.0 + x,
            sum_sq_singvals: x * 1e300,
            wall_ms: 0.0,
        }
    }

    #[test]
    fn header_only() {
        assert_eq!(to_csv_string(&[]).unwrap(), CSV_HEADER.join(",") + "\n");
        assert_eq!(read_csv(to_csv_string(&[]).unwrap().as_bytes()).unwrap(), vec![]);
    }

    #[test]
    fn round_trips_are_bit_exact() {
        let recs: Vec<TrialRecord> = (0..100).map(record).collect();
        let back = read_csv(to_csv_string(&recs).unwrap().as_bytes()).unwrap();
        assert_eq!(back, recs);
        for (a, b) in back.iter().zip(&recs) {
            assert_eq!(a.absolute_error.to_bits(), b.absolute_error.to_bits());
        }
        assert_eq!(read_json(&to_json_string(&recs).unwrap()).unwrap(), recs);
        let one = to_csv_string(&recs[..1]).unwrap();
        assert_eq!(one.lines().count(), 2);
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }
}
