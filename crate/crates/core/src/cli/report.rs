//! Verification reports as CSV (with a `# key=value` preamble) or JSON.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::verification::VerificationRecord;

pub const CSV_HEADER: [&str; 9] = [
    "label",
    "T",
    "a",
    "lhs",
    "rhs",
    "ratio",
    "bound",
    "pass",
    "evaluations",
];

/// Significant digits kept in reports.
pub const REPORT_DIGITS: usize = 12;

/// Run metadata written ahead of the CSV rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Metadata(pub BTreeMap<String, String>);

impl Metadata {
    pub fn insert(&mut self, key: &str, value: impl Into<String>) {
        self.0.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

/// x rounded to [`REPORT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", REPORT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest text that parses back to `round_sig(x)`.
pub fn format_number(x: f64) -> String {
    let r = round_sig(x);
    let m = r.abs();
    if r == 0.0 || (1e-4..1e15).contains(&m) {
        format!("{r}")
    } else if r.is_nan() {
        "NaN".to_string()
    } else {
        format!("{r:e}")
    }
}

/// Copy of the record with every float rounded for output.
pub fn rounded(r: &VerificationRecord) -> VerificationRecord {
    VerificationRecord {
        t: round_sig(r.t),
        a: round_sig(r.a),
        lhs: round_sig(r.lhs),
        rhs: round_sig(r.rhs),
        ratio: round_sig(r.ratio),
        bound: round_sig(r.bound),
        ..r.clone()
    }
}

pub fn write_csv<W: Write>(
    out: &mut W,
    meta: &Metadata,
    records: &[VerificationRecord],
) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
    for (k, v) in &meta.0 {
        writeln!(out, "# {k}={v}").map_err(io)?;
    }
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Parse(format!("write failed: {e}"));
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.label.clone(),
            format_number(r.t),
            format_number(r.a),
            format_number(r.lhs),
            format_number(r.rhs),
            format_number(r.ratio),
            format_number(r.bound),
            r.pass.to_string(),
            r.evaluations.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

pub fn write_json<W: Write>(out: &mut W, records: &[VerificationRecord]) -> Result<()> {
    let rows: Vec<VerificationRecord> = records.iter().map(rounded).collect();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut *out, serde_json::ser::PrettyFormatter::new());
    rows.serialize(&mut ser)
        .map_err(|e| Error::Parse(format!("write failed: {e}")))?;
    writeln!(out).map_err(|e| Error::Parse(format!("write failed: {e}")))?;
    Ok(())
}

/// Parse a CSV report: optional `# key=value` lines, the fixed header, rows.
pub fn parse_csv(text: &str) -> Result<(Metadata, Vec<VerificationRecord>)> {
    let mut meta = Metadata::default();
    let mut body_start = 0;
    for line in text.split_inclusive('\n') {
        let Some(rest) = line.strip_prefix('#') else {
            break;
        };
        body_start += line.len();
        let rest = rest.trim();
        if let Some((k, v)) = rest.split_once('=') {
            meta.insert(k.trim(), v.trim());
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(&text.as_bytes()[body_start..]);
    let header = reader
        .headers()
        .map_err(|e| Error::Parse(format!("bad CSV header: {e}")))?;
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Parse(format!(
            "CSV header must be {}, got {}",
            CSV_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut records = Vec::new();
    for (i, row) in reader.deserialize::<VerificationRecord>().enumerate() {
        let rec = row.map_err(|e| Error::Parse(format!("CSV row {}: {e}", i + 1)))?;
        check_record(&rec)?;
        records.push(rec);
    }
    Ok((meta, records))
}

/// Parse a JSON report: an array of objects with the CSV column keys.
pub fn parse_json(text: &str) -> Result<Vec<VerificationRecord>> {
    let records: Vec<VerificationRecord> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON report: {e}")))?;
    for r in &records {
        check_record(r)?;
    }
    Ok(records)
}

fn check_record(r: &VerificationRecord) -> Result<()> {
    if r.label.is_empty() {
        return Err(Error::Parse("record label is empty".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationRecord {
        VerificationRecord {
            label: "theorem".into(),
            t: 1.0e4,
            a: 0.5,
            lhs: 1.234_567_890_123_456,
            rhs: 1.234_5e-7,
            ratio: 1.000_020_148_248_108_6,
            bound: 0.482_137_840_013_712_74,
            pass: true,
            evaluations: 3165,
            advisory: false,
        }
    }

    #[test]
    fn twelve_digit_rounding() {
        assert_eq!(round_sig(1.000_020_148_248_108_6), 1.000_020_148_25);
        assert_eq!(format_number(1.0e4), "10000");
        assert_eq!(format_number(1.2345e-7), "1.2345e-7");
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(f64::NAN), "NaN");
    }

    #[test]
    fn csv_and_json_agree() {
        let mut meta = Metadata::default();
        meta.insert("tool_version", "0.1.0");
        let recs = vec![
            sample(),
            VerificationRecord {
                pass: false,
                ..sample()
            },
        ];
        let mut csv_out = Vec::new();
        write_csv(&mut csv_out, &meta, &recs).unwrap();
        let text = String::from_utf8(csv_out).unwrap();
        assert!(text
            .starts_with("# tool_version=0.1.0\nlabel,T,a,lhs,rhs,ratio,bound,pass,evaluations\n"));
        let (m, from_csv) = parse_csv(&text).unwrap();
        assert_eq!(m, meta);
        let mut json_out = Vec::new();
        write_json(&mut json_out, &from_csv).unwrap();
        let from_json = parse_json(std::str::from_utf8(&json_out).unwrap()).unwrap();
        assert_eq!(from_csv, from_json);
        let expected: Vec<_> = recs.iter().map(rounded).collect();
        assert_eq!(from_json, expected);
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(parse_csv("label,T\ntheorem,1\n").is_err());
        assert!(parse_json("{}").is_err());
        assert!(parse_json("[{\"label\":\"\",\"T\":1,\"a\":1,\"lhs\":1,\"rhs\":1,\"ratio\":1,\"bound\":1,\"pass\":true,\"evaluations\":1}]").is_err());
    }
}
