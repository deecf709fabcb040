//! Inline-JSON-or-path arguments and CSV batches.

use polarkit::stokes::StokesVector;
use serde_json::Value;
use std::path::Path;

/// Failure while reading user input; always exit status 2.
#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<polarkit::Error> for ParseError {
    fn from(e: polarkit::Error) -> Self {
        ParseError(e.to_string())
    }
}

/// Parses `arg` as JSON; if that fails and a file of that name exists, parses the file.
pub fn json_arg(arg: &str) -> Result<Value, ParseError> {
    match serde_json::from_str(arg) {
        Ok(v) => Ok(v),
        Err(inline) => {
            let p = Path::new(arg);
            if !p.is_file() {
                return Err(ParseError(format!("not valid JSON and not a file: {arg} ({inline})")));
            }
            let text = std::fs::read_to_string(p).map_err(|e| ParseError(format!("{arg}: {e}")))?;
            serde_json::from_str(&text).map_err(|e| ParseError(format!("{arg}: {e}")))
        }
    }
}

pub fn real_n<const N: usize>(arg: &str) -> Result<[f64; N], ParseError> {
    Ok(polarkit::json::parse_real_n::<N>(&json_arg(arg)?)?)
}

pub fn stokes(arg: &str) -> Result<StokesVector, ParseError> {
    Ok(StokesVector::raw(real_n::<4>(arg)?))
}

/// Rows of `width` reals; blank lines and `#` comments skipped, and a
/// non-numeric first row is taken as a header.
pub fn csv_rows(path: &str, width: usize) -> Result<Vec<Vec<f64>>, ParseError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| ParseError(format!("{path}: {e}")))?;
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| ParseError(format!("{path}: {e}")))?;
        let vals: Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match vals {
            Ok(v) if v.len() == width => rows.push(v),
            Ok(v) => {
                return Err(ParseError(format!("{path}: row {} has {} values, expected {width}", line + 1, v.len())));
            }
            Err(_) if line == 0 => continue,
            Err(e) => return Err(ParseError(format!("{path}: row {}: {e}", line + 1))),
        }
    }
    if rows.is_empty() {
        return Err(ParseError(format!("{path}: no data rows")));
    }
    Ok(rows)
}

pub fn stokes_pairs(path: &str) -> Result<Vec<(StokesVector, StokesVector)>, ParseError> {
    Ok(csv_rows(path, 8)?
        .into_iter()
        .map(|r| (StokesVector::raw([r[0], r[1], r[2], r[3]]), StokesVector::raw([r[4], r[5], r[6], r[7]])))
        .collect())
}
