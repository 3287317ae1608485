use std::io::Read;
use std::path::Path;

use num_complex::Complex;
use serde::Deserialize;
use unisample::{IndexSet, PrimePowerModulus, Signal};

use crate::CliError;

/// Contents of `spec`, where `-` means standard input.
pub fn read_source(spec: &str) -> Result<String, CliError> {
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::usage(format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(spec).map_err(|e| CliError::usage(format!("cannot read {spec}: {e}")))
    }
}

fn json_error(what: &str, e: serde_json::Error) -> CliError {
    CliError::usage(format!("malformed {what} JSON: {e}"))
}

/// An index set given as a comma list with optional inclusive `a..b` ranges,
/// inline JSON, a JSON file, or `-` for JSON on standard input.
///
/// JSON is either `{"n": N, "indices": [...]}` or a bare array; lists and bare
/// arrays take their modulus from `n`.
pub fn parse_index_set(spec: &str, n: Option<usize>) -> Result<IndexSet, CliError> {
    let trimmed = spec.trim();
    let json = if trimmed == "-" || (!trimmed.starts_with('{') && !trimmed.starts_with('[') && Path::new(trimmed).is_file()) {
        Some(read_source(trimmed)?)
    } else if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Some(trimmed.to_string())
    } else {
        None
    };
    match json {
        Some(text) => parse_index_set_json(&text, n),
        None => {
            let n = n.ok_or_else(|| CliError::usage("a comma-list index set needs the modulus (-N or -p/-M)"))?;
            let elements = parse_list(trimmed)?;
            IndexSet::from_unsorted(n, elements).map_err(CliError::from)
        }
    }
}

fn parse_index_set_json(text: &str, n: Option<usize>) -> Result<IndexSet, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| json_error("index set", e))?;
    let set = if value.is_array() {
        let n = n.ok_or_else(|| CliError::usage("a bare JSON array needs the modulus (-N or -p/-M)"))?;
        let elements: Vec<usize> = serde_json::from_value(value).map_err(|e| json_error("index set", e))?;
        IndexSet::from_unsorted(n, elements)?
    } else {
        serde_json::from_value::<IndexSet>(value).map_err(|e| json_error("index set", e))?
    };
    if let Some(n) = n {
        if set.n() != n {
            return Err(CliError::usage(format!(
                "index set field `n` is {} but the modulus is {n}",
                set.n()
            )));
        }
    }
    Ok(set)
}

fn parse_list(text: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let number = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::usage(format!("`{token}` is not an index or an a..b range")))
        };
        match token.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (number(a)?, number(b)?);
                if a > b {
                    return Err(CliError::usage(format!("empty range `{token}`")));
                }
                out.extend(a..=b);
            }
            None => out.push(number(token)?),
        }
    }
    Ok(out)
}

/// `-N` or `-p`/`-M`, whichever was given.
#[derive(Debug, Clone, Copy, Default)]
pub struct ModulusSpec {
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub m: Option<u32>,
}

impl ModulusSpec {
    pub fn n(&self) -> Result<Option<usize>, CliError> {
        match (self.p, self.m) {
            (Some(p), Some(m)) => {
                let modulus = PrimePowerModulus::new(p, m)?;
                if let Some(n) = self.n {
                    if n != modulus.n() {
                        return Err(CliError::usage(format!("-N {n} disagrees with {p}^{m}")));
                    }
                }
                Ok(Some(modulus.n()))
            }
            (None, None) => Ok(self.n),
            _ => Err(CliError::usage("-p and -M must be given together")),
        }
    }

    pub fn require_n(&self) -> Result<usize, CliError> {
        self.n()?.ok_or_else(|| CliError::usage("the modulus is required (-N or -p/-M)"))
    }

    /// Validates that the ambient size is a prime power.
    pub fn prime_power(&self, n: usize) -> Result<PrimePowerModulus, CliError> {
        match (self.p, self.m) {
            (Some(p), Some(m)) => Ok(PrimePowerModulus::new(p, m)?),
            _ => PrimePowerModulus::from_n(n).map_err(CliError::from),
        }
    }
}

pub fn parse_signal(spec: &str) -> Result<Signal<f64>, CliError> {
    let text = read_source(spec)?;
    serde_json::from_str(&text).map_err(|e| json_error("signal", e))
}

/// Sample file: `{"n": N, "indices": [...], "values": [[re, im], ...]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SamplesFile {
    n: usize,
    indices: Vec<usize>,
    values: Vec<[f64; 2]>,
}

pub fn parse_samples(spec: &str) -> Result<(IndexSet, Vec<Complex<f64>>), CliError> {
    let text = read_source(spec)?;
    let file: SamplesFile = serde_json::from_str(&text).map_err(|e| json_error("samples", e))?;
    if file.indices.len() != file.values.len() {
        return Err(CliError::usage(format!(
            "samples field `values` has {} entries but `indices` has {}",
            file.values.len(),
            file.indices.len()
        )));
    }
    let mut pairs: Vec<(usize, [f64; 2])> = file.indices.into_iter().zip(file.values).collect();
    pairs.sort_by_key(|&(i, _)| i);
    let set = IndexSet::new(file.n, pairs.iter().map(|&(i, _)| i).collect())?;
    let values = pairs.into_iter().map(|(_, [re, im])| Complex::new(re, im)).collect();
    Ok((set, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list("0, 2..4,9").unwrap(), vec![0, 2, 3, 4, 9]);
        assert!(parse_list("1,x").is_err());
        assert!(parse_list("5..2").is_err());
        assert!(parse_list("").unwrap().is_empty());
    }

    #[test]
    fn json_forms() {
        let s = parse_index_set(r#"{"n":8,"indices":[0,1,3]}"#, None).unwrap();
        assert_eq!(s.as_slice(), &[0, 1, 3]);
        let s = parse_index_set("[3,1]", Some(8)).unwrap();
        assert_eq!(s.as_slice(), &[1, 3]);
        let err = parse_index_set(r#"{"n":8}"#, None).unwrap_err();
        assert!(err.message.contains("indices"));
        assert!(parse_index_set(r#"{"n":8,"indices":[0]}"#, Some(16)).is_err());
    }
}
