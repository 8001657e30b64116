//! One parity check per line, as space-separated zero-based column indices.
//! Blank lines and lines starting with `#` are ignored.

use std::path::Path;

use fecverify_core::ldpc::ParityCheckMatrix;

use crate::error::{HarnessError, Result};

/// Parse `text`; the length is `n` if given, otherwise one past the largest index.
pub fn parse_h_matrix(text: &str, n: Option<usize>, path: &Path) -> Result<ParityCheckMatrix> {
    let err = |line: usize, reason: String| HarnessError::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(i + 1, format!("not a column index: {t:?}"))))
            .collect::<Result<Vec<usize>>>()?;
        rows.push(row);
    }
    let width = rows.iter().flatten().max().map_or(0, |&m| m + 1);
    let n = n.unwrap_or(width);
    ParityCheckMatrix::from_rows(n, rows).map_err(|e| err(0, e.to_string()))
}

pub fn load_h_matrix(path: &Path, n: Option<usize>) -> Result<ParityCheckMatrix> {
    parse_h_matrix(&std::fs::read_to_string(path)?, n, path)
}

pub fn format_h_matrix(h: &ParityCheckMatrix) -> String {
    h.rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_errors() {
        let p = Path::new("h.txt");
        let h = parse_h_matrix("# hamming\n0 1 2 4\n\n0 1 3 5\n0 2 3 6\n", None, p).unwrap();
        assert_eq!(h.n(), 7);
        assert_eq!(h.num_checks(), 3);
        assert_eq!(parse_h_matrix(&format_h_matrix(&h), Some(7), p).unwrap(), h);
        let e = parse_h_matrix("0 1\n2 x\n", None, p).unwrap_err().to_string();
        assert!(e.contains("h.txt:2"), "{e}");
        assert!(parse_h_matrix("0 9\n", Some(5), p).is_err());
    }
}
