//! Matrix files: `{"rows": R, "cols": C, "entries": [[<expr>, ...], ...]}`.

use std::path::Path;

use hyperdiff_core::MatrixK;
use serde::{Deserialize, Serialize};

use crate::parse::parse_expr;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &MatrixK) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<MatrixK, String> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(format!("entries do not form a {}x{} matrix", self.rows, self.cols));
        }
        if self.rows == 0 || self.cols == 0 {
            return Err("matrix must be non-empty".into());
        }
        let mut rows = Vec::with_capacity(self.rows);
        for (i, row) in self.entries.iter().enumerate() {
            let mut parsed = Vec::with_capacity(self.cols);
            for (j, src) in row.iter().enumerate() {
                parsed.push(parse_expr(src).map_err(|e| format!("entry ({}, {}): {e}", i + 1, j + 1))?);
            }
            rows.push(parsed);
        }
        MatrixK::from_rows(rows).map_err(|e| e.to_string())
    }
}

pub fn read_matrix(path: &Path) -> Result<MatrixK, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let json: MatrixJson = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    json.to_matrix().map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let json: MatrixJson = serde_json::from_str(
            r#"{"rows": 2, "cols": 2, "entries": [["0", "1"], ["t^2/x^2 - 1", "-1/x"]]}"#,
        )
        .unwrap();
        let m = json.to_matrix().unwrap();
        assert_eq!(MatrixJson::from_matrix(&m).to_matrix().unwrap(), m);
    }

    #[test]
    fn shape_and_entry_errors() {
        let bad = MatrixJson { rows: 2, cols: 1, entries: vec![vec!["x".into()]] };
        assert!(bad.to_matrix().unwrap_err().contains("2x1"));
        let bad = MatrixJson { rows: 1, cols: 1, entries: vec![vec!["x^-1".into()]] };
        assert!(bad.to_matrix().unwrap_err().starts_with("entry (1, 1): column 3"));
    }
}
