//! JSON matrix documents: `{"n": 2, "entries": [a00, a01, a10, a11]}`.

use serde::{Deserialize, Serialize};

use super::SymMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<f64>,
}

impl MatrixFile {
    /// Symmetry is checked with absolute tolerance `1e-12 * max|entry|`, then
    /// enforced by averaging.
    pub fn into_sym(self) -> Result<SymMatrix> {
        let max_abs = self.entries.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        SymMatrix::from_row_major_tol(self.n, self.entries, 1e-12 * max_abs)
    }
}

impl From<&SymMatrix> for MatrixFile {
    fn from(m: &SymMatrix) -> Self {
        MatrixFile {
            n: m.n(),
            entries: m.row_major().to_vec(),
        }
    }
}

pub fn parse_matrix_json(text: &str) -> Result<SymMatrix> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| Error::config("matrix file", e.to_string()))?;
    file.into_sym()
}

pub fn to_matrix_json(m: &SymMatrix) -> String {
    serde_json::to_string(&MatrixFile::from(m)).expect("matrix serializes")
}
