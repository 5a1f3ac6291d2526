//! JSON state and report files.
//!
//! A state file stores the full density matrix as `[re, im]` pairs, row-major,
//! subsystem 1 most significant:
//!
//! ```json
//! {"version": 1, "dims": [2, 2], "matrix": [[[0.5, 0.0], ...], ...]}
//! ```
//!
//! Floats are written in shortest round-trip form so that a parsed file
//! reproduces the original matrix bit for bit.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::CriterionReport;
use crate::density::DensityMatrix;
use crate::linalg::{c64, ComplexMatrix};

pub const STATE_FILE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported state file version {0}")]
    Version(u32),
    #[error("matrix has {rows} rows, expected {expected}")]
    Shape { rows: usize, expected: usize },
    #[error("invalid density matrix: {0}")]
    State(#[from] crate::error::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub version: u32,
    pub dims: Vec<usize>,
    pub matrix: Vec<Vec<[f64; 2]>>,
    /// Free-form description of how the state was produced.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<serde_json::Value>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let matrix = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        StateFile { version: STATE_FILE_VERSION, dims: rho.dims().to_vec(), matrix, descriptor: None }
    }

    pub fn with_descriptor(mut self, descriptor: serde_json::Value) -> Self {
        self.descriptor = Some(descriptor);
        self
    }

    /// Validates and converts to a density matrix.
    pub fn to_state(&self) -> Result<DensityMatrix, FileError> {
        if self.version != STATE_FILE_VERSION {
            return Err(FileError::Version(self.version));
        }
        let n: usize = self.dims.iter().product();
        if self.matrix.len() != n {
            return Err(FileError::Shape { rows: self.matrix.len(), expected: n });
        }
        if let Some(row) = self.matrix.iter().find(|r| r.len() != n) {
            return Err(FileError::Shape { rows: row.len(), expected: n });
        }
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            let [re, im] = self.matrix[i][j];
            c64(re, im)
        });
        Ok(DensityMatrix::new(self.dims.clone(), m)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), FileError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub state_descriptor: serde_json::Value,
    pub tol: f64,
    pub reports: Vec<CriterionReport>,
    pub any_violated: bool,
}

impl ReportFile {
    pub fn new(state_descriptor: serde_json::Value, tol: f64, reports: Vec<CriterionReport>) -> Self {
        let any_violated = reports.iter().any(|r| r.violated);
        ReportFile { state_descriptor, tol, reports, any_violated }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
