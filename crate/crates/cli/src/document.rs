// SPDX-License-Identifier: Apache-2.0

//! The JSON context file.
//!
//! ```json
//! {
//!   "version": "1",
//!   "dim": 2,
//!   "rho":     [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
//!   "x_basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
//!   "y_basis": [[[0.7071067811865476, 0], [0.7071067811865476, 0]],
//!               [[0.7071067811865476, 0], [-0.7071067811865476, 0]]],
//!   "x_eigenvalues": [1, 2]
//! }
//! ```
//!
//! Matrices are row-major, complex entries are `[re, im]`, and the basis
//! matrices hold one eigenvector per column. Eigenvalue lists are optional and
//! default to `1..=d`.

use std::path::Path;

use qcontext_core::{CMatrix, Context, DensityMatrix, ObservableBasis, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const VERSION: &str = "1";

type RawMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDocument {
    pub version: String,
    pub dim: usize,
    pub rho: RawMatrix,
    pub x_basis: RawMatrix,
    pub y_basis: RawMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_eigenvalues: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_eigenvalues: Option<Vec<f64>>,
}

impl ContextDocument {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let doc: ContextDocument = serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
        if doc.version != VERSION {
            return Err(CliError::Parse(format!(
                "unsupported version {:?}, expected {VERSION:?}",
                doc.version
            )));
        }
        if doc.dim < 2 {
            return Err(CliError::Parse(format!("dim must be at least 2, found {}", doc.dim)));
        }
        Ok(doc)
    }

    pub fn to_context(&self) -> Result<Context, CliError> {
        let d = self.dim;
        let rho = to_matrix("rho", &self.rho, d)?;
        let x = to_matrix("x_basis", &self.x_basis, d)?;
        let y = to_matrix("y_basis", &self.y_basis, d)?;
        let x_values = eigenvalues("x_eigenvalues", &self.x_eigenvalues, d)?;
        let y_values = eigenvalues("y_eigenvalues", &self.y_eigenvalues, d)?;
        let state = DensityMatrix::new(rho).map_err(CliError::Invariant)?;
        let first = ObservableBasis::new(x, x_values).map_err(CliError::Invariant)?;
        let second = ObservableBasis::new(y, y_values).map_err(CliError::Invariant)?;
        Context::new(state, first, second).map_err(CliError::Invariant)
    }
}

fn to_matrix(name: &str, raw: &RawMatrix, d: usize) -> Result<CMatrix, CliError> {
    if raw.len() != d || raw.iter().any(|row| row.len() != d) {
        return Err(CliError::Parse(format!("{name} must be a {d}x{d} matrix")));
    }
    if raw.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(CliError::Parse(format!("{name} has a non-finite entry")));
    }
    Ok(CMatrix::from_fn(d, d, |r, c| C64::new(raw[r][c][0], raw[r][c][1])))
}

fn eigenvalues(name: &str, raw: &Option<Vec<f64>>, d: usize) -> Result<Vec<f64>, CliError> {
    match raw {
        None => Ok((1..=d).map(|k| k as f64).collect()),
        Some(v) if v.len() == d && v.iter().all(|x| x.is_finite()) => Ok(v.clone()),
        Some(_) => Err(CliError::Parse(format!("{name} must list {d} finite numbers"))),
    }
}
