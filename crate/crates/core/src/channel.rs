// SPDX-License-Identifier: Apache-2.0

//! Quantum channels in Kraus form.

use crate::error::{Error, Result};
use crate::linalg::{self, max_abs_diff, CMatrix, C64};
use crate::quantum::{DensityMatrix, ObservableBasis};

pub const CHANNEL_TOL: f64 = 1e-10;

/// `rho -> sum_i K_i rho K_i^dagger`
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    operators: Vec<CMatrix>,
}

impl KrausChannel {
    /// Checks shapes only; see [`KrausChannel::validate_unital`] and
    /// [`KrausChannel::validate_trace_preserving`].
    pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
        let first = operators.first().ok_or(Error::EmptyChannel)?;
        let dim = first.nrows();
        for k in &operators {
            let (rows, cols) = k.shape();
            if rows != cols {
                return Err(Error::NotSquare { rows, cols });
            }
            if rows != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: rows,
                });
            }
        }
        Ok(Self { dim, operators })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            dim: d,
            operators: vec![linalg::identity(d)],
        }
    }

    /// `rho -> (1 - weight) 1/d + weight rho`, with Kraus operators
    /// `sqrt(weight) 1` and `sqrt((1 - weight)/d) |a><b|`.
    pub fn depolarizing(d: usize, weight: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::OutOfRange {
                name: "weight",
                value: weight,
                range: "[0, 1]",
            });
        }
        let mut operators = vec![linalg::identity(d).scale(weight.sqrt())];
        let amp = ((1.0 - weight) / d as f64).sqrt();
        for a in 0..d {
            for b in 0..d {
                let mut e = CMatrix::zeros(d, d);
                e[(a, b)] = C64::new(amp, 0.0);
                operators.push(e);
            }
        }
        Ok(Self { dim: d, operators })
    }

    /// Projective dephasing in `basis`, Kraus operators `|x_j><x_j|`.
    pub fn dephasing(basis: &ObservableBasis) -> Self {
        Self {
            dim: basis.dim(),
            operators: basis.projectors(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn apply(&self, m: &CMatrix) -> CMatrix {
        self.operators
            .iter()
            .fold(CMatrix::zeros(self.dim, self.dim), |acc, k| acc + k * m * k.adjoint())
    }

    /// Applies a channel that has passed trace-preservation validation.
    pub fn apply_state(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        DensityMatrix::new(self.apply(rho.matrix()))
    }

    pub fn validate_unital(&self, tol: f64) -> Result<()> {
        let sum = self
            .operators
            .iter()
            .fold(CMatrix::zeros(self.dim, self.dim), |acc, k| acc + k * k.adjoint());
        let deviation = max_abs_diff(&sum, &linalg::identity(self.dim));
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotUnital { deviation })
        }
    }

    pub fn validate_trace_preserving(&self, tol: f64) -> Result<()> {
        let sum = self
            .operators
            .iter()
            .fold(CMatrix::zeros(self.dim, self.dim), |acc, k| acc + k.adjoint() * k);
        let deviation = max_abs_diff(&sum, &linalg::identity(self.dim));
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotTracePreserving { deviation })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;

    #[test]
    fn depolarizing_matches_formula() {
        let rho = DensityMatrix::diagonal(&[1.0, 0.0, 0.0]).unwrap();
        let ch = KrausChannel::depolarizing(3, 0.4).unwrap();
        ch.validate_unital(CHANNEL_TOL).unwrap();
        ch.validate_trace_preserving(CHANNEL_TOL).unwrap();
        let out = ch.apply_state(&rho).unwrap();
        let expected = DensityMatrix::diagonal(&[0.6 / 3.0 + 0.4, 0.2, 0.2]).unwrap();
        assert!(max_abs_diff(out.matrix(), expected.matrix()) < 1e-15);
    }

    #[test]
    fn amplitude_damping_is_not_unital() {
        let g: f64 = 0.3;
        let k0 = CMatrix::from_row_slice(2, 2, &[ONE, ONE * 0.0, ONE * 0.0, ONE * (1.0 - g).sqrt()]);
        let k1 = CMatrix::from_row_slice(2, 2, &[ONE * 0.0, ONE * g.sqrt(), ONE * 0.0, ONE * 0.0]);
        let ch = KrausChannel::new(vec![k0, k1]).unwrap();
        ch.validate_trace_preserving(CHANNEL_TOL).unwrap();
        assert!(matches!(ch.validate_unital(CHANNEL_TOL), Err(Error::NotUnital { .. })));
    }

    #[test]
    fn rejects_mixed_shapes() {
        assert_eq!(KrausChannel::new(vec![]).unwrap_err(), Error::EmptyChannel);
        let err = KrausChannel::new(vec![linalg::identity(2), linalg::identity(3)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }
}
