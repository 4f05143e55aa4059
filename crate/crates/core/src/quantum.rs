// SPDX-License-Identifier: Apache-2.0

//! States, nondegenerate observables, entropies and projective dephasing.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, from_spectrum, hermitian_eigen, hermitian_part, max_abs_diff, CMatrix, CVector, C64};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const ORTHONORMAL_TOL: f64 = 1e-10;
pub const DEGENERACY_TOL: f64 = 1e-9;
pub const PROBABILITY_NEG_TOL: f64 = 1e-12;
pub const PROBABILITY_SUM_TOL: f64 = 1e-10;

/// Eigenvalue of the second argument below which [`relative_entropy`] treats a
/// direction as outside the support.
pub const SUPPORT_EIGEN_TOL: f64 = 1e-12;
/// Weight of the first argument in such a direction above which the relative
/// entropy diverges.
pub const SUPPORT_WEIGHT_TOL: f64 = 1e-10;

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A `d x d` positive semidefinite, unit-trace, Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates and stores a state.
    ///
    /// Eigenvalues in `[-1e-10, 0)` are clipped to zero and the result is
    /// renormalized; anything more negative is rejected.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::InvalidDimension(0, "a state needs d >= 1"));
        }
        let deviation = max_abs_diff(&matrix, &matrix.adjoint());
        if deviation.is_nan() || deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = linalg::trace(&matrix);
        let trace_dev = (tr - C64::new(1.0, 0.0)).norm();
        if trace_dev.is_nan() || trace_dev > TRACE_TOL {
            return Err(Error::TraceNotUnit { deviation: trace_dev });
        }
        let matrix = hermitian_part(&matrix);
        let (mut values, vectors) = hermitian_eigen(&matrix);
        let min = values[0];
        if min < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        if min < 0.0 {
            values.iter_mut().for_each(|v| *v = v.max(0.0));
            let sum: f64 = values.iter().sum();
            values.iter_mut().for_each(|v| *v /= sum);
            return Ok(Self {
                matrix: from_spectrum(&vectors, &values),
            });
        }
        Ok(Self { matrix })
    }

    /// For outputs of CPTP maps applied to valid states, which are valid up to rounding.
    pub(crate) fn from_trusted(matrix: CMatrix) -> Self {
        Self {
            matrix: hermitian_part(&matrix),
        }
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self::from_trusted(linalg::identity(d).unscale(d as f64))
    }

    /// `|psi><psi|` after normalizing `psi`.
    pub fn pure(psi: &CVector) -> Result<Self> {
        let norm = psi.norm();
        if psi.is_empty() || norm == 0.0 {
            return Err(Error::InvalidDimension(psi.len(), "pure state needs a nonzero vector"));
        }
        Ok(Self::from_trusted(linalg::projector(&psi.unscale(norm))))
    }

    /// Diagonal state in the computational basis.
    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        let p = ProbabilityVector::new(probabilities.to_vec())?;
        Ok(Self::from_trusted(CMatrix::from_diagonal(&CVector::from_iterator(
            p.len(),
            p.entries().iter().map(|&x| C64::new(x, 0.0)),
        ))))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Von Neumann entropy in nats.
    pub fn entropy(&self) -> f64 {
        linalg::shannon_entropy(&self.eigenvalues())
    }

    /// `Tr(rho^2)`, the squared Hilbert-Schmidt norm.
    pub fn purity(&self) -> f64 {
        linalg::hs_norm_sq(&self.matrix)
    }

    /// `<v|rho|v>`
    pub fn expectation(&self, v: &CVector) -> f64 {
        (v.adjoint() * &self.matrix * v)[(0, 0)].re
    }
}

/// A nondegenerate observable `X = sum_j x_j |x_j><x_j|`, stored as its
/// eigenvector columns and real eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableBasis {
    vectors: CMatrix,
    eigenvalues: Vec<f64>,
}

impl ObservableBasis {
    /// `vectors` holds the eigenvectors as columns.
    pub fn new(vectors: CMatrix, eigenvalues: Vec<f64>) -> Result<Self> {
        let (rows, cols) = vectors.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::InvalidDimension(0, "a basis needs d >= 1"));
        }
        if eigenvalues.len() != rows {
            return Err(Error::EigenvalueCount {
                expected: rows,
                found: eigenvalues.len(),
            });
        }
        let gram = vectors.adjoint() * &vectors;
        let deviation = max_abs_diff(&gram, &linalg::identity(rows));
        if deviation.is_nan() || deviation > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        if let Some(bad) = eigenvalues.iter().find(|x| !x.is_finite()) {
            return Err(Error::Degenerate { a: *bad, b: *bad });
        }
        let mut sorted = eigenvalues.clone();
        sorted.sort_by(f64::total_cmp);
        let scale = sorted.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        for w in sorted.windows(2) {
            let gap = w[1] - w[0];
            if gap.is_nan() || gap <= DEGENERACY_TOL * scale {
                return Err(Error::Degenerate { a: w[0], b: w[1] });
            }
        }
        Ok(Self { vectors, eigenvalues })
    }

    /// Columns of `u` as eigenvectors with the default eigenvalues `1, 2, ..., d`.
    pub fn from_unitary(u: CMatrix) -> Result<Self> {
        let d = u.nrows();
        Self::new(u, default_eigenvalues(d))
    }

    pub fn computational(d: usize) -> Self {
        Self {
            vectors: linalg::identity(d),
            eigenvalues: default_eigenvalues(d),
        }
    }

    /// Discrete Fourier basis, `|f_k> = d^{-1/2} sum_j w^{jk} |j>`; unbiased to the
    /// computational basis.
    pub fn fourier(d: usize) -> Self {
        let norm = (d as f64).sqrt();
        let vectors = CMatrix::from_fn(d, d, |j, k| {
            let angle = 2.0 * std::f64::consts::PI * ((j * k) % d) as f64 / d as f64;
            C64::from_polar(1.0 / norm, angle)
        });
        Self {
            vectors,
            eigenvalues: default_eigenvalues(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    /// Eigenvector columns; a unitary matrix.
    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn vector(&self, j: usize) -> CVector {
        self.vectors.column(j).into_owned()
    }

    /// `|x_j><x_j|`
    pub fn projector(&self, j: usize) -> CMatrix {
        linalg::projector(&self.vector(j))
    }

    pub fn projectors(&self) -> Vec<CMatrix> {
        (0..self.dim()).map(|j| self.projector(j)).collect()
    }

    /// The observable itself, `sum_j x_j |x_j><x_j|`.
    pub fn observable(&self) -> CMatrix {
        let vals: Vec<f64> = self.eigenvalues.clone();
        let mut scaled = self.vectors.clone();
        for (c, &w) in vals.iter().enumerate() {
            scaled.column_mut(c).scale_mut(w);
        }
        hermitian_part(&(&scaled * self.vectors.adjoint()))
    }

    /// Outcome distribution `p_j = <x_j|rho|x_j>`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<ProbabilityVector> {
        check_dims(self.dim(), rho.dim())?;
        let rotated = self.vectors.adjoint() * rho.matrix() * &self.vectors;
        ProbabilityVector::new(rotated.diagonal().iter().map(|z| z.re).collect())
    }

    /// `sum_j p_j |x_j><x_j|`
    fn mix(&self, p: &[f64]) -> CMatrix {
        from_spectrum(&self.vectors, p)
    }
}

fn default_eigenvalues(d: usize) -> Vec<f64> {
    (1..=d).map(|x| x as f64).collect()
}

/// The triple `{rho, X, Y}`: a state and the two observables measured on it, in order.
#[derive(Debug, Clone, PartialEq)]
pub struct Context {
    pub state: DensityMatrix,
    pub first: ObservableBasis,
    pub second: ObservableBasis,
}

impl Context {
    pub fn new(state: DensityMatrix, first: ObservableBasis, second: ObservableBasis) -> Result<Self> {
        check_dims(state.dim(), first.dim())?;
        check_dims(state.dim(), second.dim())?;
        Ok(Self { state, first, second })
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    /// Same observables, different state.
    pub fn with_state(&self, state: DensityMatrix) -> Result<Self> {
        Self::new(state, self.first.clone(), self.second.clone())
    }
}

/// A discrete probability distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Clips entries in `[-1e-12, 0)` to zero; the sum must be within `1e-10` of one.
    pub fn new(mut entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidProbability("empty distribution".into()));
        }
        for x in entries.iter_mut() {
            if !x.is_finite() || *x < -PROBABILITY_NEG_TOL {
                return Err(Error::InvalidProbability(format!("entry {x}")));
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_SUM_TOL {
            return Err(Error::InvalidProbability(format!("sum {sum}")));
        }
        Ok(Self(entries))
    }

    pub fn uniform(d: usize) -> Self {
        Self(vec![1.0 / d as f64; d])
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shannon_entropy(&self) -> f64 {
        linalg::shannon_entropy(&self.0)
    }

    /// `ln d - H(p)`
    pub fn information(&self) -> f64 {
        linalg::distribution_information(&self.0)
    }

    /// `sum_j |p_j - 1/d|^2`, the squared distance to uniform.
    pub fn distance_to_uniform_sq(&self) -> f64 {
        let u = 1.0 / self.len() as f64;
        self.0.iter().map(|x| (x - u).powi(2)).sum()
    }

    /// Pushes `p` through a row-stochastic matrix: `q_k = sum_j T[j,k] p_j`.
    pub fn transition(&self, t: &DMatrix<f64>) -> Result<Self> {
        check_dims(self.len(), t.nrows())?;
        let q = (0..t.ncols())
            .map(|k| (0..t.nrows()).map(|j| t[(j, k)] * self.0[j]).sum())
            .collect();
        Self::new(q)
    }
}

/// Information content `ln d - S(rho)` in nats.
pub fn information(rho: &DensityMatrix) -> f64 {
    let d = rho.dim() as f64;
    (d.ln() - rho.entropy()).max(0.0)
}

/// The unrevealed projective measurement `sum_j X_j rho X_j`.
pub fn dephase(rho: &DensityMatrix, basis: &ObservableBasis) -> Result<DensityMatrix> {
    let p = basis.probabilities(rho)?;
    Ok(DensityMatrix::from_trusted(basis.mix(p.entries())))
}

/// `Phi_Y(Phi_X(rho)) = sum_{j,k} P(k|j) p_j Y_k`
pub fn sequential_dephase(
    rho: &DensityMatrix,
    first: &ObservableBasis,
    second: &ObservableBasis,
) -> Result<DensityMatrix> {
    let q = sequential_distribution(rho, first, second)?;
    Ok(DensityMatrix::from_trusted(second.mix(q.entries())))
}

/// Eigenvalues of the sequentially dephased state, `q_k = sum_j P(k|j) p_j`.
pub fn sequential_distribution(
    rho: &DensityMatrix,
    first: &ObservableBasis,
    second: &ObservableBasis,
) -> Result<ProbabilityVector> {
    let p = first.probabilities(rho)?;
    let t = transition_matrix(first, second)?;
    p.transition(&t)
}

/// `T[j,k] = |<x_j|y_k>|^2`; doubly stochastic.
pub fn transition_matrix(first: &ObservableBasis, second: &ObservableBasis) -> Result<DMatrix<f64>> {
    check_dims(first.dim(), second.dim())?;
    let overlaps = first.vectors().adjoint() * second.vectors();
    Ok(overlaps.map(|z| z.norm_sqr()))
}

/// `Tr[sigma (ln sigma - ln varrho)]` in nats, or `+inf` when the support of
/// `sigma` is not contained in that of `varrho`.
pub fn relative_entropy(sigma: &DensityMatrix, varrho: &DensityMatrix) -> Result<f64> {
    check_dims(sigma.dim(), varrho.dim())?;
    let neg_entropy = -sigma.entropy();
    let (values, vectors) = hermitian_eigen(varrho.matrix());
    let mut cross = 0.0;
    for (i, &lambda) in values.iter().enumerate() {
        let weight = sigma.expectation(&vectors.column(i).into_owned());
        if lambda < SUPPORT_EIGEN_TOL {
            if weight > SUPPORT_WEIGHT_TOL {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * lambda.ln();
    }
    Ok((neg_entropy - cross).max(0.0))
}
