// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra used throughout the crate.
//!
//! Everything spectral goes through [`hermitian_eigen`]; matrices are small
//! (d <= 16, joint system-apparatus spaces d^2 <= 256).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Eigenvalues (ascending) and matching eigenvector columns of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = hermitian_part(m).symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `(A + A^dagger) / 2`
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Squared Hilbert-Schmidt norm, `Tr(A^dagger A)`.
pub fn hs_norm_sq(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

pub fn hs_norm(m: &CMatrix) -> f64 {
    hs_norm_sq(m).sqrt()
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

/// `V diag(values) V^dagger`
pub fn from_spectrum(vectors: &CMatrix, values: &[f64]) -> CMatrix {
    let d = vectors.nrows();
    let mut scaled = vectors.clone();
    for (c, &w) in values.iter().enumerate() {
        scaled.column_mut(c).scale_mut(w);
    }
    let mut out = &scaled * vectors.adjoint();
    debug_assert_eq!(out.nrows(), d);
    // Exact Hermiticity for downstream validation.
    out = hermitian_part(&out);
    out
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Trace over the second factor of a `(da*db) x (da*db)` operator.
pub fn partial_trace_second(m: &CMatrix, da: usize, db: usize) -> CMatrix {
    CMatrix::from_fn(da, da, |i, j| (0..db).map(|k| m[(i * db + k, j * db + k)]).sum())
}

/// Trace over the first factor of a `(da*db) x (da*db)` operator.
pub fn partial_trace_first(m: &CMatrix, da: usize, db: usize) -> CMatrix {
    CMatrix::from_fn(db, db, |i, j| (0..da).map(|k| m[(k * db + i, k * db + j)]).sum())
}

/// `exp(i H)` for Hermitian `H`, through its spectral decomposition.
pub fn unitary_exp(h: &CMatrix) -> CMatrix {
    let (values, vectors) = hermitian_eigen(h);
    let mut scaled = vectors.clone();
    for (c, &w) in values.iter().enumerate() {
        let phase = C64::from_polar(1.0, w);
        scaled.column_mut(c).iter_mut().for_each(|z| *z *= phase);
    }
    &scaled * vectors.adjoint()
}

/// Shannon entropy in nats with `0 ln 0 = 0`; slightly negative entries count as zero.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
}

/// `ln d - H(p)` evaluated as `sum_j p_j ln(d p_j)` with `ln_1p`, which keeps full
/// relative precision when `p` is close to uniform.
pub fn distribution_information(p: &[f64]) -> f64 {
    let d = p.len() as f64;
    p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| {
            let z = d * x - 1.0;
            // ln_1p rounds to -inf for tiny x, where ln(d x) is still finite.
            x * if z > -0.5 { z.ln_1p() } else { (d * x).ln() }
        })
        .sum()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_reconstructs_hermitian() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.0, -0.5),
                C64::new(0.0, 0.5),
                C64::new(-1.0, 0.0),
            ],
        );
        let (vals, vecs) = hermitian_eigen(&m);
        assert!(vals[0] < vals[1]);
        let back = from_spectrum(&vecs, &vals);
        assert!(max_abs_diff(&back, &m) < 1e-14);
    }

    #[test]
    fn partial_traces_of_product() {
        let a = CMatrix::from_diagonal(&CVector::from_vec(vec![ONE * 0.25, ONE * 0.75]));
        let b = CMatrix::from_diagonal(&CVector::from_vec(vec![ONE * 0.5, ONE * 0.2, ONE * 0.3]));
        let ab = kron(&a, &b);
        assert!(max_abs_diff(&partial_trace_second(&ab, 2, 3), &a) < 1e-15);
        assert!(max_abs_diff(&partial_trace_first(&ab, 2, 3), &b) < 1e-15);
    }

    #[test]
    fn unitary_exp_of_zero_is_identity() {
        let u = unitary_exp(&CMatrix::zeros(3, 3));
        assert!(max_abs_diff(&u, &identity(3)) < 1e-15);
    }

    #[test]
    fn information_forms_agree() {
        let p = [0.5, 0.3, 0.2];
        let direct = 3f64.ln() - shannon_entropy(&p);
        assert!((direct - distribution_information(&p)).abs() < 1e-15);
        assert_eq!(shannon_entropy(&[1.0, 0.0]), 0.0);
    }
}
