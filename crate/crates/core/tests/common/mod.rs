// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use nalgebra::DMatrix;
use qcontext_core::bloch::GeneratorSet;
use qcontext_core::linalg::{unitary_exp, CMatrix, CVector, C64};
use qcontext_core::random::{haar_unitary, random_basis, random_direction};
use qcontext_core::{Context, DensityMatrix, ObservableBasis};
use rand::Rng;

/// Fourier matrix times `W`: unbiased to the basis in the columns of `W`.
pub fn unbiased_partner(x: &ObservableBasis) -> ObservableBasis {
    ObservableBasis::from_unitary(x.vectors() * ObservableBasis::fourier(x.dim()).vectors()).unwrap()
}

/// `rho = |x_0><x_0|` with `Y` unbiased to `X`.
pub fn mub_eigen_context(d: usize) -> Context {
    let x = ObservableBasis::computational(d);
    let y = ObservableBasis::fourier(d);
    Context::new(DensityMatrix::pure(&x.vector(0)).unwrap(), x, y).unwrap()
}

/// Same basis up to column phases and a random permutation.
pub fn commuting_partner<R: Rng>(rng: &mut R, x: &ObservableBasis) -> ObservableBasis {
    let d = x.dim();
    let mut order: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let phases: Vec<C64> = (0..d)
        .map(|_| C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    let v = CMatrix::from_fn(d, d, |r, c| x.vectors()[(r, order[c])] * phases[c]);
    ObservableBasis::from_unitary(v).unwrap()
}

/// Pure state whose `X` statistics are uniform, so `Phi_X(rho) = 1/d`.
pub fn uniform_overlap_state<R: Rng>(rng: &mut R, x: &ObservableBasis) -> DensityMatrix {
    let d = x.dim();
    let amps = CVector::from_fn(d, |_, _| {
        C64::from_polar(1.0 / (d as f64).sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
    });
    DensityMatrix::pure(&(x.vectors() * amps)).unwrap()
}

/// `W exp(i delta H)` for a random unit direction `H` in the generator span.
pub fn perturbed_basis<R: Rng>(rng: &mut R, x: &ObservableBasis, delta: f64) -> ObservableBasis {
    let gens = GeneratorSet::new(x.dim()).unwrap();
    let dir: Vec<f64> = random_direction(rng, gens.len()).iter().map(|a| a * delta).collect();
    ObservableBasis::from_unitary(x.vectors() * unitary_exp(&gens.expand(&dir))).unwrap()
}

/// Random basis with Haar-distributed eigenvectors.
pub fn haar_basis<R: Rng>(rng: &mut R, d: usize) -> ObservableBasis {
    random_basis(rng, d)
}

pub fn haar<R: Rng>(rng: &mut R, d: usize) -> CMatrix {
    haar_unitary(rng, d)
}

pub fn gram_deviation(v: &CMatrix) -> f64 {
    let g = v.adjoint() * v;
    let d = g.nrows();
    (g - CMatrix::identity(d, d))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|x| x.abs()).fold(0.0, f64::max)
}
