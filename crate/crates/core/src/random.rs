// SPDX-License-Identifier: Apache-2.0

//! Random states, bases and contexts for sweeps, tests and benchmarks.
//!
//! Bases are Haar distributed (QR of a complex Ginibre matrix with the phase
//! of `R`'s diagonal removed). Mixed states follow the Hilbert-Schmidt measure.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, CVector, C64};
use crate::quantum::{Context, DensityMatrix, ObservableBasis};

fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let qr = ginibre(rng, d, d).qr();
    let (mut q, r) = qr.unpack();
    for c in 0..d {
        let diag = r[(c, c)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        q.column_mut(c).iter_mut().for_each(|z| *z *= phase);
    }
    q
}

/// Haar-random eigenbasis with eigenvalues `1..=d`.
pub fn random_basis<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ObservableBasis {
    ObservableBasis::from_unitary(haar_unitary(rng, d)).expect("Haar unitary is orthonormal")
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    let psi: CVector = ginibre(rng, d, 1).column(0).into_owned();
    DensityMatrix::pure(&psi).expect("nonzero Gaussian vector")
}

/// Hilbert-Schmidt random mixed state `G G^dagger / Tr(G G^dagger)`.
pub fn random_mixed_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    let g = ginibre(rng, d, d);
    let w = &g * g.adjoint();
    let tr = crate::linalg::trace(&w).re;
    DensityMatrix::new(w.unscale(tr)).expect("Wishart matrix is a valid state")
}

/// Haar bases and a state that is pure or Hilbert-Schmidt mixed with equal odds.
pub fn random_context<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Context {
    let state = if rng.random_bool(0.5) {
        random_pure_state(rng, d)
    } else {
        random_mixed_state(rng, d)
    };
    Context::new(state, random_basis(rng, d), random_basis(rng, d)).expect("dimensions agree")
}

/// A unit vector in `R^n`.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs_diff};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 1..7 {
            let u = haar_unitary(&mut rng, d);
            assert!(max_abs_diff(&(u.adjoint() * &u), &identity(d)) < 1e-13);
        }
    }

    #[test]
    fn mixed_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in 2..6 {
            let rho = random_mixed_state(&mut rng, d);
            assert!(rho.eigenvalues()[0] >= 0.0);
            assert!(rho.purity() < 1.0);
        }
    }
}
