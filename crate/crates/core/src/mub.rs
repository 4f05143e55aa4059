// SPDX-License-Identifier: Apache-2.0

//! Search for a basis mutually unbiased to a fixed one by maximizing the
//! measurement incompatibility.
//!
//! Candidates are `W exp(i sum_k a_k Lambda_k)`, where `W` holds the fixed
//! basis's eigenvectors, so `a = 0` is the fixed basis itself. The search runs
//! gradient ascent on the coefficients with central finite differences and a
//! backtracking line search, restarting from uniform random coefficients in
//! `[-pi, pi]` when progress stalls. Internally the optimizer works with the
//! deficit `1 - M = sum_jk (|<x_j|y_k>|^2 - 1/d)^2 / (d - 1)`, which keeps full
//! precision close to the optimum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bloch::GeneratorSet;
use crate::error::{Error, Result};
use crate::linalg::unitary_exp;
use crate::quantum::{transition_matrix, ObservableBasis};
use crate::random::random_direction;

/// Central finite-difference step.
pub const GRADIENT_STEP: f64 = 1e-6;
/// The line search gives up below this step length.
pub const MIN_STEP: f64 = 1e-12;
/// Consecutive iterations with `|delta objective| < tol_obj` before a restart.
pub const STALL_ITERATIONS: usize = 10;
const MAX_STEP: f64 = 64.0;
/// Below this gradient norm the ascent direction is drawn at random; needed to
/// leave the fixed basis, where `M = 0` is a global minimum.
const FLAT_GRADIENT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub dim: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub step_init: f64,
    pub tol_obj: f64,
    pub tol_mub: f64,
    pub seed: u64,
    /// Starting coefficients for the first restart; uniform random when `None`.
    pub initial: Option<Vec<f64>>,
}

impl SearchConfig {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            restarts: 10,
            max_iters: 5000,
            step_init: 1.0,
            tol_obj: 1e-12,
            tol_mub: 1e-8,
            seed: 0,
            initial: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidDimension(self.dim, "search needs d >= 2"));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be at least 1"));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidConfig("max_iters must be at least 1"));
        }
        if !(self.step_init > 0.0 && self.step_init.is_finite()) {
            return Err(Error::InvalidConfig("step_init must be positive"));
        }
        if self.tol_obj.is_nan() || self.tol_obj < 0.0 {
            return Err(Error::InvalidConfig("tol_obj must be non-negative"));
        }
        if self.tol_mub.is_nan() || self.tol_mub < 1e-10 {
            return Err(Error::InvalidConfig("tol_mub must be at least 1e-10"));
        }
        if let Some(a) = &self.initial {
            if a.len() != self.dim * self.dim - 1 {
                return Err(Error::InvalidConfig("initial coefficients need d^2 - 1 entries"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub restart: usize,
    pub iteration: usize,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_basis: ObservableBasis,
    pub objective: f64,
    pub certified_mub: bool,
    pub max_deviation: f64,
    pub trajectory: Vec<TrajectoryPoint>,
    pub restarts_used: usize,
}

/// Whether two bases are mutually unbiased to within `tol`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MubCertificate {
    pub is_mub: bool,
    /// `max_jk | |<x_j|y_k>|^2 - 1/d |`
    pub max_deviation: f64,
}

pub fn mub_certificate(first: &ObservableBasis, second: &ObservableBasis, tol: f64) -> Result<MubCertificate> {
    let t = transition_matrix(first, second)?;
    let u = 1.0 / first.dim() as f64;
    let max_deviation = t.iter().map(|p| (p - u).abs()).fold(0.0, f64::max);
    Ok(MubCertificate {
        is_mub: max_deviation <= tol,
        max_deviation,
    })
}

/// Eigenvectors are the columns of `exp(i sum_k a_k Lambda_k)`.
pub fn parameterize_basis(coeffs: &[f64], gens: &GeneratorSet) -> Result<ObservableBasis> {
    if coeffs.len() != gens.len() {
        return Err(Error::DimensionMismatch {
            expected: gens.len(),
            found: coeffs.len(),
        });
    }
    ObservableBasis::from_unitary(unitary_exp(&gens.expand(coeffs)))
}

struct Objective<'a> {
    fixed: &'a ObservableBasis,
    gens: GeneratorSet,
}

impl Objective<'_> {
    fn candidate(&self, coeffs: &[f64]) -> ObservableBasis {
        let u = unitary_exp(&self.gens.expand(coeffs));
        ObservableBasis::new(self.fixed.vectors() * u, self.fixed.eigenvalues().to_vec())
            .expect("product of unitaries is orthonormal")
    }

    /// `1 - M(fixed, candidate)`
    fn deficit(&self, coeffs: &[f64]) -> f64 {
        let candidate = self.candidate(coeffs);
        let t = transition_matrix(self.fixed, &candidate).expect("same dimension");
        let d = self.fixed.dim() as f64;
        t.iter().map(|p| (p - 1.0 / d).powi(2)).sum::<f64>() / (d - 1.0)
    }

    fn gradient(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut probe = coeffs.to_vec();
        (0..coeffs.len())
            .map(|k| {
                probe[k] = coeffs[k] + GRADIENT_STEP;
                let plus = self.deficit(&probe);
                probe[k] = coeffs[k] - GRADIENT_STEP;
                let minus = self.deficit(&probe);
                probe[k] = coeffs[k];
                (plus - minus) / (2.0 * GRADIENT_STEP)
            })
            .collect()
    }
}

/// Maximizes `M(fixed, candidate)` over candidate bases.
///
/// Restarts run in order and share one seeded generator, so a configuration
/// always reproduces the same trajectory. The search stops at the first
/// candidate whose certificate passes at `tol_mub`. Among restarts the best
/// objective wins, ties going to the earlier restart.
pub fn maximize_incompatibility(fixed: &ObservableBasis, config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    if fixed.dim() != config.dim {
        return Err(Error::DimensionMismatch {
            expected: config.dim,
            found: fixed.dim(),
        });
    }
    let objective = Objective {
        fixed,
        gens: GeneratorSet::new(config.dim)?,
    };
    let n = objective.gens.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trajectory = Vec::new();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut restarts_used = 0;

    for restart in 0..config.restarts {
        restarts_used = restart + 1;
        let mut coeffs: Vec<f64> = match (&config.initial, restart) {
            (Some(a), 0) => a.clone(),
            _ => (0..n)
                .map(|_| rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI))
                .collect(),
        };
        let mut deficit = objective.deficit(&coeffs);
        trajectory.push(TrajectoryPoint {
            restart,
            iteration: 0,
            objective: 1.0 - deficit,
        });
        let mut step = config.step_init;
        let mut stalled = 0;
        let mut certified = certificate_passes(&objective, &coeffs, config.tol_mub);

        for iteration in 1..=config.max_iters {
            if certified {
                break;
            }
            let grad = objective.gradient(&coeffs);
            let grad_norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            let direction: Vec<f64> = if grad_norm < FLAT_GRADIENT {
                random_direction(&mut rng, n)
            } else {
                grad.iter().map(|g| -g).collect()
            };

            let mut trial_step = step;
            let mut accepted = None;
            while trial_step >= MIN_STEP {
                let trial: Vec<f64> = coeffs.iter().zip(&direction).map(|(a, g)| a + trial_step * g).collect();
                let value = objective.deficit(&trial);
                if value < deficit {
                    accepted = Some((trial, value));
                    break;
                }
                trial_step /= 2.0;
            }
            let Some((trial, value)) = accepted else {
                break;
            };
            let gain = deficit - value;
            coeffs = trial;
            deficit = value;
            step = (trial_step * 2.0).min(MAX_STEP);
            trajectory.push(TrajectoryPoint {
                restart,
                iteration,
                objective: 1.0 - deficit,
            });
            certified = certificate_passes(&objective, &coeffs, config.tol_mub);
            if gain < config.tol_obj {
                stalled += 1;
                if stalled >= STALL_ITERATIONS {
                    break;
                }
            } else {
                stalled = 0;
            }
        }

        let value = 1.0 - deficit;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, coeffs.clone()));
        }
        if certified {
            break;
        }
    }

    let (objective_value, coeffs) = best.expect("at least one restart");
    let best_basis = objective.candidate(&coeffs);
    let cert = mub_certificate(fixed, &best_basis, config.tol_mub)?;
    Ok(SearchResult {
        best_basis,
        objective: objective_value,
        certified_mub: cert.is_mub,
        max_deviation: cert.max_deviation,
        trajectory,
        restarts_used,
    })
}

fn certificate_passes(objective: &Objective<'_>, coeffs: &[f64], tol: f64) -> bool {
    mub_certificate(objective.fixed, &objective.candidate(coeffs), tol)
        .map(|c| c.is_mub)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incompatibility::measurement_incompatibility;
    use crate::linalg::{identity, max_abs_diff};
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    #[test]
    fn zero_coefficients_give_computational_basis() {
        let g = GeneratorSet::new(3).unwrap();
        let b = parameterize_basis(&[0.0; 8], &g).unwrap();
        assert!(max_abs_diff(b.vectors(), &identity(3)) < 1e-15);
    }

    #[test]
    fn quarter_turn_about_x_is_unbiased() {
        let g = GeneratorSet::new(2).unwrap();
        let b = parameterize_basis(&[FRAC_PI_4, 0.0, 0.0], &g).unwrap();
        let m = measurement_incompatibility(&ObservableBasis::computational(2), &b).unwrap();
        assert!((m - 1.0).abs() < 1e-14);
        assert!(parameterize_basis(&[0.0; 2], &g).is_err());
    }

    #[test]
    fn certificate_examples() {
        let c = mub_certificate(&ObservableBasis::computational(5), &ObservableBasis::fourier(5), 1e-8).unwrap();
        assert!(c.is_mub && c.max_deviation <= 1e-12);
        for d in 2..6 {
            let b = ObservableBasis::fourier(d);
            let c = mub_certificate(&b, &b, 1e-8).unwrap();
            assert!(!c.is_mub);
            assert!((c.max_deviation - (1.0 - 1.0 / d as f64)).abs() < 1e-13);
        }
        let g = GeneratorSet::new(2).unwrap();
        // Rotation by pi/3 about y.
        let tilted = parameterize_basis(&[0.0, FRAC_PI_3 / 2.0, 0.0], &g).unwrap();
        let c = mub_certificate(&ObservableBasis::computational(2), &tilted, 1e-8).unwrap();
        assert!((c.max_deviation - 0.25).abs() < 1e-14);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = SearchConfig::new(2);
        cfg.restarts = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = SearchConfig::new(2);
        cfg.tol_mub = 1e-12;
        assert!(cfg.validate().is_err());
        let cfg = SearchConfig::new(3);
        assert!(matches!(
            maximize_incompatibility(&ObservableBasis::computational(2), &cfg),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn qubit_search_certifies() {
        let mut cfg = SearchConfig::new(2);
        cfg.seed = 11;
        let res = maximize_incompatibility(&ObservableBasis::computational(2), &cfg).unwrap();
        assert!(res.certified_mub);
        assert!(res.objective >= 1.0 - 1e-8);
    }

    #[test]
    fn escapes_the_fixed_basis() {
        let mut cfg = SearchConfig::new(4);
        cfg.restarts = 1;
        cfg.max_iters = 3;
        cfg.initial = Some(vec![0.0; 15]);
        let res = maximize_incompatibility(&ObservableBasis::computational(4), &cfg).unwrap();
        assert_eq!(res.trajectory[0].objective, 0.0);
        assert_eq!(res.trajectory[1].iteration, 1);
        assert!(res.trajectory[1].objective > 0.0);
    }
}
