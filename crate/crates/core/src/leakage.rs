// SPDX-License-Identifier: Apache-2.0

//! The Alice-Bob-Eve leakage protocol.
//!
//! Alice dephases her state in the X basis and sends it to Bob. Eve measures Y
//! by coupling the system to a `d`-level apparatus through a controlled cyclic
//! shift in the Y eigenbasis, `U |y_k>|e_m> = |y_k>|e_{m+k mod d}>`, starting
//! from `|e_0>`. The information Bob loses is accounted for by the change in
//! the apparatus's local information plus the system-apparatus mutual
//! information. Only that sum is independent of the chosen dilation.
//!
//! Noise sweeps mix the state toward `1/d` and track how the leaked fraction
//! of injected information behaves as the noise grows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incompatibility::{leakage_ratio, ZERO_INFO_TOL};
use crate::linalg::{self, kron, partial_trace_first, partial_trace_second, CMatrix, C64};
use crate::quantum::{
    dephase, information, sequential_dephase, transition_matrix, Context, DensityMatrix, ObservableBasis,
};

/// Largest entry error allowed between the dilated marginal and `Phi_YX(rho)`.
pub const MARGINAL_TOL: f64 = 1e-10;

/// The information ledger of one dilated eavesdropping run, in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    /// `I(Phi_X(rho))`
    pub i_initial: f64,
    /// `I(Tr_E Omega_t)`
    pub i_final: f64,
    /// `I(rho_t^E) - I(rho_0^E)`
    pub delta_apparatus: f64,
    /// `S(rho_t) + S(rho_t^E) - S(Omega_t)`
    pub mutual_info: f64,
}

impl LedgerEntry {
    /// `(i_initial - i_final) - (delta_apparatus + mutual_info)`, zero when the books balance.
    pub fn balance_residual(&self) -> f64 {
        (self.i_initial - self.i_final) - (self.delta_apparatus + self.mutual_info)
    }
}

/// Joint system-apparatus state after Eve's interaction and its marginals.
#[derive(Debug, Clone)]
pub struct DilatedEvolution {
    /// `Omega_t`, system factor first.
    pub joint: CMatrix,
    pub system: DensityMatrix,
    pub apparatus: DensityMatrix,
    /// `Phi_X(rho)`, the system state handed to Eve.
    pub input: DensityMatrix,
}

/// `sum_k |y_k><y_k| (x) S^k` with `S|e_m> = |e_{m+1 mod d}>`.
pub fn controlled_shift(basis: &ObservableBasis) -> CMatrix {
    let d = basis.dim();
    let mut u = CMatrix::zeros(d * d, d * d);
    for k in 0..d {
        let shift = CMatrix::from_fn(d, d, |r, c| if r == (c + k) % d { linalg::ONE } else { linalg::ZERO });
        u += kron(&basis.projector(k), &shift);
    }
    u
}

pub fn dilate(ctx: &Context) -> Result<DilatedEvolution> {
    let d = ctx.dim();
    let input = dephase(&ctx.state, &ctx.first)?;
    let mut ready = CMatrix::zeros(d, d);
    ready[(0, 0)] = linalg::ONE;
    let omega0 = kron(input.matrix(), &ready);
    let u = controlled_shift(&ctx.second);
    let joint = &u * omega0 * u.adjoint();
    let system = DensityMatrix::from_trusted(partial_trace_second(&joint, d, d));
    let apparatus = DensityMatrix::from_trusted(partial_trace_first(&joint, d, d));
    Ok(DilatedEvolution {
        joint,
        system,
        apparatus,
        input,
    })
}

/// Runs the dilated protocol and fills every ledger field from `Omega_t`.
pub fn stinespring_ledger(ctx: &Context) -> Result<LedgerEntry> {
    let run = dilate(ctx)?;
    let expected = sequential_dephase(&ctx.state, &ctx.first, &ctx.second)?;
    let marginal_error = linalg::max_abs_diff(run.system.matrix(), expected.matrix());
    if marginal_error > MARGINAL_TOL {
        return Err(Error::CrossCheck {
            what: "apparatus-traced state vs sequential dephasing",
            a: marginal_error,
            b: MARGINAL_TOL,
        });
    }
    let joint_entropy = DensityMatrix::from_trusted(run.joint.clone()).entropy();
    let s_system = run.system.entropy();
    let s_apparatus = run.apparatus.entropy();
    // The apparatus starts pure, so its initial information is ln d.
    let d = ctx.dim() as f64;
    Ok(LedgerEntry {
        i_initial: information(&run.input),
        i_final: information(&run.system),
        delta_apparatus: (d.ln() - s_apparatus) - d.ln(),
        mutual_info: s_system + s_apparatus - joint_entropy,
    })
}

/// `(1 - eps) 1/d + eps rho`
pub fn apply_noise(rho: &DensityMatrix, epsilon: f64) -> Result<DensityMatrix> {
    check_unit_interval("epsilon", epsilon)?;
    let d = rho.dim();
    let mixed = linalg::identity(d).unscale(d as f64);
    Ok(DensityMatrix::from_trusted(
        mixed * C64::new(1.0 - epsilon, 0.0) + rho.matrix() * C64::new(epsilon, 0.0),
    ))
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            range: "[0, 1]",
        })
    }
}

/// One point of a noise sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSweepPoint {
    pub epsilon: f64,
    /// `I(Phi_X(rho_eps))`
    pub i_initial_eps: f64,
    /// `I(Phi_YX(rho_eps))`
    pub i_final_eps: f64,
    /// Entropic ratio `(I_i - I_f) / I_i` of the noisy context.
    pub ratio_eps: f64,
    /// Hilbert-Schmidt leakage ratio of the noisy context, from the noisy
    /// matrices; `None` once its denominator drops below the zero-information
    /// threshold.
    pub norm_ratio_eps: Option<f64>,
}

/// `n` points spaced logarithmically in `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

/// `n` evenly spaced points in `[lo, hi]`.
pub fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Twenty logarithmically spaced noise strengths in `[1e-4, 1]`.
pub fn default_epsilon_grid() -> Vec<f64> {
    log_grid(1e-4, 1.0, 20)
}

/// `I` of `(1 - eps)/d + eps p`, written with `z_j = eps (d p_j - 1)` so that
/// tiny information values keep their relative precision.
fn noisy_information(p: &[f64], epsilon: f64) -> f64 {
    let d = p.len() as f64;
    p.iter()
        .map(|&pj| {
            let z = epsilon * (d * pj - 1.0);
            let weight = (1.0 + z) / d;
            if weight <= 0.0 {
                0.0
            } else if z > -0.5 {
                weight * z.ln_1p()
            } else {
                weight * (1.0 + z).ln()
            }
        })
        .sum()
}

/// Exact information values and ratios of `{N_eps(rho), X, Y}` for each `eps` in `(0, 1]`.
pub fn noise_sweep(ctx: &Context, epsilons: &[f64]) -> Result<Vec<NoiseSweepPoint>> {
    let p = ctx.first.probabilities(&ctx.state)?;
    if p.distance_to_uniform_sq() <= ZERO_INFO_TOL {
        return Err(Error::ZeroInformation);
    }
    let q = p.transition(&transition_matrix(&ctx.first, &ctx.second)?)?;
    epsilons
        .iter()
        .map(|&epsilon| {
            if !(epsilon > 0.0 && epsilon <= 1.0) {
                return Err(Error::OutOfRange {
                    name: "epsilon",
                    value: epsilon,
                    range: "(0, 1]",
                });
            }
            let i_initial_eps = noisy_information(p.entries(), epsilon);
            let i_final_eps = noisy_information(q.entries(), epsilon);
            if i_initial_eps < 1e-14 {
                return Err(Error::ZeroInformation);
            }
            let noisy = ctx.with_state(apply_noise(&ctx.state, epsilon)?)?;
            Ok(NoiseSweepPoint {
                epsilon,
                i_initial_eps,
                i_final_eps,
                ratio_eps: (i_initial_eps - i_final_eps) / i_initial_eps,
                norm_ratio_eps: leakage_ratio(&noisy).ok(),
            })
        })
        .collect()
}

/// Quadratic-order small-noise values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmallNoiseExpansion {
    /// `(eps^2/2)(d |Phi_X(rho)|^2 - 1)`
    pub i_initial_approx: f64,
    /// `(eps^2/2)(d |Phi_YX(rho)|^2 - 1)`
    pub i_final_approx: f64,
    /// Their difference, which equals the leakage ratio times `i_initial_approx`.
    pub i_context_approx: f64,
}

/// Valid for `0 <= eps <= 0.1/d`.
pub fn small_eps_expansion(ctx: &Context, epsilon: f64) -> Result<SmallNoiseExpansion> {
    let d = ctx.dim() as f64;
    let max = 0.1 / d;
    if !(0.0..=max).contains(&epsilon) {
        return Err(Error::ExpansionDomain { epsilon, max });
    }
    let p = ctx.first.probabilities(&ctx.state)?;
    let q = p.transition(&transition_matrix(&ctx.first, &ctx.second)?)?;
    // d |sum p_j X_j|^2 - 1 = d sum_j (p_j - 1/d)^2
    let half_eps2 = epsilon * epsilon / 2.0;
    let i_initial_approx = half_eps2 * d * p.distance_to_uniform_sq();
    let i_final_approx = half_eps2 * d * q.distance_to_uniform_sq();
    Ok(SmallNoiseExpansion {
        i_initial_approx,
        i_final_approx,
        i_context_approx: i_initial_approx - i_final_approx,
    })
}

/// `(1 - eps) rho + eps Phi_X(rho)`
pub fn weak_measure(rho: &DensityMatrix, basis: &ObservableBasis, strength: f64) -> Result<DensityMatrix> {
    check_unit_interval("strength", strength)?;
    let full = dephase(rho, basis)?;
    Ok(DensityMatrix::from_trusted(
        rho.matrix() * C64::new(1.0 - strength, 0.0) + full.matrix() * C64::new(strength, 0.0),
    ))
}

/// How the measurement strength follows the apparatus-to-particle mass ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MassModel {
    /// `eps = min(m_SG/m, 1)`
    Linear,
    /// `eps = 1 - exp(-m_SG/m)`
    Saturating,
}

impl MassModel {
    pub fn strength(self, mass_ratio: f64) -> Result<f64> {
        if mass_ratio.is_nan() || mass_ratio < 0.0 {
            return Err(Error::OutOfRange {
                name: "mass_ratio",
                value: mass_ratio,
                range: "[0, inf)",
            });
        }
        Ok(match self {
            MassModel::Linear => mass_ratio.min(1.0),
            MassModel::Saturating => -(-mass_ratio).exp_m1(),
        })
    }
}

/// `S(M_Y M_X (rho)) - S(M_X (rho))` with weak maps of the strength implied by `mass_ratio`.
pub fn mass_model_context_incompat(ctx: &Context, mass_ratio: f64, model: MassModel) -> Result<f64> {
    let strength = model.strength(mass_ratio)?;
    let after_x = weak_measure(&ctx.state, &ctx.first, strength)?;
    let after_yx = weak_measure(&after_x, &ctx.second, strength)?;
    Ok(after_yx.entropy() - after_x.entropy())
}
