// SPDX-License-Identifier: Apache-2.0

//! Context incompatibility, leakage ratio, measurement incompatibility and
//! the free-context classifier.

use serde::{Deserialize, Serialize};

use crate::channel::{KrausChannel, CHANNEL_TOL};
use crate::error::{Error, Result};
use crate::linalg::{self, hs_norm, hs_norm_sq, max_abs_diff, CMatrix};
use crate::quantum::{
    dephase, relative_entropy, sequential_dephase, sequential_distribution, transition_matrix, Context, DensityMatrix,
    ObservableBasis,
};

/// `|Phi_X(rho) - 1/d|` at or below this (Hilbert-Schmidt) counts as zero information.
pub const ZERO_INFO_TOL: f64 = 1e-12;
/// `|[X, Y]|` at or below this counts as commuting.
pub const COMMUTATION_TOL: f64 = 1e-10;
/// Tolerance on a free operation commuting with the dephasing maps.
pub const FREE_OPERATION_TOL: f64 = 1e-9;
/// Slack allowed when checking that a free operation did not increase the measure.
pub const MONOTONICITY_SLACK: f64 = 1e-9;

/// Which free class a context falls in, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    /// `[X, Y] = 0`
    FreeCommuting,
    /// `Phi_X(rho) = 1/d`
    FreeZeroInfo,
    Resourceful,
}

impl Classification {
    pub fn is_free(self) -> bool {
        self != Classification::Resourceful
    }
}

/// All measures of a context in one place. `ratio` is `None` for zero-information contexts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncompatibilityReport {
    pub i_context: f64,
    pub i_initial: f64,
    pub i_final: f64,
    pub ratio: Option<f64>,
    pub m_measurement: f64,
    pub classification: Classification,
}

/// Information consumed by the second measurement,
/// `I(Phi_X(rho)) - I(Phi_YX(rho)) = H(q) - H(p)`.
pub fn context_incompatibility(ctx: &Context) -> f64 {
    let (i_initial, i_final) = initial_and_final_information(ctx);
    i_initial - i_final
}

/// `(I(Phi_X(rho)), I(Phi_YX(rho)))` from the two outcome distributions.
pub fn initial_and_final_information(ctx: &Context) -> (f64, f64) {
    let p = ctx
        .first
        .probabilities(&ctx.state)
        .expect("context dimensions are consistent");
    let q = sequential_distribution(&ctx.state, &ctx.first, &ctx.second).expect("context dimensions are consistent");
    (p.information(), q.information())
}

/// Relative entropy of Y-coherence of the X-dephased state,
/// `S(Phi_X(rho) || Phi_Y(Phi_X(rho)))`, evaluated with operator logarithms.
pub fn coherence_form(ctx: &Context) -> Result<f64> {
    let sigma = dephase(&ctx.state, &ctx.first)?;
    let target = dephase(&sigma, &ctx.second)?;
    relative_entropy(&sigma, &target)
}

fn dephased_pair(ctx: &Context) -> (DensityMatrix, DensityMatrix) {
    let phi_x = dephase(&ctx.state, &ctx.first).expect("context dimensions are consistent");
    let phi_yx = sequential_dephase(&ctx.state, &ctx.first, &ctx.second).expect("context dimensions are consistent");
    (phi_x, phi_yx)
}

/// `|Phi_YX(rho) - Phi_X(rho)|^2 / |Phi_X(rho) - 1/d|^2` in the Hilbert-Schmidt norm.
pub fn leakage_ratio(ctx: &Context) -> Result<f64> {
    let (phi_x, phi_yx) = dephased_pair(ctx);
    let mixed = DensityMatrix::maximally_mixed(ctx.dim());
    let denominator = hs_norm_sq(&(phi_x.matrix() - mixed.matrix()));
    if denominator <= ZERO_INFO_TOL {
        return Err(Error::ZeroInformation);
    }
    Ok(hs_norm_sq(&(phi_yx.matrix() - phi_x.matrix())) / denominator)
}

/// Leakage ratio of the eigenstate context `{X_j, X, Y}` (zero-based `j`):
/// `d/(d-1) (1 - sum_k P(k|j)^2)`.
pub fn eigenstate_ratio(j: usize, first: &ObservableBasis, second: &ObservableBasis) -> Result<f64> {
    let t = transition_matrix(first, second)?;
    let d = first.dim();
    if j >= d {
        return Err(Error::IndexOutOfRange { index: j, dim: d });
    }
    let row_sq: f64 = t.row(j).iter().map(|p| p * p).sum();
    let d = d as f64;
    Ok(d / (d - 1.0) * (1.0 - row_sq))
}

/// `(d - sum_jk |<x_j|y_k>|^4) / (d - 1)`, zero for commuting observables and
/// one exactly for mutually unbiased bases.
pub fn measurement_incompatibility(first: &ObservableBasis, second: &ObservableBasis) -> Result<f64> {
    let t = transition_matrix(first, second)?;
    let d = first.dim() as f64;
    let fourth: f64 = t.iter().map(|p| p * p).sum();
    Ok((d - fourth) / (d - 1.0))
}

/// The three equivalent evaluations of the measurement incompatibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementForms {
    /// Mean of the eigenstate leakage ratios.
    pub averaged_ratio: f64,
    /// Fourth powers of basis overlaps; the value reported by
    /// [`measurement_incompatibility`].
    pub overlap: f64,
    /// `sum_jk |[X_j, Y_k]|^2 / (2(d-1))`
    pub commutator: f64,
}

impl MeasurementForms {
    pub fn compute(first: &ObservableBasis, second: &ObservableBasis) -> Result<Self> {
        let d = first.dim();
        let overlap = measurement_incompatibility(first, second)?;
        let averaged_ratio = (0..d)
            .map(|j| eigenstate_ratio(j, first, second))
            .sum::<Result<f64>>()?
            / d as f64;
        let xs = first.projectors();
        let ys = second.projectors();
        let commutator = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| hs_norm_sq(&linalg::commutator(x, y))))
            .sum::<f64>()
            / (2.0 * (d as f64 - 1.0));
        Ok(Self {
            averaged_ratio,
            overlap,
            commutator,
        })
    }

    /// Largest pairwise disagreement.
    pub fn spread(&self) -> f64 {
        let v = [self.averaged_ratio, self.overlap, self.commutator];
        let max = v.iter().copied().fold(f64::MIN, f64::max);
        let min = v.iter().copied().fold(f64::MAX, f64::min);
        max - min
    }

    pub fn cross_check(&self, tol: f64) -> Result<()> {
        for (what, a) in [
            ("averaged-ratio form", self.averaged_ratio),
            ("commutator form", self.commutator),
        ] {
            if (a - self.overlap).abs() > tol {
                return Err(Error::CrossCheck {
                    what,
                    a,
                    b: self.overlap,
                });
            }
        }
        Ok(())
    }
}

/// `D = d - sum_jk Tr(X_j Y_k X_j Y_k)` with the operator products formed explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraicIncompatibility {
    pub d_measure: f64,
    /// `D / (d - 1)`
    pub m_measure: f64,
}

/// Builds the table of products `X_j Y_k` and evaluates `D` from traces of
/// their squares, then checks `D/(d-1)` against the overlap form to `1e-12`.
pub fn algebraic_incompatibility(
    first: &ObservableBasis,
    second: &ObservableBasis,
) -> Result<AlgebraicIncompatibility> {
    if first.dim() != second.dim() {
        return Err(Error::DimensionMismatch {
            expected: first.dim(),
            found: second.dim(),
        });
    }
    let d = first.dim();
    let xs = first.projectors();
    let ys = second.projectors();
    let products: Vec<Vec<CMatrix>> = xs.iter().map(|x| ys.iter().map(|y| x * y).collect()).collect();
    let sum: f64 = products.iter().flatten().map(|xy| linalg::trace(&(xy * xy)).re).sum();
    let d_measure = d as f64 - sum;
    let m_measure = d_measure / (d as f64 - 1.0);
    let reference = measurement_incompatibility(first, second)?;
    if (m_measure - reference).abs() > 1e-12 {
        return Err(Error::CrossCheck {
            what: "algebraic form D/(d-1)",
            a: m_measure,
            b: reference,
        });
    }
    Ok(AlgebraicIncompatibility { d_measure, m_measure })
}

/// Hilbert-Schmidt norm of `[X, Y]` with the observables built from their eigenvalues.
pub fn commutator_norm(first: &ObservableBasis, second: &ObservableBasis) -> Result<f64> {
    if first.dim() != second.dim() {
        return Err(Error::DimensionMismatch {
            expected: first.dim(),
            found: second.dim(),
        });
    }
    Ok(hs_norm(&linalg::commutator(&first.observable(), &second.observable())))
}

/// Commuting observables are checked first, then a maximally mixed `Phi_X(rho)`.
pub fn classify_context(ctx: &Context) -> Classification {
    let commutator = commutator_norm(&ctx.first, &ctx.second).expect("context dimensions are consistent");
    if commutator <= COMMUTATION_TOL {
        return Classification::FreeCommuting;
    }
    let phi_x = dephase(&ctx.state, &ctx.first).expect("context dimensions are consistent");
    let mixed = DensityMatrix::maximally_mixed(ctx.dim());
    if hs_norm(&(phi_x.matrix() - mixed.matrix())) <= COMMUTATION_TOL {
        Classification::FreeZeroInfo
    } else {
        Classification::Resourceful
    }
}

pub fn report(ctx: &Context) -> IncompatibilityReport {
    let (i_initial, i_final) = initial_and_final_information(ctx);
    let ratio = leakage_ratio(ctx).ok();
    IncompatibilityReport {
        i_context: i_initial - i_final,
        i_initial,
        i_final,
        ratio,
        m_measurement: measurement_incompatibility(&ctx.first, &ctx.second).expect("context dimensions are consistent"),
        classification: classify_context(ctx),
    }
}

/// Checks that `channel` is a free operation for the context's observables:
/// unital, trace preserving, and either commuting with both `Phi_X` and
/// `Phi_YX`, or absorbed by them (`Phi_X o G = Phi_X` and `Phi_YX o G = Phi_YX`).
/// Both conditions are tested on every matrix unit.
pub fn validate_free_operation(
    channel: &KrausChannel,
    first: &ObservableBasis,
    second: &ObservableBasis,
) -> Result<()> {
    let d = first.dim();
    if channel.dim() != d || second.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: channel.dim(),
        });
    }
    channel.validate_trace_preserving(CHANNEL_TOL)?;
    channel.validate_unital(CHANNEL_TOL)?;

    let phi_x = KrausChannel::dephasing(first);
    let phi_y = KrausChannel::dephasing(second);
    let phi_yx = |m: &CMatrix| phi_y.apply(&phi_x.apply(m));

    let mut commute_x: f64 = 0.0;
    let mut commute_yx: f64 = 0.0;
    let mut absorb_x: f64 = 0.0;
    let mut absorb_yx: f64 = 0.0;
    for a in 0..d {
        for b in 0..d {
            let mut e = CMatrix::zeros(d, d);
            e[(a, b)] = linalg::ONE;
            let ge = channel.apply(&e);
            let x_ge = phi_x.apply(&ge);
            let yx_ge = phi_yx(&ge);
            let x_e = phi_x.apply(&e);
            let yx_e = phi_yx(&e);
            commute_x = commute_x.max(max_abs_diff(&x_ge, &channel.apply(&x_e)));
            commute_yx = commute_yx.max(max_abs_diff(&yx_ge, &channel.apply(&yx_e)));
            absorb_x = absorb_x.max(max_abs_diff(&x_ge, &x_e));
            absorb_yx = absorb_yx.max(max_abs_diff(&yx_ge, &yx_e));
        }
    }
    let commutes = commute_x <= FREE_OPERATION_TOL && commute_yx <= FREE_OPERATION_TOL;
    let absorbed = absorb_x <= FREE_OPERATION_TOL && absorb_yx <= FREE_OPERATION_TOL;
    if commutes || absorbed {
        return Ok(());
    }
    if commute_x > FREE_OPERATION_TOL {
        Err(Error::NotCommuting {
            map: "Phi_X",
            deviation: commute_x,
        })
    } else {
        Err(Error::NotCommuting {
            map: "Phi_YX",
            deviation: commute_yx,
        })
    }
}

/// Context incompatibility before and after a free operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityOutcome {
    pub before: f64,
    pub after: f64,
}

/// Validates `channel` with [`validate_free_operation`], applies it to the
/// state, and confirms the measure did not grow.
pub fn monotonicity_check(ctx: &Context, channel: &KrausChannel) -> Result<MonotonicityOutcome> {
    validate_free_operation(channel, &ctx.first, &ctx.second)?;
    let before = context_incompatibility(ctx);
    let after = context_incompatibility(&ctx.with_state(channel.apply_state(&ctx.state)?)?);
    if after > before + MONOTONICITY_SLACK {
        return Err(Error::MonotonicityViolated { before, after });
    }
    Ok(MonotonicityOutcome { before, after })
}
