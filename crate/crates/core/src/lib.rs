// SPDX-License-Identifier: Apache-2.0

//! Incompatibility measures for measurement contexts: a state together with
//! two nondegenerate observables, measured first in `X` and then in `Y`.
//!
//! The crate covers the state-space measures (context incompatibility,
//! leakage ratio, measurement incompatibility), their Bloch-space forms built
//! on generalized Gell-Mann generators, a dilation of the measurement with an
//! information ledger, noise and weak-measurement sweeps, and a numerical
//! search for mutually unbiased bases.
//!
//! ```
//! use qcontext_core::{context_incompatibility, measurement_incompatibility, Context, DensityMatrix, ObservableBasis};
//!
//! let x = ObservableBasis::computational(3);
//! let y = ObservableBasis::fourier(3);
//! let ctx = Context::new(DensityMatrix::pure(&x.vector(0))?, x, y)?;
//! assert!((context_incompatibility(&ctx) - 3f64.ln()).abs() < 1e-12);
//! assert!((measurement_incompatibility(&ctx.first, &ctx.second)? - 1.0).abs() < 1e-12);
//! # Ok::<(), qcontext_core::Error>(())
//! ```

pub mod bloch;
pub mod channel;
pub mod error;
pub mod incompatibility;
pub mod leakage;
pub mod linalg;
pub mod mub;
pub mod quantum;
pub mod random;

pub use bloch::{
    basis_to_bloch_frame, binary_entropy, bloch_to_state, geometric_context_incompatibility, geometric_leakage_ratio,
    geometric_measurement_incompatibility, qubit_measures, star, state_to_bloch, wedge, BlochVector, GeneratorSet,
    QubitMeasures,
};
pub use channel::KrausChannel;
pub use error::{Error, Result};
pub use incompatibility::{
    algebraic_incompatibility, classify_context, coherence_form, context_incompatibility, eigenstate_ratio,
    leakage_ratio, measurement_incompatibility, monotonicity_check, report, validate_free_operation,
    AlgebraicIncompatibility, Classification, IncompatibilityReport, MeasurementForms, MonotonicityOutcome,
};
pub use leakage::{
    apply_noise, default_epsilon_grid, dilate, lin_grid, log_grid, mass_model_context_incompat, noise_sweep,
    small_eps_expansion, stinespring_ledger, weak_measure, LedgerEntry, MassModel, NoiseSweepPoint,
    SmallNoiseExpansion,
};
pub use linalg::{CMatrix, CVector, C64};
pub use mub::{
    maximize_incompatibility, mub_certificate, parameterize_basis, MubCertificate, SearchConfig, SearchResult,
    TrajectoryPoint,
};
pub use quantum::{
    dephase, information, relative_entropy, sequential_dephase, sequential_distribution, transition_matrix, Context,
    DensityMatrix, ObservableBasis, ProbabilityVector,
};
