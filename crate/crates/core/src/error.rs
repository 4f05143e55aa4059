// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports. Construction errors name the violated invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: {1}")]
    InvalidDimension(usize, &'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian: max |A - A^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is not unit: |Tr - 1| = {deviation:e}")]
    TraceNotUnit { deviation: f64 },

    #[error("not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("basis vectors are not orthonormal: max |G - 1| = {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("degenerate eigenvalues: {a} and {b}")]
    Degenerate { a: f64, b: f64 },

    #[error("expected {expected} eigenvalues, found {found}")]
    EigenvalueCount { expected: usize, found: usize },

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("zero information: the X-dephased state is maximally mixed, ratio undefined")]
    ZeroInformation,

    #[error("Bloch vector norm {norm} exceeds 1")]
    OutsideBlochBall { norm: f64 },

    #[error("Bloch vector does not describe a state: smallest eigenvalue {min_eigenvalue:e}")]
    Unphysical { min_eigenvalue: f64 },

    #[error("{name} is not a unit vector (norm {norm})")]
    NotUnitVector { name: &'static str, norm: f64 },

    #[error("channel has no Kraus operators")]
    EmptyChannel,

    #[error("channel is not unital: max |sum K K^dagger - 1| = {deviation:e}")]
    NotUnital { deviation: f64 },

    #[error("channel is not trace preserving: max |sum K^dagger K - 1| = {deviation:e}")]
    NotTracePreserving { deviation: f64 },

    #[error("channel does not commute with {map}: deviation {deviation:e}")]
    NotCommuting { map: &'static str, deviation: f64 },

    #[error("incompatibility increased under a free operation: {before} -> {after}")]
    MonotonicityViolated { before: f64, after: f64 },

    #[error("cross-check failed for {what}: {a} vs {b}")]
    CrossCheck { what: &'static str, a: f64, b: f64 },

    #[error("epsilon {epsilon} outside the small-noise expansion domain (max {max})")]
    ExpansionDomain { epsilon: f64, max: f64 },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
}
