//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors raised by state construction and the numerical pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {n} is invalid: {reason}")]
    InvalidQubitCount { n: usize, reason: &'static str },

    #[error("degeneracy index k={k} out of range for n={n} (need 1 <= k <= n/2)")]
    InvalidDegeneracyIndex { n: usize, k: usize },

    #[error("second spinor component is zero; the state degenerates to the fully separable class")]
    DegenerateSpinor,

    #[error("spinor components are not normalized: |c0|^2 + |c1|^2 = {norm_sq}")]
    SpinorNotNormalized { norm_sq: f64 },

    #[error("state vector is not normalized: squared norm = {norm_sq}")]
    StateNotNormalized { norm_sq: f64 },

    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { got: usize, expected: usize },

    #[error("theta = {theta} outside the admissible interval [{lo}, {hi}]")]
    InvalidTheta { theta: f64, lo: f64, hi: f64 },

    #[error("distinct-spinor count r={r} out of range for n={n} (need 1 <= r <= n)")]
    InvalidSpinorCount { n: usize, r: usize },

    #[error("qubit index {index} out of range 1..={n}")]
    QubitIndexOutOfRange { index: usize, n: usize },

    #[error("duplicate qubit index {index} in kept-subsystem list")]
    DuplicateQubitIndex { index: usize },

    #[error("kept-subsystem list has {got} indices, expected 1 or 2")]
    InvalidKeepCount { got: usize },

    #[error("expanding {n} qubits exceeds the {cap}-qubit amplitude cap")]
    QubitCapExceeded { n: usize, cap: usize },

    #[error("matrix has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("matrix is not Hermitian: max |M - M^dagger| entry = {deviation}")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace {trace} deviates from 1 beyond tolerance")]
    TraceNotOne { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("product spectrum has eigenvalue {value} below tolerance; the second factor is not a valid spin flip of a physical state")]
    InvalidProductSpectrum { value: f64 },

    #[error("measure value {value} for {what} falls outside [0, 1]")]
    MeasureOutOfRange { what: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
