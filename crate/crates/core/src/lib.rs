//! Numerical toolkit for the entanglement monogamy of symmetric multi-qubit
//! pure states with two distinct constituent spinors (the W-class).
//!
//! The crate provides four layers:
//!
//! - [`symstate`]: construction of symmetric states in the Dicke basis, the
//!   canonical one-parameter W-class form, full 2^N expansion, and the
//!   enumeration of SLOCC degeneracy configurations.
//! - [`densmat`]: dense density-matrix machinery (partial trace, closed-form
//!   W-class marginals, partial transpose, spin flip, Hermitian spectra,
//!   trace norm).
//! - [`tangle`]: Wootters concurrence, negativity of the partial transpose in
//!   the doubled convention, and the monogamy tangles built from both.
//! - [`oracle`]: a brute-force verification pipeline that recomputes every
//!   closed-form quantity from raw amplitude vectors and reports
//!   machine-readable pass/fail outcomes.
//!
//! All operations are pure functions of their inputs and every type is
//! immutable after construction, so values can be shared freely across
//! threads.

pub mod densmat;
pub mod error;
pub mod oracle;
pub mod symstate;
pub mod tangle;

pub use densmat::{DensityMatrix, HermitianMatrix, PureStateVector};
pub use error::{Error, Result};
pub use oracle::{CheckResult, CheckSpec, VerificationCase, VerificationOutcome};
pub use symstate::{DegeneracyConfig, Spinor, SymmetricState, WClassParams};
pub use tangle::{MeasureKind, MeasureSet, TangleReport};
