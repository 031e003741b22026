//! Construction of permutation-symmetric N-qubit pure states.
//!
//! States are stored in the Dicke basis: entry `r` of the coefficient vector
//! is the physical amplitude of the Dicke level with exactly `r` excitations
//! (the binomial weight is absorbed into the stored coefficient, so the norm
//! check is a plain Euclidean norm). The W-class is the one-parameter family
//! with support on levels 0 and 1 only.
//!
//! Basis-index convention, used consistently across the crate: qubit `q`
//! (1-based) maps to bit `n - q` of the computational-basis index, so qubit 1
//! is the most significant bit.

use num_complex::Complex64;
use std::f64::consts::TAU;
use std::fmt;

use crate::densmat::PureStateVector;
use crate::error::{Error, Result};

/// Tolerance for unit-norm checks on constructed states and spinors.
pub const NORM_TOL: f64 = 1e-12;

/// Default cap on the qubit count when expanding to a full 2^N amplitude vector.
pub const DEFAULT_QUBIT_CAP: usize = 20;

/// Binomial coefficient C(n, r) as a float; exact for the qubit counts used here.
pub(crate) fn binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    let mut acc = 1.0f64;
    for i in 0..r {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// A single-qubit state, one of the constituent spinors of a symmetric state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    c0: Complex64,
    c1: Complex64,
}

impl Spinor {
    /// Builds a spinor from explicit amplitudes, enforcing unit norm.
    pub fn new(c0: Complex64, c1: Complex64) -> Result<Self> {
        let norm_sq = c0.norm_sqr() + c1.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::SpinorNotNormalized { norm_sq });
        }
        Ok(Self { c0, c1 })
    }

    /// Amplitude of |0>.
    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    /// Amplitude of |1>.
    pub fn c1(&self) -> Complex64 {
        self.c1
    }
}

/// Spinor from Bloch angles: c0 = cos(beta/2) e^{-i alpha/2}, c1 = sin(beta/2) e^{i alpha/2}.
///
/// Angles are taken modulo 2*pi.
pub fn make_spinor(alpha: f64, beta: f64) -> Spinor {
    let alpha = alpha.rem_euclid(TAU);
    let beta = beta.rem_euclid(TAU);
    let half_b = beta / 2.0;
    let c0 = Complex64::from_polar(half_b.cos(), -alpha / 2.0);
    let c1 = Complex64::from_polar(half_b.sin(), alpha / 2.0);
    Spinor { c0, c1 }
}

/// A permutation-invariant N-qubit pure state in the Dicke basis.
///
/// `dicke_coeffs[r]` is the amplitude of the Dicke level with `r` qubits in
/// |1>; the vector has length `n_qubits + 1` and unit Euclidean norm.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    n_qubits: usize,
    dicke_coeffs: Vec<Complex64>,
}

impl SymmetricState {
    /// Builds a state from explicit Dicke-level amplitudes.
    pub fn from_dicke_coeffs(n_qubits: usize, dicke_coeffs: Vec<Complex64>) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::InvalidQubitCount {
                n: n_qubits,
                reason: "symmetric states need at least 2 qubits",
            });
        }
        if dicke_coeffs.len() != n_qubits + 1 {
            return Err(Error::CoefficientLength {
                got: dicke_coeffs.len(),
                expected: n_qubits + 1,
            });
        }
        let norm_sq: f64 = dicke_coeffs.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::StateNotNormalized { norm_sq });
        }
        Ok(Self {
            n_qubits,
            dicke_coeffs,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dicke_coeffs(&self) -> &[Complex64] {
        &self.dicke_coeffs
    }

    /// True when all amplitude sits on a single product Dicke level (all
    /// qubits |0> or all qubits |1>), i.e. the state is fully separable.
    ///
    /// This only detects the product end points reachable by the constructors
    /// in this module; it is not a general separability test.
    pub fn is_separable_product(&self) -> bool {
        let n = self.n_qubits;
        let weight_edge = self.dicke_coeffs[0].norm_sqr() + self.dicke_coeffs[n].norm_sqr();
        let interior_zero = self.dicke_coeffs[1..n].iter().all(|c| c.norm() <= NORM_TOL);
        let single_level =
            self.dicke_coeffs[0].norm() <= NORM_TOL || self.dicke_coeffs[n].norm() <= NORM_TOL;
        (weight_edge - 1.0).abs() <= NORM_TOL && interior_zero && single_level
    }

    /// Expands the state into its full 2^N amplitude vector, with the default
    /// qubit cap bounding memory.
    pub fn to_full_vector(&self) -> Result<PureStateVector> {
        self.to_full_vector_with_cap(DEFAULT_QUBIT_CAP)
    }

    /// Full 2^N expansion with an explicit cap on the qubit count.
    ///
    /// Each Dicke level spreads its amplitude uniformly over all basis states
    /// of the matching Hamming weight.
    pub fn to_full_vector_with_cap(&self, cap: usize) -> Result<PureStateVector> {
        let n = self.n_qubits;
        if n > cap {
            return Err(Error::QubitCapExceeded { n, cap });
        }
        let per_level: Vec<Complex64> = (0..=n)
            .map(|r| self.dicke_coeffs[r] / binomial(n, r).sqrt())
            .collect();
        let dim = 1usize << n;
        let mut amps = vec![Complex64::ZERO; dim];
        for (idx, amp) in amps.iter_mut().enumerate() {
            *amp = per_level[idx.count_ones() as usize];
        }
        PureStateVector::new(n, amps)
    }
}

/// Parameters of the canonical one-parameter W-class form.
///
/// theta is restricted to (0, 2*pi]; theta = 2*pi is the separable end point
/// (the excitation amplitude vanishes there).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WClassParams {
    n_qubits: usize,
    theta: f64,
}

impl WClassParams {
    pub fn new(n_qubits: usize, theta: f64) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::InvalidQubitCount {
                n: n_qubits,
                reason: "W-class states need at least 2 qubits",
            });
        }
        if !(theta > 0.0 && theta <= TAU) {
            return Err(Error::InvalidTheta {
                theta,
                lo: 0.0,
                hi: TAU,
            });
        }
        Ok(Self { n_qubits, theta })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// True when the parametrized state is a product state.
    pub fn is_separable(&self) -> bool {
        (self.theta / 2.0).sin().abs() <= NORM_TOL
    }
}

/// One SLOCC degeneracy configuration: the multiset of multiplicities of the
/// distinct spinors, stored in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyConfig {
    parts: Vec<usize>,
}

impl DegeneracyConfig {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidSpinorCount {
                n: parts.iter().sum(),
                r: parts.len(),
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpinorCount {
                n: parts.iter().sum(),
                r: parts.len(),
            });
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total_qubits(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn distinct_spinors(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for DegeneracyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// (n - r)! / ((n - k)! (k - r)!) as a float, for r <= k <= n.
fn multiplicity_ratio(n: usize, k: usize, r: usize) -> f64 {
    let mut acc = 1.0f64;
    for j in (n - k + 1)..=(n - r) {
        acc *= j as f64;
    }
    for j in 1..=(k - r) {
        acc /= j as f64;
    }
    acc
}

/// Symmetric state with two distinct spinors of multiplicities (n-k, k).
///
/// The second spinor is `d0 |0> + d1 |1>` after rotating the first onto |0>.
/// The overall normalization is fixed numerically from the unit-norm
/// constraint, and the global phase is fixed by making the lowest non-zero
/// Dicke coefficient real non-negative.
pub fn dnk_state(n: usize, k: usize, d0: Complex64, d1: Complex64) -> Result<SymmetricState> {
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "two-spinor states need at least 2 qubits",
        });
    }
    if k == 0 || k > n / 2 {
        return Err(Error::InvalidDegeneracyIndex { n, k });
    }
    let norm_sq = d0.norm_sqr() + d1.norm_sqr();
    if (norm_sq - 1.0).abs() > NORM_TOL {
        return Err(Error::SpinorNotNormalized { norm_sq });
    }
    if d1.norm() <= NORM_TOL {
        return Err(Error::DegenerateSpinor);
    }

    let mut coeffs = vec![Complex64::ZERO; n + 1];
    for (r, c) in coeffs.iter_mut().enumerate().take(k + 1) {
        let weight = binomial(n, r).sqrt() * multiplicity_ratio(n, k, r);
        *c = d0.powu((k - r) as u32) * d1.powu(r as u32) * weight;
    }
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in coeffs.iter_mut() {
        *c /= norm;
    }
    // Global phase convention: first non-zero coefficient real non-negative.
    if let Some(pivot) = coeffs.iter().find(|c| c.norm() > NORM_TOL) {
        let phase = pivot.conj() / pivot.norm();
        for c in coeffs.iter_mut() {
            *c *= phase;
        }
    }
    SymmetricState::from_dicke_coeffs(n, coeffs)
}

/// Canonical W-class state: cos(theta/2) on Dicke level 0, sin(theta/2) on level 1.
///
/// theta = 0 is accepted here (the constructor degenerates to the product
/// state |0...0>); classification contexts reject it via [`WClassParams`].
pub fn wclass_state(n: usize, theta: f64) -> Result<SymmetricState> {
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "W-class states need at least 2 qubits",
        });
    }
    if !(0.0..=TAU).contains(&theta) {
        return Err(Error::InvalidTheta {
            theta,
            lo: 0.0,
            hi: TAU,
        });
    }
    let mut coeffs = vec![Complex64::ZERO; n + 1];
    coeffs[0] = Complex64::new((theta / 2.0).cos(), 0.0);
    coeffs[1] = Complex64::new((theta / 2.0).sin(), 0.0);
    SymmetricState::from_dicke_coeffs(n, coeffs)
}

/// Reduces a two-amplitude W-class form `a |0...0> + b |W-part>` to the single
/// angle theta = 2 atan2(|b|, |a|) in [0, pi], discarding global and relative
/// phases exactly as the defining local unitary does.
pub fn canonicalize_ab(a: Complex64, b: Complex64) -> f64 {
    2.0 * b.norm().atan2(a.norm())
}

/// All partitions of `n` into exactly `r` positive parts, each non-increasing,
/// listed in lexicographically descending order. One entry per SLOCC class
/// with `r` distinct spinors.
pub fn enumerate_slocc_configs(n: usize, r: usize) -> Result<Vec<DegeneracyConfig>> {
    if r == 0 || r > n {
        return Err(Error::InvalidSpinorCount { n, r });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(r);
    descend(n, r, n, &mut prefix, &mut out);
    Ok(out)
}

fn descend(
    n: usize,
    r: usize,
    max_part: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<DegeneracyConfig>,
) {
    if r == 1 {
        if n <= max_part {
            let mut parts = prefix.clone();
            parts.push(n);
            out.push(DegeneracyConfig { parts });
        }
        return;
    }
    // Remaining parts are at most `first`, so first >= ceil(n / r).
    let hi = max_part.min(n - (r - 1));
    let lo = n.div_ceil(r);
    for first in (lo..=hi).rev() {
        prefix.push(first);
        descend(n - first, r - 1, first, prefix, out);
        prefix.pop();
    }
}

/// Number of partitions of `n` into exactly `r` positive parts.
pub fn partition_count(n: usize, r: usize) -> Result<usize> {
    Ok(enumerate_slocc_configs(n, r)?.len())
}
