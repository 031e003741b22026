//! Dense density-matrix machinery: partial trace, closed-form W-class
//! marginals, partial transpose, spin flip, Hermitian spectra, trace norm.
//!
//! Matrices are small (2x2 and 4x4 for marginals, up to 2^N x 2^N for the
//! brute-force pipeline) and stored dense. Eigensolves and singular values
//! are delegated to nalgebra; all results here are plain sorted `f64` lists.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symstate::NORM_TOL;

/// Entrywise tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on |trace - 1| for density matrices.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues above this are accepted silently; below it a warning is logged.
pub const PSD_WARN_FLOOR: f64 = -1e-10;
/// Eigenvalues below this reject the matrix outright.
pub const PSD_ERROR_FLOOR: f64 = -1e-8;
/// Slightly negative spectrum values in [-EIG_CLIP, 0) are clipped to zero
/// before square roots.
pub const EIG_CLIP: f64 = 1e-10;

/// A pure N-qubit state as a full 2^N amplitude vector.
///
/// Qubit `q` (1-based) occupies bit `n - q` of the basis index, matching the
/// convention fixed in [`crate::symstate`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureStateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl PureStateVector {
    pub fn new(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidQubitCount {
                n: 0,
                reason: "state vectors need at least 1 qubit",
            });
        }
        let dim = 1usize << n_qubits;
        if amps.len() != dim {
            return Err(Error::CoefficientLength {
                got: amps.len(),
                expected: dim,
            });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::StateNotNormalized { norm_sq });
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Rank-one projector |psi><psi| as a dense matrix.
    pub fn projector(&self) -> DMatrix<Complex64> {
        let dim = self.amps.len();
        DMatrix::from_fn(dim, dim, |i, j| self.amps[i] * self.amps[j].conj())
    }
}

fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// A one- or two-qubit density matrix: Hermitian, unit trace, and positive
/// semidefinite up to numerical noise.
///
/// Positivity is a soft invariant: eigenvalues down to [`PSD_WARN_FLOOR`] pass
/// silently, values between the warn and error floors log a warning, and
/// anything below [`PSD_ERROR_FLOOR`] is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_matrix(mat: DMatrix<Complex64>) -> Result<Self> {
        let dim = mat.nrows();
        if mat.ncols() != dim || (dim != 2 && dim != 4) {
            return Err(Error::DimensionMismatch {
                got: dim.max(mat.ncols()),
                expected: 4,
            });
        }
        let defect = hermiticity_defect(&mat);
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: defect });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        let min_eig = mat
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < PSD_ERROR_FLOOR {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min_eig,
            });
        }
        if min_eig < PSD_WARN_FLOOR {
            log::warn!("density matrix min eigenvalue {min_eig:e} below {PSD_WARN_FLOOR:e}");
        }
        Ok(Self { mat })
    }

    /// Projector onto a pure two-qubit state, as a density matrix.
    pub fn from_pure(amps: &[Complex64]) -> Result<Self> {
        let psi = PureStateVector::new(2, amps.to_vec())?;
        Self::from_matrix(psi.projector())
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn trace_real(&self) -> f64 {
        self.mat.trace().re
    }

    /// Determinant; real for Hermitian input.
    pub fn determinant(&self) -> f64 {
        self.mat.determinant().re
    }

    /// Hermitian square root, clipping slightly negative eigenvalues to zero.
    pub(crate) fn sqrt_psd(&self) -> DMatrix<Complex64> {
        let eig = self.mat.clone().symmetric_eigen();
        let roots: DVector<Complex64> = eig
            .eigenvalues
            .map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
        &eig.eigenvectors * DMatrix::from_diagonal(&roots) * eig.eigenvectors.adjoint()
    }
}

/// A Hermitian matrix of arbitrary dimension; not necessarily unit-trace or
/// positive (holds partial transposes and spin-flipped factors).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    mat: DMatrix<Complex64>,
}

impl HermitianMatrix {
    pub fn from_matrix(mat: DMatrix<Complex64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                got: mat.ncols(),
                expected: mat.nrows(),
            });
        }
        let defect = hermiticity_defect(&mat);
        if defect > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: defect });
        }
        Ok(Self { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    pub fn trace_real(&self) -> f64 {
        self.mat.trace().re
    }
}

impl From<DensityMatrix> for HermitianMatrix {
    fn from(rho: DensityMatrix) -> Self {
        Self { mat: rho.mat }
    }
}

/// Reduced density matrix of the kept qubits (1 or 2 of them, 1-based).
///
/// The first listed kept qubit becomes the high bit of the reduced index, so
/// a two-qubit result uses the basis order {00, 01, 10, 11}.
pub fn partial_trace(psi: &PureStateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let n = psi.n_qubits();
    if keep.is_empty() || keep.len() > 2 {
        return Err(Error::InvalidKeepCount { got: keep.len() });
    }
    for (i, &q) in keep.iter().enumerate() {
        if q == 0 || q > n {
            return Err(Error::QubitIndexOutOfRange { index: q, n });
        }
        if keep[..i].contains(&q) {
            return Err(Error::DuplicateQubitIndex { index: q });
        }
    }
    let m = keep.len();
    let kd = 1usize << m;
    let rest: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).collect();

    // Kept-pattern bit masks in the full index, high bit = first kept qubit.
    let kept_full: Vec<usize> = (0..kd)
        .map(|i| {
            keep.iter()
                .enumerate()
                .filter(|(bi, _)| (i >> (m - 1 - bi)) & 1 == 1)
                .map(|(_, &q)| 1usize << (n - q))
                .sum()
        })
        .collect();

    let mut mat = DMatrix::<Complex64>::zeros(kd, kd);
    for e in 0..1usize << rest.len() {
        let mut base = 0usize;
        for (bi, &q) in rest.iter().enumerate() {
            if (e >> bi) & 1 == 1 {
                base |= 1usize << (n - q);
            }
        }
        for i in 0..kd {
            let ai = psi.amps()[base | kept_full[i]];
            if ai == Complex64::ZERO {
                continue;
            }
            for j in 0..kd {
                mat[(i, j)] += ai * psi.amps()[base | kept_full[j]].conj();
            }
        }
    }
    DensityMatrix::from_matrix(mat)
}

/// Closed-form two-qubit marginal of the canonical W-class state, valid for
/// n >= 3 (at n = 2 the pair marginal is the pure state itself).
pub fn closed_form_rho2(n: usize, theta: f64) -> Result<DensityMatrix> {
    if n < 3 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "the two-qubit marginal closed form needs at least 3 qubits",
        });
    }
    let nf = n as f64;
    let (s, c) = theta.sin_cos();
    let rn = nf.sqrt();
    let f = 1.0 / (2.0 * nf);
    let e = |x: f64| Complex64::new(f * x, 0.0);
    let mat = DMatrix::from_row_slice(
        4,
        4,
        &[
            e(2.0 * (nf - 1.0 + c)),
            e(rn * s),
            e(rn * s),
            e(0.0),
            e(rn * s),
            e(1.0 - c),
            e(1.0 - c),
            e(0.0),
            e(rn * s),
            e(1.0 - c),
            e(1.0 - c),
            e(0.0),
            e(0.0),
            e(0.0),
            e(0.0),
            e(0.0),
        ],
    );
    DensityMatrix::from_matrix(mat)
}

/// Closed-form single-qubit marginal of the canonical W-class state.
pub fn closed_form_rho1(n: usize, theta: f64) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::InvalidQubitCount {
            n,
            reason: "the one-qubit marginal closed form needs at least 2 qubits",
        });
    }
    let nf = n as f64;
    let (s, c) = theta.sin_cos();
    let rn = nf.sqrt();
    let f = 1.0 / (2.0 * nf);
    let e = |x: f64| Complex64::new(f * x, 0.0);
    let mat = DMatrix::from_row_slice(
        2,
        2,
        &[e(2.0 * nf - 1.0 + c), e(rn * s), e(rn * s), e(1.0 - c)],
    );
    DensityMatrix::from_matrix(mat)
}

fn partial_transpose_mat(mat: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    // Transpose the second qubit's indices: [(i1 i2),(j1 j2)] -> [(i1 j2),(j1 i2)].
    DMatrix::from_fn(4, 4, |a, b| mat[((a & 2) | (b & 1), (b & 2) | (a & 1))])
}

/// Partial transpose of a two-qubit density matrix, taken on the second qubit.
pub fn partial_transpose(rho: &DensityMatrix) -> Result<HermitianMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            got: rho.dim(),
            expected: 4,
        });
    }
    HermitianMatrix::from_matrix(partial_transpose_mat(rho.matrix()))
}

/// Partial transpose on a 4x4 Hermitian matrix; an exact involution.
pub fn partial_transpose_herm(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            got: m.dim(),
            expected: 4,
        });
    }
    HermitianMatrix::from_matrix(partial_transpose_mat(m.matrix()))
}

/// The two-qubit spin-flip operator sigma_y (x) sigma_y, which is real in the
/// computational basis.
pub(crate) fn spin_flip_operator() -> DMatrix<Complex64> {
    let e = |x: f64| Complex64::new(x, 0.0);
    DMatrix::from_row_slice(
        4,
        4,
        &[
            e(0.0),
            e(0.0),
            e(0.0),
            e(-1.0),
            e(0.0),
            e(0.0),
            e(1.0),
            e(0.0),
            e(0.0),
            e(1.0),
            e(0.0),
            e(0.0),
            e(-1.0),
            e(0.0),
            e(0.0),
            e(0.0),
        ],
    )
}

/// Spin-flipped density matrix (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
pub fn spin_flip(rho: &DensityMatrix) -> Result<HermitianMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            got: rho.dim(),
            expected: 4,
        });
    }
    let yy = spin_flip_operator();
    HermitianMatrix::from_matrix(&yy * rho.matrix().conjugate() * &yy)
}

/// Real eigenvalues of a Hermitian matrix, sorted descending.
///
/// Indices whose row and column are identically zero are deflated first;
/// they carry exact zero eigenvalues and, left in place, the heavily
/// rank-deficient matrices produced by partially transposed projectors can
/// push the QR iteration into non-finite values. If the QR path still fails
/// on the deflated block, a cyclic Jacobi solve takes over.
pub fn hermitian_eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    let mat = m.matrix();
    let dim = mat.nrows();
    let live: Vec<usize> = (0..dim)
        .filter(|&i| {
            (0..dim).any(|j| mat[(i, j)] != Complex64::ZERO || mat[(j, i)] != Complex64::ZERO)
        })
        .collect();
    let mut vals = vec![0.0f64; dim - live.len()];
    if !live.is_empty() {
        let sub = DMatrix::from_fn(live.len(), live.len(), |a, b| mat[(live[a], live[b])]);
        let eig = sub.clone().symmetric_eigen();
        if eig.eigenvalues.iter().all(|v| v.is_finite()) {
            vals.extend(eig.eigenvalues.iter());
        } else {
            vals.extend(jacobi_hermitian_eigenvalues(&sub));
        }
    }
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    vals
}

/// Cyclic Jacobi eigenvalue iteration for Hermitian matrices. Slower than
/// the QR path but unconditionally convergent, including on spectra with
/// large degenerate clusters.
fn jacobi_hermitian_eigenvalues(mat: &DMatrix<Complex64>) -> Vec<f64> {
    let n = mat.nrows();
    let mut a = mat.clone();
    let scale = a.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1.0);
    for _ in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let target = a[(p, q)];
                let b = target.norm();
                if b <= 1e-300 {
                    continue;
                }
                let phase = target / b;
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let tau = (gamma - alpha) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Unitary restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = phase.conj() * -s;
                let u_qq = phase.conj() * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let new_kp = akp * u_pp + akq * u_qp;
                    let new_kq = akp * u_pq + akq * u_qq;
                    a[(k, p)] = new_kp;
                    a[(p, k)] = new_kp.conj();
                    a[(k, q)] = new_kq;
                    a[(q, k)] = new_kq.conj();
                }
                a[(p, p)] = Complex64::new(c * c * alpha + s * s * gamma - 2.0 * c * s * b, 0.0);
                a[(q, q)] = Complex64::new(s * s * alpha + c * c * gamma + 2.0 * c * s * b, 0.0);
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
            }
        }
    }
    (0..n).map(|i| a[(i, i)].re).collect()
}

/// Eigenvalues of the product a * b, sorted descending.
///
/// The product of a PSD matrix with a Hermitian one is similar to the
/// Hermitian matrix sqrt(a) * b * sqrt(a), so the spectrum is computed from
/// that similar form and is real by construction. Values in [-EIG_CLIP, 0)
/// are clipped to zero; anything below -EIG_CLIP signals that `b` was not a
/// valid spin flip of a physical state and is rejected.
pub fn product_eigenvalues(a: &DensityMatrix, b: &HermitianMatrix) -> Result<Vec<f64>> {
    if a.dim() != 4 {
        return Err(Error::DimensionMismatch {
            got: a.dim(),
            expected: 4,
        });
    }
    if b.dim() != 4 {
        return Err(Error::DimensionMismatch {
            got: b.dim(),
            expected: 4,
        });
    }
    let s = a.sqrt_psd();
    let m = &s * b.matrix() * &s;
    // Kill roundoff asymmetry before the Hermitian solve.
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut vals: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    for v in vals.iter_mut() {
        if *v < -EIG_CLIP {
            return Err(Error::InvalidProductSpectrum { value: *v });
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(vals)
}

/// Trace norm of a Hermitian matrix: the sum of absolute eigenvalues.
pub fn trace_norm(m: &HermitianMatrix) -> f64 {
    hermitian_eigenvalues(m).iter().map(|v| v.abs()).sum()
}
