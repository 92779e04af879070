//! Small dense quantum objects and fidelity measures.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Physical density matrices must have unit trace within this tolerance.
pub const TRACE_TOL: f64 = 1e-9;
/// Eigenvalues in `[-POSITIVITY_TOL, 0)` are treated as integrator noise.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// A state vector. Not necessarily normalized: no-jump evolution produces
/// sub-normalized kets.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket(DVector<C64>);

impl Ket {
    pub fn new(amplitudes: DVector<C64>) -> Self {
        Ket(amplitudes)
    }

    pub fn from_slice(amplitudes: &[C64]) -> Self {
        Ket(DVector::from_column_slice(amplitudes))
    }

    /// Real amplitudes, convenient for basis superpositions.
    pub fn from_real(amplitudes: &[f64]) -> Self {
        Ket(DVector::from_iterator(
            amplitudes.len(),
            amplitudes.iter().map(|&a| C64::new(a, 0.0)),
        ))
    }

    /// Computational basis vector `index` in a space of dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Ket(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DVector<C64> {
        self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= 1e-12
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        Ket(self.0.unscale(n))
    }

    /// `<self|other>`
    pub fn inner(&self, other: &Ket) -> C64 {
        self.0.dotc(&other.0)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

/// A square complex matrix acting on the state space: Hamiltonians, gates,
/// propagators. Hermiticity is checked on demand only.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator(DMatrix<C64>);

impl Operator {
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        Ok(Operator(entries))
    }

    /// Builds an operator from a row-major list of real entries.
    pub fn from_real_rows(dim: usize, rows: &[f64]) -> Self {
        assert_eq!(rows.len(), dim * dim);
        Operator(DMatrix::from_row_iterator(
            dim,
            dim,
            rows.iter().map(|&x| C64::new(x, 0.0)),
        ))
    }

    pub fn identity(dim: usize) -> Self {
        Operator(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Operator(DMatrix::zeros(dim, dim))
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        Operator(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn matrix_mut(&mut self) -> &mut DMatrix<C64> {
        &mut self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Operator(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        max_abs_diff(&self.0, &self.0.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let n = self.dim();
        max_abs_diff(&(self.0.adjoint() * &self.0), &DMatrix::identity(n, n)) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }

    pub fn apply(&self, ket: &Ket) -> Result<Ket> {
        check_dim(self.dim(), ket.dim())?;
        Ok(Ket(&self.0 * &ket.0))
    }

    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        check_dim(self.dim(), other.dim())?;
        Ok(Operator(&self.0 * &other.0))
    }

    /// `A rho A^dagger`
    pub fn conjugate(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        check_dim(self.dim(), rho.dim())?;
        Ok(DensityMatrix(&self.0 * &rho.0 * self.0.adjoint()))
    }
}

/// A density matrix. The constructor only enforces squareness; physical
/// validity (Hermitian, unit trace, positive) is checked by
/// [`DensityMatrix::check_physical`] because sub-normalized states are
/// legitimate intermediate objects.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(DMatrix<C64>);

impl DensityMatrix {
    pub fn new(entries: DMatrix<C64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        Ok(DensityMatrix(entries))
    }

    /// Projector onto a computational basis state.
    pub fn basis(dim: usize, index: usize) -> Self {
        ket_to_density(&Ket::basis(dim, index))
    }

    /// Maximally mixed state `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(DMatrix::identity(dim, dim).unscale(dim as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        max_abs_diff(&self.0, &self.0.adjoint()) <= tol
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigen(&self.0)
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Hermitian within 1e-12, unit trace within 1e-9, eigenvalues >= -1e-10.
    pub fn check_physical(&self) -> Result<()> {
        if !self.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::InvariantViolation(
                "density matrix is not Hermitian".into(),
            ));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvariantViolation(format!(
                "density matrix trace {tr} differs from 1"
            )));
        }
        let min = self.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::NotPositive { eigenvalue: min });
        }
        Ok(())
    }
}

/// Outer product `|k><k|`; the trace equals the squared norm of `k`.
pub fn ket_to_density(k: &Ket) -> DensityMatrix {
    DensityMatrix(&k.0 * k.0.adjoint())
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(target) actual sqrt(target)))^2`.
///
/// A pure target reduces exactly to `<psi|actual|psi>`. Otherwise the trace
/// is evaluated as the sum of singular values of `sqrt(actual) sqrt(target)`,
/// which stays accurate when the product has (numerically) zero
/// eigenvalues; taking `sqrt` of those would turn round-off of 1e-17 into
/// errors of 1e-9.
pub fn state_fidelity(target: &DensityMatrix, actual: &DensityMatrix) -> Result<f64> {
    check_dim(target.dim(), actual.dim())?;
    if !target.is_hermitian(1e-10) || !actual.is_hermitian(1e-10) {
        return Err(Error::InvalidArgument("fidelity inputs must be Hermitian".into()));
    }
    let tr = target.trace();
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvalidArgument(format!(
            "fidelity target must have unit trace, found {tr}"
        )));
    }

    let target_eig = hermitian_eigen(&target.0);
    let target_w = clamped_spectrum(&target_eig.eigenvalues)?;
    let actual_eig = hermitian_eigen(&actual.0);
    let actual_w = clamped_spectrum(&actual_eig.eigenvalues)?;

    let support: Vec<usize> = (0..target_w.len()).filter(|&k| target_w[k] > 0.0).collect();
    let root_trace = if support.len() == 1 {
        let v = target_eig.eigenvectors.column(support[0]);
        let overlap = v.dotc(&(&actual.0 * v)).re;
        (target_w[support[0]] * overlap).max(0.0).sqrt()
    } else {
        let a = spectral_sqrt(&actual_eig.eigenvectors, &actual_w);
        let t = spectral_sqrt(&target_eig.eigenvectors, &target_w);
        (a * t).singular_values().sum()
    };
    Ok((root_trace * root_trace).clamp(0.0, 1.0))
}

/// Eigenvalues with values below `-POSITIVITY_TOL` rejected and round-off
/// (below `1e-12` of the largest) set to zero.
fn clamped_spectrum(w: &DVector<f64>) -> Result<Vec<f64>> {
    let max = w.iter().copied().fold(0.0, f64::max);
    w.iter()
        .map(|&x| {
            let x = clamp_eigenvalue(x)?;
            Ok(if x <= 1e-12 * max { 0.0 } else { x })
        })
        .collect()
}

fn spectral_sqrt(vectors: &DMatrix<C64>, w: &[f64]) -> DMatrix<C64> {
    let mut scaled = vectors.clone();
    for (k, &x) in w.iter().enumerate() {
        scaled.column_mut(k).scale_mut(x.sqrt());
    }
    scaled * vectors.adjoint()
}

/// Gate fidelity `(1/N) max_phi |Tr(e^{i phi} U_r^dagger U_i)|`. The modulus
/// of the trace already realizes the optimal global phase.
pub fn gate_fidelity(real_gate: &Operator, ideal_gate: &Operator) -> Result<f64> {
    check_dim(ideal_gate.dim(), real_gate.dim())?;
    let n = ideal_gate.dim() as f64;
    let overlap = (real_gate.0.adjoint() * &ideal_gate.0).trace();
    Ok(overlap.norm() / n)
}

fn clamp_eigenvalue(w: f64) -> Result<f64> {
    if w < -POSITIVITY_TOL {
        Err(Error::NotPositive { eigenvalue: w })
    } else {
        Ok(w.max(0.0))
    }
}

/// Eigendecomposition of the Hermitian part of `m`.
pub(crate) fn hermitian_eigen(m: &DMatrix<C64>) -> SymmetricEigen<C64, nalgebra::Dyn> {
    let h = (m + m.adjoint()).unscale(2.0);
    SymmetricEigen::new(h)
}

pub(crate) fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}
