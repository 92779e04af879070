use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{DensityMatrix, Operator};

/// Jump operators attached to the three driven levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dissipator {
    /// Level projectors `sqrt(kappa_j) |j><j|`: loss of phase coherence with
    /// populations untouched.
    #[default]
    Dephasing,
    /// `sqrt(kappa_j) |00><j|`: population decay into the decoupled ground
    /// state. Not part of the reference model; four-level only.
    AmplitudeDamping,
}

/// Indices of `|01>, |10>, |11>` for a state space of dimension 3 or 4.
pub(crate) fn driven_levels(dim: usize) -> Result<[usize; 3]> {
    match dim {
        3 => Ok([0, 1, 2]),
        4 => Ok([1, 2, 3]),
        _ => Err(Error::InvalidArgument(format!(
            "dynamics support dimension 3 or 4, got {dim}"
        ))),
    }
}

fn jump_operators(dim: usize, rates: [f64; 3], kind: Dissipator) -> Result<Vec<DMatrix<C64>>> {
    let levels = driven_levels(dim)?;
    if kind == Dissipator::AmplitudeDamping && dim != 4 {
        return Err(Error::InvalidArgument(
            "amplitude damping needs the |00> level (dimension 4)".into(),
        ));
    }
    Ok(levels
        .iter()
        .zip(rates)
        .filter(|(_, k)| *k > 0.0)
        .map(|(&j, k)| {
            let mut c = DMatrix::zeros(dim, dim);
            let target = match kind {
                Dissipator::Dephasing => j,
                Dissipator::AmplitudeDamping => 0,
            };
            c[(target, j)] = C64::new(k.sqrt(), 0.0);
            c
        })
        .collect())
}

/// `-i[H, rho] + sum_j kappa_j (P_j rho P_j - {P_j, rho} / 2)` with level
/// projectors `P_j`. In dimension 4 the `|00>` row and column are left
/// alone by every term.
pub fn lindblad_rhs(rho: &DensityMatrix, h: &Operator, rates: [f64; 3]) -> Result<DensityMatrix> {
    lindblad_rhs_with(rho, h, rates, Dissipator::Dephasing)
}

pub fn lindblad_rhs_with(
    rho: &DensityMatrix,
    h: &Operator,
    rates: [f64; 3],
    kind: Dissipator,
) -> Result<DensityMatrix> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    let r = rho.matrix();
    let hm = h.matrix();
    let i = C64::new(0.0, 1.0);
    let mut out = (hm * r - r * hm) * (-i);
    for c in jump_operators(rho.dim(), rates, kind)? {
        let cd = c.adjoint();
        let cdc = &cd * &c;
        out += &c * r * &cd - (&cdc * r + r * &cdc) * C64::new(0.5, 0.0);
    }
    DensityMatrix::new(out)
}

/// Superoperator acting on the row-major vectorization `vec(rho)[i n + j]`.
pub fn liouvillian(h: &Operator, rates: [f64; 3], kind: Dissipator) -> Result<DMatrix<C64>> {
    let n = h.dim();
    let ident = DMatrix::<C64>::identity(n, n);
    let hm = h.matrix();
    let i = C64::new(0.0, 1.0);
    // vec(A rho B) = (A kron B^T) vec(rho)
    let mut l = (hm.kronecker(&ident) - ident.kronecker(&hm.transpose())) * (-i);
    for c in jump_operators(n, rates, kind)? {
        let cdc = c.adjoint() * &c;
        l += c.kronecker(&c.map(|z| z.conj()))
            - (cdc.kronecker(&ident) + ident.kronecker(&cdc.transpose())) * C64::new(0.5, 0.0);
    }
    Ok(l)
}

pub(crate) fn vectorize(rho: &DMatrix<C64>) -> Vec<C64> {
    let n = rho.nrows();
    (0..n * n).map(|k| rho[(k / n, k % n)]).collect()
}

pub(crate) fn unvectorize(v: &[C64]) -> DMatrix<C64> {
    let n = (v.len() as f64).sqrt().round() as usize;
    DMatrix::from_row_slice(n, n, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driving::{build_h_rotating, DriveParams};
    use crate::dynamics::embed;
    use crate::quantum::{ket_to_density, Ket};
    use nalgebra::DVector;

    fn rho_from(m: DMatrix<C64>) -> DensityMatrix {
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn diagonal_states_are_stationary_without_drive() {
        let rho = rho_from(DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(0.1, 0.0),
            C64::new(0.2, 0.0),
            C64::new(0.3, 0.0),
            C64::new(0.4, 0.0),
        ])));
        let d = lindblad_rhs(&rho, &Operator::zeros(4), [0.3, 0.2, 0.1]).unwrap();
        assert!(d.matrix().iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn single_coherence_decay_rate() {
        // rho = |01><10| + h.c. in the three-level basis; each projector
        // term contributes -kappa/2 to the coherence.
        let (k1, k2, k3) = (0.3, 0.2, 0.7);
        let mut m = DMatrix::zeros(3, 3);
        m[(0, 1)] = C64::new(0.25, 0.1);
        m[(1, 0)] = C64::new(0.25, -0.1);
        let rho = rho_from(m.clone());
        let d = lindblad_rhs(&rho, &Operator::zeros(3), [k1, k2, k3]).unwrap();
        let expected = m[(0, 1)] * (-(k1 + k2) / 2.0);
        assert!((d.matrix()[(0, 1)] - expected).norm() < 1e-15);
        assert!(d.matrix()[(0, 2)].norm() == 0.0);
    }

    #[test]
    fn derivative_is_traceless() {
        let psi = Ket::from_slice(&[
            C64::new(0.3, 0.1),
            C64::new(-0.2, 0.5),
            C64::new(0.4, 0.0),
            C64::new(0.1, -0.6),
        ])
        .normalized();
        let rho = ket_to_density(&psi);
        let h = embed(&build_h_rotating(&DriveParams::lossless().with_detunings(0.1, -0.2)));
        for kind in [Dissipator::Dephasing, Dissipator::AmplitudeDamping] {
            let d = lindblad_rhs_with(&rho, &h, [0.3, 0.2, 0.1], kind).unwrap();
            assert!(d.matrix().trace().norm() < 1e-15);
        }
    }

    #[test]
    fn ground_level_untouched() {
        let psi = Ket::from_real(&[0.5, 0.5, 0.5, 0.5]);
        let rho = ket_to_density(&psi);
        let h = embed(&build_h_rotating(&DriveParams::lossless()));
        let d = lindblad_rhs(&rho, &h, [0.3, 0.2, 0.1]).unwrap();
        // |00><00| is stationary and the coherences with |00> only feel H and
        // the dephasing of the other level
        assert_eq!(d.matrix()[(0, 0)], C64::new(0.0, 0.0));
    }

    #[test]
    fn superoperator_matches_direct_form() {
        let psi = Ket::from_slice(&[
            C64::new(0.1, 0.4),
            C64::new(0.7, 0.0),
            C64::new(-0.3, 0.2),
            C64::new(0.0, 0.5),
        ])
        .normalized();
        let rho = ket_to_density(&psi);
        let h = embed(&build_h_rotating(&DriveParams::lossless().with_detunings(0.05, 0.02)));
        for kind in [Dissipator::Dephasing, Dissipator::AmplitudeDamping] {
            let rates = [0.01, 0.02, 0.03];
            let l = liouvillian(&h, rates, kind).unwrap();
            let v = DVector::from_vec(vectorize(rho.matrix()));
            let via_super = unvectorize((&l * v).as_slice());
            let direct = lindblad_rhs_with(&rho, &h, rates, kind).unwrap();
            assert!(crate::quantum::max_abs_diff(&via_super, direct.matrix()) < 1e-15);
        }
    }

    #[test]
    fn dimension_errors() {
        let rho = DensityMatrix::basis(3, 0);
        assert!(matches!(
            lindblad_rhs(&rho, &Operator::zeros(4), [0.0; 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(lindblad_rhs(&DensityMatrix::basis(2, 0), &Operator::zeros(2), [0.0; 3]).is_err());
        assert!(lindblad_rhs_with(&rho, &Operator::zeros(3), [0.1; 3], Dissipator::AmplitudeDamping)
            .is_err());
    }
}
