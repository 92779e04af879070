//! Driven three-level Hamiltonians in the rotating frame, the dressed
//! (dark/bright) basis and first-order eigenvalues for small two-photon
//! detuning.
//!
//! Basis order is `(|01>, |10>, |11>)`. Field 1 drives `|01> <-> |11>`
//! with Rabi frequency `rabi_1`, field 2 drives `|01> <-> |10>` with
//! `rabi_2`.

use std::f64::consts::FRAC_PI_4;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{Ket, Operator};

/// Index of `|01>` in the three-level basis.
pub const L01: usize = 0;
/// Index of `|10>` in the three-level basis.
pub const L10: usize = 1;
/// Index of `|11>` in the three-level basis.
pub const L11: usize = 2;

/// Largest `|delta| / Omega` accepted by the perturbative formulas.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;

/// Drive amplitudes, detunings and level decay rates, all in one frequency
/// unit. `kappa_1`, `kappa_2`, `kappa_3` belong to `|01>`, `|10>`, `|11>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveParams {
    pub rabi_1: f64,
    pub rabi_2: f64,
    pub detuning_1: f64,
    pub detuning_2: f64,
    pub kappa_1: f64,
    pub kappa_2: f64,
    pub kappa_3: f64,
}

impl DriveParams {
    /// Equal drives with total Rabi frequency 1, on resonance.
    pub fn resonant(kappa_1: f64, kappa_2: f64, kappa_3: f64) -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        DriveParams {
            rabi_1: r,
            rabi_2: r,
            detuning_1: 0.0,
            detuning_2: 0.0,
            kappa_1,
            kappa_2,
            kappa_3,
        }
    }

    /// Equal drives, no detuning, no loss.
    pub fn lossless() -> Self {
        Self::resonant(0.0, 0.0, 0.0)
    }

    /// `kappa_1 / Omega = 1e-3`, `kappa_2 = 0.3439 kappa_1`,
    /// `kappa_3 = 0.1520 kappa_1`, zero-field decay ratios.
    pub fn reference() -> Self {
        let k1 = 1e-3;
        Self::resonant(k1, 0.3439 * k1, 0.1520 * k1)
    }

    pub fn with_detunings(mut self, detuning_1: f64, detuning_2: f64) -> Self {
        self.detuning_1 = detuning_1;
        self.detuning_2 = detuning_2;
        self
    }

    /// `sqrt(rabi_1^2 + rabi_2^2)`
    pub fn omega(&self) -> f64 {
        self.rabi_1.hypot(self.rabi_2)
    }

    /// `Delta_1 - i kappa_1 / 2`
    pub fn delta_1(&self) -> C64 {
        C64::new(self.detuning_1, -0.5 * self.kappa_1)
    }

    /// `Delta_2 - i kappa_2 / 2`
    pub fn delta_2(&self) -> C64 {
        C64::new(self.detuning_2, -0.5 * self.kappa_2)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.rabi_1,
            self.rabi_2,
            self.detuning_1,
            self.detuning_2,
            self.kappa_1,
            self.kappa_2,
            self.kappa_3,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if self.rabi_1 < 0.0 || self.rabi_2 < 0.0 || self.omega() == 0.0 {
            return Err(Error::InvalidArgument(
                "Rabi frequencies must be >= 0 with at least one positive".into(),
            ));
        }
        if self.kappa_1 < 0.0 || self.kappa_2 < 0.0 || self.kappa_3 < 0.0 {
            return Err(Error::InvalidArgument("decay rates must be >= 0".into()));
        }
        Ok(())
    }
}

fn rotating_matrix(p: &DriveParams, d1: C64, d2: C64) -> DMatrix<C64> {
    let r = |x: f64| C64::new(x, 0.0);
    let m = DMatrix::from_row_slice(
        3,
        3,
        &[
            -2.0 * d1,
            r(p.rabi_2),
            r(p.rabi_1),
            r(p.rabi_2),
            -2.0 * d2,
            r(0.0),
            r(p.rabi_1),
            r(0.0),
            r(0.0),
        ],
    );
    m * C64::new(-0.5, 0.0)
}

/// Rotating-frame Hamiltonian
/// `-1/2 [[-2 Delta_1, rabi_2, rabi_1], [rabi_2, -2 Delta_2, 0], [rabi_1, 0, 0]]`.
pub fn build_h_rotating(p: &DriveParams) -> Operator {
    let m = rotating_matrix(
        p,
        C64::new(p.detuning_1, 0.0),
        C64::new(p.detuning_2, 0.0),
    );
    Operator::new(m).expect("3x3")
}

/// No-jump Hamiltonian: the detunings become `delta_j = Delta_j - i kappa_j / 2`
/// for `|01>` and `|10>`.
pub fn build_h_nonhermitian(p: &DriveParams) -> Operator {
    Operator::new(rotating_matrix(p, p.delta_1(), p.delta_2())).expect("3x3")
}

/// Mixing angles and dressed states at zero two-photon detuning.
#[derive(Debug, Clone, PartialEq)]
pub struct DressedBasis {
    /// `tan(theta) = rabi_1 / rabi_2`
    pub theta: f64,
    /// `tan(2 phi) = Omega / delta_1`; complex when `kappa_1 > 0`.
    pub phi: C64,
    /// Dark state `-sin(theta)|10> + cos(theta)|11>`.
    pub a1: Ket,
    pub a2: Ket,
    pub a3: Ket,
}

/// Dressed basis of the no-jump Hamiltonian with `delta_2` set to zero.
///
/// `phi` is taken on the branch `pi/4 - atan(delta_1 / Omega) / 2`, which is
/// analytic around `delta_1 = 0` (where `tan(phi) = 1`). For purely
/// imaginary `delta_1` the principal value of `atan(Omega / delta_1)` lies on
/// its branch cut.
pub fn dressed_basis(p: &DriveParams) -> Result<DressedBasis> {
    p.validate()?;
    let omega = p.omega();
    let theta = p.rabi_1.atan2(p.rabi_2);
    let phi = C64::new(FRAC_PI_4, 0.0) - 0.5 * (p.delta_1() / omega).atan();

    let (st, ct) = theta.sin_cos();
    let (sp, cp) = (phi.sin(), phi.cos());
    let z = C64::new(0.0, 0.0);
    let r = |x: f64| C64::new(x, 0.0);
    Ok(DressedBasis {
        theta,
        phi,
        a1: Ket::from_slice(&[z, r(-st), r(ct)]),
        a2: Ket::from_slice(&[cp, sp * ct, sp * st]),
        a3: Ket::from_slice(&[-sp, cp * ct, cp * st]),
    })
}

/// First-order eigenvalues in `delta_2`:
///
/// * `E1 = (rabi_1^2 / Omega^2) delta_2`
/// * `E2 = Omega/2 + delta_1/2 + (rabi_2^2 / (2 Omega^2)) delta_2`
/// * `E3 = -Omega/2 + delta_1/2 + (rabi_2^2 / (2 Omega^2)) delta_2`
pub fn perturbative_eigenvalues(p: &DriveParams) -> Result<[C64; 3]> {
    p.validate()?;
    let omega = p.omega();
    let (d1, d2) = (p.delta_1(), p.delta_2());
    let ratio = d1.norm().max(d2.norm()) / omega;
    if ratio > PERTURBATIVE_LIMIT {
        return Err(Error::PerturbationRegime { ratio });
    }
    let w1 = p.rabi_1 * p.rabi_1 / (omega * omega);
    let w2 = p.rabi_2 * p.rabi_2 / (omega * omega);
    let shift = 0.5 * d1 + 0.5 * w2 * d2;
    Ok([
        w1 * d2,
        C64::new(0.5 * omega, 0.0) + shift,
        C64::new(-0.5 * omega, 0.0) + shift,
    ])
}

/// Eigenvalues of the no-jump Hamiltonian from a complex Schur
/// decomposition.
pub fn exact_eigenvalues(p: &DriveParams) -> Vec<C64> {
    let h = build_h_nonhermitian(p).into_inner();
    let schur = nalgebra::Schur::new(h);
    let (_, t) = schur.unpack();
    (0..3).map(|k| t[(k, k)]).collect()
}

/// Left-hand side of the secular equation of the no-jump Hamiltonian,
/// `x [x^2 + 2(d1 + d2) x + 4 d1 d2 - Omega^2] - 2 rabi_1^2 d2` with
/// `x = -2E`.
pub fn secular_residual(p: &DriveParams, energy: C64) -> C64 {
    let x = -2.0 * energy;
    let (d1, d2) = (p.delta_1(), p.delta_2());
    let omega2 = p.omega() * p.omega();
    x * (x * x + 2.0 * (d1 + d2) * x + 4.0 * d1 * d2 - omega2) - 2.0 * p.rabi_1 * p.rabi_1 * d2
}

/// Reorders `exact` to match `reference` by minimal total absolute
/// difference over all permutations; returns the reordered values and the
/// largest pairwise error.
pub fn pair_eigenvalues(reference: &[C64; 3], exact: &[C64]) -> ([C64; 3], f64) {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let cost = |perm: &[usize; 3]| -> f64 {
        (0..3).map(|k| (reference[k] - exact[perm[k]]).norm()).sum()
    };
    let best = PERMS
        .iter()
        .min_by(|a, b| cost(a).total_cmp(&cost(b)))
        .unwrap();
    let paired = [exact[best[0]], exact[best[1]], exact[best[2]]];
    let max_err = (0..3)
        .map(|k| (reference[k] - paired[k]).norm())
        .fold(0.0, f64::max);
    (paired, max_err)
}
