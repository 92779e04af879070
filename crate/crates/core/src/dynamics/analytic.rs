use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::driving::{DriveParams, L01, L10, L11, PERTURBATIVE_LIMIT};
use crate::error::{Error, Result};
use crate::quantum::Ket;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    S10,
    S01,
    S11,
}

impl InitialState {
    pub const ALL: [InitialState; 3] = [InitialState::S10, InitialState::S01, InitialState::S11];

    /// Index in the three-level basis.
    pub fn level(self) -> usize {
        match self {
            InitialState::S10 => L10,
            InitialState::S01 => L01,
            InitialState::S11 => L11,
        }
    }

    pub fn ket(self) -> Ket {
        Ket::basis(3, self.level())
    }

    pub fn label(self) -> &'static str {
        match self {
            InitialState::S10 => "|10>",
            InitialState::S01 => "|01>",
            InitialState::S11 => "|11>",
        }
    }
}

/// Closed-form no-jump state at time `t` for equal drives and small complex
/// detunings. Amplitudes are returned in the basis `(|01>, |10>, |11>)`.
///
/// The overall phase of the `|01>` amplitude follows the printed closed
/// form; with the Hamiltonian sign used by [`build_h_rotating`] a numeric
/// propagation yields the opposite sign on that component at intermediate
/// times. Populations agree.
///
/// [`build_h_rotating`]: crate::driving::build_h_rotating
pub fn analytic_evolution(initial: InitialState, p: &DriveParams, t: f64) -> Result<Ket> {
    p.validate()?;
    if (p.rabi_1 - p.rabi_2).abs() > 1e-12 * p.omega() {
        return Err(Error::AnalyticRegime(format!(
            "closed forms need rabi_1 == rabi_2, got {} and {}",
            p.rabi_1, p.rabi_2
        )));
    }
    let omega = p.omega();
    let (d1, d2) = (p.delta_1(), p.delta_2());
    let ratio = d1.norm().max(d2.norm()) / omega;
    if ratio > PERTURBATIVE_LIMIT {
        return Err(Error::AnalyticRegime(format!(
            "|delta| / Omega = {ratio} exceeds {PERTURBATIVE_LIMIT}"
        )));
    }
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }

    let i = C64::new(0.0, 1.0);
    let (s, c) = (0.5 * omega * t).sin_cos();
    let slow = (-i * (2.0 * d1 + d2) * t / 4.0).exp();
    let dark = (-i * d2 * t / 2.0).exp();
    let half_c = 0.5 * c * slow;
    let half_d = 0.5 * dark;
    let side = -i * std::f64::consts::FRAC_1_SQRT_2 * s * slow;

    // (|10>, |01>, |11>)
    let (a10, a01, a11) = match initial {
        InitialState::S10 => (half_c + half_d, side, half_c - half_d),
        InitialState::S01 => (side, c * slow, side),
        InitialState::S11 => (half_c - half_d, side, half_c + half_d),
    };
    let mut amp = [C64::new(0.0, 0.0); 3];
    amp[L10] = a10;
    amp[L01] = a01;
    amp[L11] = a11;
    Ok(Ket::from_slice(&amp))
}
