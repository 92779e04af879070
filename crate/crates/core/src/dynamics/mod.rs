//! Time evolution of the driven levels.
//!
//! Three routes are available: the master equation (numeric), the no-jump
//! Schrödinger equation with the non-Hermitian Hamiltonian (numeric) and
//! closed-form amplitudes valid for equal drives near resonance. Time is
//! measured in the inverse of the drive frequency unit, so with
//! `Omega = 1` it is the dimensionless `Omega t`.

mod analytic;
mod evolve;
mod lindblad;
pub mod ode;
mod peak;
mod schedule;

pub use analytic::{analytic_evolution, InitialState};
pub use evolve::{
    evolve_master, evolve_master_with, evolve_nonhermitian, Integrator, MasterOptions, Trajectory,
};
pub use lindblad::{lindblad_rhs, lindblad_rhs_with, liouvillian, Dissipator};
pub use peak::{
    default_sweep_values, detuning_sweep, peak_transfer_search, DetuningAxis, PeakTransfer,
    SweepPoint, MAX_SWEEP_DETUNING,
};
pub(crate) use evolve::nonhermitian_propagator;
pub use schedule::{PulseSchedule, Scheme, Segment};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::quantum::Operator;

/// Index of `|00>` in the four-level basis.
pub const Q00: usize = 0;
/// Index of `|01>` in the four-level basis.
pub const Q01: usize = 1;
/// Index of `|10>` in the four-level basis.
pub const Q10: usize = 2;
/// Index of `|11>` in the four-level basis.
pub const Q11: usize = 3;

/// Embeds a three-level operator into the four-level space with `|00>`
/// decoupled (zero row and column).
pub fn embed(op: &Operator) -> Operator {
    assert_eq!(op.dim(), 3, "embed expects a three-level operator");
    let mut m = DMatrix::<C64>::zeros(4, 4);
    m.view_mut((1, 1), (3, 3)).copy_from(op.matrix());
    Operator::new(m).expect("square")
}
