//! Bound states of an electron above liquid helium and the two-ripplon
//! decay-rate model built on them.
//!
//! Without a holding field the vertical motion is hydrogenic and the states
//! are known in closed form. A uniform holding field `E_z` adds `e E_z z` to
//! the image potential; those spectra are solved on a finite-difference
//! grid.

mod analytic;
mod constants;
mod decay;
mod laguerre;
pub mod quadrature;
mod stark;
mod state;

pub use analytic::{analytic_state, analytic_wavefunction, rydberg_energy};
pub use constants::PhysicalConstants;
pub use decay::{decay_rate_ratios, DecayModel, DEFAULT_KAPPA2};
pub use laguerre::laguerre;
pub use stark::{solve_stark_spectrum, GridSpec, DEFAULT_GRID_POINTS, MIN_GRID_POINTS};
pub use state::{dvdz_element, expected_z, Representation, SEState};

/// One volt per centimetre in V/m.
pub const V_PER_CM: f64 = 100.0;
