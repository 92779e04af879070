//! Controlled-NOT gate encoded in the four lowest Rydberg levels of an
//! electron floating above liquid helium.
//!
//! The crate covers the whole chain from the bound-state spectrum of the
//! image potential (with and without a holding field), through the
//! two-ripplon decay-rate model, to the driven three-level dynamics and the
//! resulting state and gate fidelities.
//!
//! Conventions used throughout:
//!
//! * `hbar = 1`; drive parameters and rates share one frequency unit and
//!   time is measured in its inverse. With the Rabi frequency set to 1 the
//!   time axis is the dimensionless `Omega * t`.
//! * Three-level objects are ordered `(|01>, |10>, |11>)`, four-level ones
//!   `(|00>, |01>, |10>, |11>)`.

pub mod driving;
pub mod dynamics;
pub mod error;
pub mod expm;
pub mod gate;
pub mod quantum;
pub mod spectrum;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
