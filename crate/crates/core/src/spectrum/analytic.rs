use crate::error::{Error, Result};

use super::constants::PhysicalConstants;
use super::laguerre::laguerre;
use super::state::{Representation, SEState};

/// `-R / n^2` in J.
pub fn rydberg_energy(n: usize, constants: &PhysicalConstants) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "principal quantum number must be >= 1".into(),
        ));
    }
    Ok(-constants.rydberg_energy() / (n * n) as f64)
}

/// Hydrogenic wavefunction in units of `r_B^(-1/2)` at `x = z / r_B`:
/// `2 n^(-5/2) x exp(-x/n) L_{n-1}^(1)(2x/n)`.
pub(crate) fn reduced_wavefunction(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    2.0 * nf.powf(-2.5) * x * (-x / nf).exp() * laguerre(n - 1, 1, 2.0 * x / nf)
}

/// `psi_n(z)` in m^(-1/2).
pub fn analytic_wavefunction(n: usize, z: f64, constants: &PhysicalConstants) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "principal quantum number must be >= 1".into(),
        ));
    }
    if z < 0.0 || !z.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "wavefunction is defined for z >= 0, got {z}"
        )));
    }
    let r_b = constants.bohr_radius();
    Ok(reduced_wavefunction(n, z / r_b) / r_b.sqrt())
}

/// The zero-field state `n` in closed form.
pub fn analytic_state(n: usize, constants: &PhysicalConstants) -> Result<SEState> {
    Ok(SEState {
        n,
        energy: rydberg_energy(n, constants)?,
        representation: Representation::Analytic,
        constants: *constants,
    })
}
