use crate::error::{Error, Result};

use super::analytic::reduced_wavefunction;
use super::constants::PhysicalConstants;
use super::quadrature;

/// Absolute tolerance for quadratures over reduced (dimensionless) integrands.
pub(crate) const QUAD_TOL: f64 = 1e-12;
/// Normalization tolerance for states entering expectation values.
pub const NORM_TOL: f64 = 1e-8;

/// How a bound state is represented.
#[derive(Debug, Clone, PartialEq)]
pub enum Representation {
    /// Closed-form hydrogenic state.
    Analytic,
    /// Values on the uniform grid `z_k = k h`, `k = 1..=N`, in m^(-1/2).
    /// `psi(0) = psi(z_max) = 0` are implied by the boundary conditions.
    Numeric { grid: Vec<f64>, values: Vec<f64> },
}

/// The `n`-th bound state of the vertical motion.
#[derive(Debug, Clone, PartialEq)]
pub struct SEState {
    pub n: usize,
    /// J
    pub energy: f64,
    pub representation: Representation,
    pub constants: PhysicalConstants,
}

impl SEState {
    /// `int |psi|^2 dz`
    pub fn norm_sqr(&self) -> Result<f64> {
        self.moment(Weight::One)
    }

    /// Expectation of a power of the reduced coordinate `x = z / r_B`.
    fn moment(&self, weight: Weight) -> Result<f64> {
        match &self.representation {
            Representation::Analytic => {
                let n = self.n;
                let upper = 40.0 * (n * n) as f64;
                quadrature::integrate(
                    |x| {
                        let psi = reduced_wavefunction(n, x);
                        psi * psi * weight.at(x)
                    },
                    0.0,
                    upper,
                    QUAD_TOL,
                )
            }
            Representation::Numeric { grid, values } => {
                let r_b = self.constants.bohr_radius();
                let h = grid_step(grid);
                let bulk: f64 = grid
                    .iter()
                    .zip(values)
                    .map(|(&z, &psi)| psi * psi * weight.at(z / r_b))
                    .sum();
                // Trapezoid end term at z = 0. Only the 1/z^2 weight leaves a
                // finite integrand there: (psi/z)^2, extrapolated quadratically.
                let origin = match weight {
                    Weight::InverseSquare => {
                        let u = |k: usize| values[k] / (grid[k] / r_b);
                        let u0 = 3.0 * u(0) - 3.0 * u(1) + u(2);
                        0.5 * u0 * u0
                    }
                    Weight::One | Weight::Linear => 0.0,
                };
                Ok((bulk + origin) * h)
            }
        }
    }

    fn ensure_normalized(&self) -> Result<()> {
        let norm_sq = self.norm_sqr()?;
        if (norm_sq - 1.0).abs() > NORM_TOL {
            Err(Error::Unnormalized { norm_sq })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Weight {
    One,
    Linear,
    InverseSquare,
}

impl Weight {
    fn at(self, x: f64) -> f64 {
        match self {
            Weight::One => 1.0,
            Weight::Linear => x,
            Weight::InverseSquare => 1.0 / (x * x),
        }
    }
}

pub(crate) fn grid_step(grid: &[f64]) -> f64 {
    // z_k = k h, so the first point is the step
    grid[0]
}

/// `<psi_n| z |psi_n>` in m.
pub fn expected_z(state: &SEState) -> Result<f64> {
    state.ensure_normalized()?;
    Ok(state.moment(Weight::Linear)? * state.constants.bohr_radius())
}

/// Diagonal element `<psi_n| dV/dz |psi_n>` in N for the potential
/// `V = -Lambda e^2 / z + e E_z z`, i.e. `<Lambda e^2 / z^2> + e E_z`.
pub fn dvdz_element(state: &SEState, field: f64) -> Result<f64> {
    state.ensure_normalized()?;
    let c = &state.constants;
    let r_b = c.bohr_radius();
    let inv_z2 = state.moment(Weight::InverseSquare)? / (r_b * r_b);
    if !inv_z2.is_finite() {
        return Err(Error::QuadratureNonConvergence { estimate: inv_z2 });
    }
    Ok(c.image_strength() * inv_z2 + c.elementary_charge * field)
}
