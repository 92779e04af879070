use serde::{Deserialize, Serialize};

/// Physical constants entering the image-potential problem, in SI units.
///
/// Formulas written in Gaussian units (`e^2`) are evaluated here with
/// `e^2 / (4 pi eps0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// kg
    pub electron_mass: f64,
    /// C
    pub elementary_charge: f64,
    /// J s
    pub hbar: f64,
    /// F/m
    pub vacuum_permittivity: f64,
    /// Dielectric constant of the liquid.
    pub dielectric_constant: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 values with liquid helium-4, eps = 1.057.
    pub const HELIUM: PhysicalConstants = PhysicalConstants {
        electron_mass: 9.109_383_701_5e-31,
        elementary_charge: 1.602_176_634e-19,
        hbar: 1.054_571_817e-34,
        vacuum_permittivity: 8.854_187_812_8e-12,
        dielectric_constant: 1.057,
    };

    /// Image factor `(eps - 1) / (4 (eps + 1))`.
    pub fn image_factor(&self) -> f64 {
        let eps = self.dielectric_constant;
        (eps - 1.0) / (4.0 * (eps + 1.0))
    }

    /// `e^2 / (4 pi eps0)` in J m.
    pub fn coulomb_e2(&self) -> f64 {
        let e = self.elementary_charge;
        e * e / (4.0 * std::f64::consts::PI * self.vacuum_permittivity)
    }

    /// Strength of the image potential `Lambda e^2`, so that `V = -strength / z`.
    pub fn image_strength(&self) -> f64 {
        self.image_factor() * self.coulomb_e2()
    }

    /// Effective Bohr radius `hbar^2 / (m_e e^2 Lambda)` in m.
    pub fn bohr_radius(&self) -> f64 {
        self.hbar * self.hbar / (self.electron_mass * self.image_strength())
    }

    /// Rydberg energy `m_e e^4 Lambda^2 / (2 hbar^2)` in J.
    pub fn rydberg_energy(&self) -> f64 {
        let s = self.image_strength();
        self.electron_mass * s * s / (2.0 * self.hbar * self.hbar)
    }

    /// Energy of a field `e E_z` acting over one Bohr radius, in Rydbergs.
    pub(crate) fn reduced_field(&self, field: f64) -> f64 {
        self.elementary_charge * field * self.bohr_radius() / self.rydberg_energy()
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::HELIUM
    }
}
