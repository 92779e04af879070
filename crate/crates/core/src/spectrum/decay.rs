//! Two-ripplon decay rates of the excited levels.
//!
//! The rate of level `n` is a sum over leakage channels to every lower
//! level `l`:
//!
//! `kappa(n) = K sum_{l<n} (dV/dz)_ll (dV/dz)_nn Delta_nl^(2/3)`
//!
//! The prefactor `K` depends on material parameters that are not needed
//! here: rates are reported relative to `kappa(2)` and calibrated by an
//! externally supplied absolute `kappa(2)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::analytic::analytic_state;
use super::constants::PhysicalConstants;
use super::stark::{solve_stark_spectrum, GridSpec};
use super::state::{dvdz_element, SEState};

/// Default absolute rate of the first excited level, 1/T1 with T1 = 1 us.
pub const DEFAULT_KAPPA2: f64 = 1e6;

/// Largest level covered by the model.
pub const MAX_LEVEL: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayModel {
    /// V/m
    pub holding_field: f64,
    pub n_max: usize,
    /// `kappa(n) / kappa(2)` for `n = 2..=n_max`; the first entry is 1.
    pub ratios: Vec<f64>,
    /// Absolute `kappa(2)` in 1/s.
    pub kappa2: f64,
}

impl DecayModel {
    /// `kappa(n) / kappa(2)`.
    pub fn ratio(&self, n: usize) -> Option<f64> {
        if n < 2 {
            return None;
        }
        self.ratios.get(n - 2).copied()
    }

    /// Absolute rate of level `n` in 1/s.
    pub fn rate(&self, n: usize) -> Option<f64> {
        self.ratio(n).map(|r| r * self.kappa2)
    }

    pub fn with_kappa2(mut self, kappa2: f64) -> Self {
        self.kappa2 = kappa2;
        self
    }
}

/// Decay-rate ratios in the holding field `field` (V/m).
///
/// Zero field uses the closed-form states; any other field solves the
/// spectrum on `grid` (default: [`GridSpec::for_levels`]).
pub fn decay_rate_ratios(
    field: f64,
    n_max: usize,
    grid: Option<GridSpec>,
    constants: &PhysicalConstants,
) -> Result<DecayModel> {
    if !(2..=MAX_LEVEL).contains(&n_max) {
        return Err(Error::InvalidArgument(format!(
            "n_max must lie in 2..={MAX_LEVEL}, got {n_max}"
        )));
    }
    let states: Vec<SEState> = if field == 0.0 {
        (1..=n_max)
            .map(|n| analytic_state(n, constants))
            .collect::<Result<_>>()?
    } else {
        let grid = grid.unwrap_or_else(|| GridSpec::for_levels(n_max, constants));
        solve_stark_spectrum(field, n_max, grid, constants)?
    };
    let elements = states
        .iter()
        .map(|s| dvdz_element(s, field))
        .collect::<Result<Vec<_>>>()?;
    let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();

    let unscaled = |n: usize| -> f64 {
        (1..n)
            .map(|l| {
                let gap = (energies[n - 1] - energies[l - 1]).abs();
                elements[l - 1] * elements[n - 1] * gap.powf(2.0 / 3.0)
            })
            .sum()
    };
    let base = unscaled(2);
    let ratios = (2..=n_max).map(|n| unscaled(n) / base).collect();
    Ok(DecayModel {
        holding_field: field,
        n_max,
        ratios,
        kappa2: DEFAULT_KAPPA2,
    })
}
