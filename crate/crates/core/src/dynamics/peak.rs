use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::evolve::evolve_master;
use super::schedule::{PulseSchedule, Scheme};
use crate::driving::{DriveParams, L10, L11};
use crate::error::{Error, Result};
use crate::quantum::{state_fidelity, DensityMatrix};

/// Largest `|Delta| / Omega` accepted by [`detuning_sweep`].
pub const MAX_SWEEP_DETUNING: f64 = 0.5;

const COARSE_SAMPLES: usize = 240;
const WINDOW_MARGIN: f64 = 1.2;
const GOLDEN_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakTransfer {
    pub t_peak: f64,
    pub fidelity: f64,
}

/// First local maximum of the fidelity between `target` and the state
/// reached from `initial` at the end of a schedule of total length `T`,
/// searched over `T` in `(0, 1.2 * period]`.
///
/// For the coherent scheme this is the fidelity along one trajectory. For
/// the two-step scheme both π-pulses are stretched together, so every `T`
/// is a separate schedule.
pub fn peak_transfer_search(
    scheme: Scheme,
    p: &DriveParams,
    initial: &DensityMatrix,
    target: &DensityMatrix,
) -> Result<PeakTransfer> {
    p.validate()?;
    if scheme == Scheme::TwoStep && (p.rabi_1 == 0.0 || p.rabi_2 == 0.0) {
        return Err(Error::InvalidArgument(
            "two-step search needs both Rabi frequencies > 0".into(),
        ));
    }
    let window = WINDOW_MARGIN * PulseSchedule::nominal_period(scheme, p);
    let fid = |t: f64| -> Result<f64> {
        let s = PulseSchedule::of_scheme(scheme, *p, t)?;
        let tr = evolve_master(initial, &s, &[t])?;
        state_fidelity(target, tr.final_state().expect("one sample"))
    };

    let h = window / COARSE_SAMPLES as f64;
    let times: Vec<f64> = (0..=COARSE_SAMPLES).map(|k| h * k as f64).collect();
    let coarse: Vec<f64> = match scheme {
        // one trajectory covers every duration
        Scheme::Coherent => {
            let s = PulseSchedule::coherent(*p, window)?;
            evolve_master(initial, &s, &times)?
                .states()
                .iter()
                .map(|rho| state_fidelity(target, rho))
                .collect::<Result<_>>()?
        }
        Scheme::TwoStep => std::iter::once(state_fidelity(target, initial))
            .chain(times[1..].iter().map(|&t| fid(t)))
            .collect::<Result<_>>()?,
    };
    for k in 1..COARSE_SAMPLES {
        if coarse[k] > coarse[k - 1] && coarse[k] >= coarse[k + 1] {
            return golden_max(&fid, times[k - 1], times[k + 1]);
        }
    }
    Err(Error::NoInteriorMaximum { window })
}

fn golden_max<F>(f: &F, mut a: f64, mut b: f64) -> Result<PeakTransfer>
where
    F: Fn(f64) -> Result<f64>,
{
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > GOLDEN_REL_TOL * b.abs().max(1.0) {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1)?;
        }
    }
    let (t_peak, fidelity) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Ok(PeakTransfer { t_peak, fidelity })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetuningAxis {
    /// Single-photon detuning `Delta_1`, with `Delta_2 = 0`.
    Delta1,
    /// Two-photon detuning `Delta_2`, with `Delta_1 = 0`.
    Delta2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub detuning: f64,
    pub t_peak: f64,
    pub fidelity: f64,
}

/// 61 evenly spaced detunings on `[-0.3, 0.3] * omega`.
pub fn default_sweep_values(omega: f64) -> Vec<f64> {
    (0..61).map(|k| omega * (-0.3 + 0.01 * k as f64)).collect()
}

/// Peak `|10> -> |11>` fidelity of the coherent scheme for each detuning on
/// `axis`; the other detuning is zero. Points run in parallel.
pub fn detuning_sweep(axis: DetuningAxis, values: &[f64], p: &DriveParams) -> Result<Vec<SweepPoint>> {
    p.validate()?;
    let limit = MAX_SWEEP_DETUNING * p.omega();
    if let Some(v) = values.iter().find(|v| !(v.abs() <= limit)) {
        return Err(Error::InvalidArgument(format!(
            "sweep detuning {v} exceeds {limit}"
        )));
    }
    let initial = DensityMatrix::basis(3, L10);
    let target = DensityMatrix::basis(3, L11);
    values
        .par_iter()
        .map(|&d| {
            let q = match axis {
                DetuningAxis::Delta1 => p.with_detunings(d, 0.0),
                DetuningAxis::Delta2 => p.with_detunings(0.0, d),
            };
            let peak = peak_transfer_search(Scheme::Coherent, &q, &initial, &target)?;
            Ok(SweepPoint {
                detuning: d,
                t_peak: peak.t_peak,
                fidelity: peak.fidelity,
            })
        })
        .collect()
}
