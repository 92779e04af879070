use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::driving::DriveParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Both fields on at once.
    Coherent,
    /// `|10> -> |01>` with field 2 alone, then `|01> -> |11>` with field 1.
    TwoStep,
}

/// Piecewise-constant drive segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub duration: f64,
    pub drive: DriveParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSchedule {
    segments: Vec<Segment>,
    scheme: Scheme,
}

impl PulseSchedule {
    pub fn new(segments: Vec<Segment>, scheme: Scheme) -> Result<Self> {
        for s in &segments {
            if !(s.duration > 0.0) || !s.duration.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "segment durations must be positive, got {}",
                    s.duration
                )));
            }
            s.drive.validate()?;
        }
        match scheme {
            Scheme::Coherent if segments.len() != 1 => {
                return Err(Error::InvalidArgument(
                    "coherent schedule has exactly one segment".into(),
                ))
            }
            Scheme::TwoStep => {
                let ok = segments.len() == 2
                    && ((segments[0].drive.rabi_1 == 0.0 && segments[1].drive.rabi_2 == 0.0)
                        || (segments[0].drive.rabi_2 == 0.0 && segments[1].drive.rabi_1 == 0.0));
                if !ok {
                    return Err(Error::InvalidArgument(
                        "two-step schedule needs two segments, each with one field off".into(),
                    ));
                }
            }
            Scheme::Coherent => {}
        }
        Ok(PulseSchedule { segments, scheme })
    }

    /// One segment of length `duration` with drive `p`.
    pub fn coherent(p: DriveParams, duration: f64) -> Result<Self> {
        Self::new(vec![Segment { duration, drive: p }], Scheme::Coherent)
    }

    /// Field 2 alone then field 1 alone, with the same amplitudes, detunings
    /// and rates as `p`. `total` is split in proportion to the two π-pulse
    /// durations `pi / rabi_2` and `pi / rabi_1`.
    pub fn two_step(p: DriveParams, total: f64) -> Result<Self> {
        if p.rabi_1 <= 0.0 || p.rabi_2 <= 0.0 {
            return Err(Error::InvalidArgument(
                "two-step schedule needs both Rabi frequencies > 0".into(),
            ));
        }
        let first = total * (1.0 / p.rabi_2) / (1.0 / p.rabi_1 + 1.0 / p.rabi_2);
        Self::new(
            vec![
                Segment {
                    duration: first,
                    drive: DriveParams { rabi_1: 0.0, ..p },
                },
                Segment {
                    duration: total - first,
                    drive: DriveParams { rabi_2: 0.0, ..p },
                },
            ],
            Scheme::TwoStep,
        )
    }

    /// Schedule of the given scheme with total duration `total`.
    pub fn of_scheme(scheme: Scheme, p: DriveParams, total: f64) -> Result<Self> {
        match scheme {
            Scheme::Coherent => Self::coherent(p, total),
            Scheme::TwoStep => Self::two_step(p, total),
        }
    }

    /// Duration after which the scheme completes one transfer cycle at
    /// resonance: `2 pi / Omega` for coherent driving, the sum of both
    /// π-pulses for two-step driving.
    pub fn nominal_period(scheme: Scheme, p: &DriveParams) -> f64 {
        match scheme {
            Scheme::Coherent => 2.0 * PI / p.omega(),
            Scheme::TwoStep => PI / p.rabi_1 + PI / p.rabi_2,
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}
