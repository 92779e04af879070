use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use super::embed;
use super::lindblad::{driven_levels, liouvillian, unvectorize, vectorize, Dissipator};
use super::ode::{self, Tolerances};
use super::schedule::PulseSchedule;
use crate::driving::{build_h_nonhermitian, build_h_rotating, DriveParams};
use crate::error::{Error, Result};
use crate::expm::expm;
use crate::quantum::{DensityMatrix, Ket, Operator, TRACE_TOL};

/// Smallest eigenvalue tolerated along a trajectory.
const TRAJECTORY_POSITIVITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integrator {
    /// Exact exponential of the Liouvillian on each constant segment.
    Exponential,
    /// Adaptive Dormand–Prince on the vectorized density matrix.
    RungeKutta(Tolerances),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasterOptions {
    pub integrator: Integrator,
    pub dissipator: Dissipator,
}

impl Default for MasterOptions {
    fn default() -> Self {
        MasterOptions {
            integrator: Integrator::Exponential,
            dissipator: Dissipator::Dephasing,
        }
    }
}

/// Density matrices sampled at increasing times.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, |s| s.dim())
    }

    /// `populations()[level][sample]`
    pub fn populations(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|l| self.states.iter().map(|s| s.matrix()[(l, l)].re).collect())
            .collect()
    }

    pub fn final_state(&self) -> Option<&DensityMatrix> {
        self.states.last()
    }
}

pub fn evolve_master(
    rho0: &DensityMatrix,
    schedule: &PulseSchedule,
    t_grid: &[f64],
) -> Result<Trajectory> {
    evolve_master_with(rho0, schedule, t_grid, MasterOptions::default())
}

/// Integrates the master equation through the schedule and records the
/// state at every time of `t_grid` (non-decreasing, within
/// `[0, total_duration]`).
pub fn evolve_master_with(
    rho0: &DensityMatrix,
    schedule: &PulseSchedule,
    t_grid: &[f64],
    opts: MasterOptions,
) -> Result<Trajectory> {
    let dim = rho0.dim();
    driven_levels(dim)?;
    rho0.check_physical()?;
    let total = schedule.total_duration();
    check_grid(t_grid, total)?;

    // Segment generators and the start time of each segment.
    let mut gens = Vec::with_capacity(schedule.segments().len());
    let mut bounds = Vec::with_capacity(schedule.segments().len() + 1);
    let mut start = 0.0;
    bounds.push(0.0);
    for seg in schedule.segments() {
        let h3 = build_h_rotating(&seg.drive);
        let h = if dim == 4 { embed(&h3) } else { h3 };
        let d = &seg.drive;
        gens.push(liouvillian(&h, [d.kappa_1, d.kappa_2, d.kappa_3], opts.dissipator)?);
        start += seg.duration;
        bounds.push(start);
    }
    // guard against round-off in the last boundary
    *bounds.last_mut().expect("nonempty") = f64::INFINITY;

    let mut v = DVector::from_vec(vectorize(rho0.matrix()));
    let mut t = 0.0;
    let mut times = Vec::with_capacity(t_grid.len());
    let mut states = Vec::with_capacity(t_grid.len());
    // uniform sampling reuses one propagator per segment
    let mut cache: Option<(usize, f64, DMatrix<C64>)> = None;
    for &target in t_grid {
        // advance segment by segment
        while t < target {
            let seg = bounds.iter().position(|&b| b > t).expect("bounded") - 1;
            let stop = target.min(bounds[seg + 1]);
            let dt = stop - t;
            match opts.integrator {
                Integrator::Exponential => {
                    let hit = matches!(&cache, Some((s, d, _)) if *s == seg && *d == dt);
                    if !hit {
                        cache = Some((seg, dt, expm(&(&gens[seg] * C64::new(dt, 0.0)))));
                    }
                    let prop = &cache.as_ref().expect("filled").2;
                    v = prop * &v;
                    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                        return Err(Error::NonFinite);
                    }
                }
                Integrator::RungeKutta(tol) => runge_kutta(&gens[seg], &mut v, dt, tol)?,
            }
            t = stop;
        }
        let rho = checked_state(&v, dim, target)?;
        times.push(target);
        states.push(rho);
    }
    Ok(Trajectory { times, states })
}

fn check_grid(t_grid: &[f64], total: f64) -> Result<()> {
    let slack = 1e-12 * total.max(1.0);
    for (k, &t) in t_grid.iter().enumerate() {
        if !t.is_finite() || t < 0.0 || t > total + slack {
            return Err(Error::InvalidArgument(format!(
                "sample time {t} outside [0, {total}]"
            )));
        }
        if k > 0 && t < t_grid[k - 1] {
            return Err(Error::InvalidArgument("sample times must be non-decreasing".into()));
        }
    }
    Ok(())
}

fn runge_kutta(gen: &DMatrix<C64>, v: &mut DVector<C64>, dt: f64, tol: Tolerances) -> Result<()> {
    let rhs = |_: f64, y: &[C64], dy: &mut [C64]| {
        let out = gen * DVector::from_column_slice(y);
        dy.copy_from_slice(out.as_slice());
    };
    ode::integrate(rhs, 0.0, dt, v.as_mut_slice(), tol)?;
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn checked_state(v: &DVector<C64>, dim: usize, t: f64) -> Result<DensityMatrix> {
    let m = unvectorize(v.as_slice());
    let asym = crate::quantum::max_abs_diff(&m, &m.adjoint());
    if asym > 1e-10 {
        return Err(Error::InvariantViolation(format!(
            "state lost Hermiticity ({asym:e}) at t = {t}"
        )));
    }
    let rho = DensityMatrix::new((&m + m.adjoint()).unscale(2.0))?;
    debug_assert_eq!(rho.dim(), dim);
    let tr = rho.trace();
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::InvariantViolation(format!(
            "trace {tr} drifted from 1 at t = {t}"
        )));
    }
    let min = rho.min_eigenvalue();
    if min < -TRAJECTORY_POSITIVITY_TOL {
        return Err(Error::InvariantViolation(format!(
            "negative eigenvalue {min:e} at t = {t}"
        )));
    }
    Ok(rho)
}

/// `exp(-i H t) psi0` with the no-jump Hamiltonian; the result is
/// sub-normalized when any decay rate is positive. `psi0` lives in the
/// three driven levels.
pub fn evolve_nonhermitian(psi0: &Ket, p: &DriveParams, t: f64) -> Result<Ket> {
    p.validate()?;
    if psi0.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: psi0.dim(),
        });
    }
    if !psi0.is_finite() || !t.is_finite() {
        return Err(Error::NonFinite);
    }
    let u = nonhermitian_propagator(p, t)?;
    u.apply(psi0)
}

/// `exp(-i H t)` for the no-jump Hamiltonian.
pub(crate) fn nonhermitian_propagator(p: &DriveParams, t: f64) -> Result<Operator> {
    let h = build_h_nonhermitian(p);
    Operator::new(expm(&(h.matrix() * C64::new(0.0, -t))))
}
