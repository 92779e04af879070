//! Finite-difference eigensolver for the image potential in a uniform
//! holding field.
//!
//! In reduced units (`x = z / r_B`, energies in Rydbergs) the Hamiltonian is
//! `-d^2/dx^2 - 2/x + f x` with `f = e E_z r_B / R`. Second-order central
//! differences on `x_k = k h`, `k = 1..=N`, with `psi(0) = psi(x_max) = 0`,
//! give a symmetric tridiagonal matrix whose lowest eigenpairs are found by
//! Sturm-sequence bisection followed by inverse iteration.

use crate::error::{Error, Result};

use super::constants::PhysicalConstants;
use super::state::{Representation, SEState};

pub const MIN_GRID_POINTS: usize = 2000;
pub const DEFAULT_GRID_POINTS: usize = 64_000;

/// Relative energy change under grid doubling above which the grid is
/// rejected.
const REFINEMENT_TOL: f64 = 1e-3;
/// Largest admissible |psi| in the last 1% of the box, relative to the peak.
const TAIL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// m
    pub z_max: f64,
    /// Interior grid points.
    pub points: usize,
}

impl GridSpec {
    /// Box of `40 n^2 r_B` for the highest requested level.
    pub fn for_levels(n_levels: usize, constants: &PhysicalConstants) -> Self {
        GridSpec {
            z_max: 40.0 * (n_levels * n_levels) as f64 * constants.bohr_radius(),
            points: DEFAULT_GRID_POINTS,
        }
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points = points;
        self
    }
}

/// Lowest `n_levels` bound states in the holding field `field` (V/m).
///
/// The result is checked against a grid with twice the points (energy
/// change must stay below 0.1%) and for wavefunction tails reaching the
/// box edge.
pub fn solve_stark_spectrum(
    field: f64,
    n_levels: usize,
    grid: GridSpec,
    constants: &PhysicalConstants,
) -> Result<Vec<SEState>> {
    if n_levels == 0 {
        return Err(Error::InvalidArgument("n_levels must be >= 1".into()));
    }
    if grid.points < MIN_GRID_POINTS {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least {MIN_GRID_POINTS} points, got {}",
            grid.points
        )));
    }
    if !(grid.z_max > 0.0) || !field.is_finite() {
        return Err(Error::InvalidArgument("z_max must be > 0 and the field finite".into()));
    }

    let r_b = constants.bohr_radius();
    let rydberg = constants.rydberg_energy();
    let f = constants.reduced_field(field);
    let x_max = grid.z_max / r_b;

    let coarse = FdProblem::new(x_max, grid.points, f);
    let energies = coarse.lowest_eigenvalues(n_levels);
    let fine = FdProblem::new(x_max, 2 * grid.points + 1, f);
    let fine_energies = fine.lowest_eigenvalues(n_levels);
    for (k, (&e, &e_fine)) in energies.iter().zip(&fine_energies).enumerate() {
        let scale = relative_scale(&energies, k);
        let change = (e - e_fine).abs() / scale;
        if change > REFINEMENT_TOL {
            return Err(Error::GridTooCoarse {
                level: k + 1,
                relative_change: change,
            });
        }
    }

    let h = coarse.h;
    let grid_z: Vec<f64> = (1..=grid.points).map(|k| k as f64 * h * r_b).collect();
    let tail_start = grid.points - grid.points / 100;
    let mut states = Vec::with_capacity(n_levels);
    for (k, &e) in energies.iter().enumerate() {
        let v = coarse.eigenvector(e);
        let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let tail = v[tail_start..].iter().fold(0.0f64, |m, x| m.max(x.abs())) / peak;
        if tail > TAIL_TOL {
            return Err(Error::BoxTooSmall { level: k + 1, tail });
        }
        // normalize so that h * sum psi^2 = 1 in reduced units, then convert
        let norm = (v.iter().map(|x| x * x).sum::<f64>() * h).sqrt();
        let sign = if v.iter().find(|x| x.abs() > 1e-12 * peak).copied().unwrap_or(1.0) < 0.0 {
            -1.0
        } else {
            1.0
        };
        let scale = sign / (norm * r_b.sqrt());
        states.push(SEState {
            n: k + 1,
            energy: e * rydberg,
            representation: Representation::Numeric {
                grid: grid_z.clone(),
                values: v.iter().map(|x| x * scale).collect(),
            },
            constants: *constants,
        });
    }
    Ok(states)
}

/// Scale for the refinement test: the level energy or, when the level sits
/// near zero, its distance to the nearest neighbour.
fn relative_scale(energies: &[f64], k: usize) -> f64 {
    let mut gap = f64::INFINITY;
    if k > 0 {
        gap = gap.min(energies[k] - energies[k - 1]);
    }
    if k + 1 < energies.len() {
        gap = gap.min(energies[k + 1] - energies[k]);
    }
    if !gap.is_finite() {
        gap = 0.0;
    }
    energies[k].abs().max(gap)
}

/// Symmetric tridiagonal finite-difference matrix.
struct FdProblem {
    h: f64,
    diag: Vec<f64>,
    off: f64,
}

impl FdProblem {
    fn new(x_max: f64, points: usize, f: f64) -> Self {
        let h = x_max / (points + 1) as f64;
        let kinetic = 2.0 / (h * h);
        let diag = (1..=points)
            .map(|k| {
                let x = k as f64 * h;
                kinetic - 2.0 / x + f * x
            })
            .collect();
        FdProblem {
            h,
            diag,
            off: -1.0 / (h * h),
        }
    }

    /// Number of eigenvalues strictly below `lambda`.
    fn sturm_count(&self, lambda: f64) -> usize {
        let off2 = self.off * self.off;
        let mut count = 0;
        let mut q = 1.0;
        for (k, &d) in self.diag.iter().enumerate() {
            q = if k == 0 { d - lambda } else { d - lambda - off2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + lambda.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().fold(f64::INFINITY, |m, &d| m.min(d - r));
        let hi = self.diag.iter().fold(f64::NEG_INFINITY, |m, &d| m.max(d + r));
        (lo, hi)
    }

    fn lowest_eigenvalues(&self, count: usize) -> Vec<f64> {
        let (lo, hi) = self.gershgorin();
        (0..count).map(|k| self.bisect(k, lo, hi)).collect()
    }

    /// k-th smallest eigenvalue (0-based).
    fn bisect(&self, k: usize, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 2.0 * f64::EPSILON * (lo.abs().max(hi.abs())) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Inverse iteration at a converged eigenvalue.
    fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let shifted: Vec<f64> = self.diag.iter().map(|d| d - lambda).collect();
        let lu = TridiagonalLu::factor(&shifted, self.off);
        let mut v = vec![1.0; n];
        for _ in 0..3 {
            lu.solve_in_place(&mut v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }
}

/// LU factorization with partial pivoting of a tridiagonal matrix with
/// constant off-diagonals (LAPACK `gttrf` layout).
struct TridiagonalLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    dl: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(diag: &[f64], off: f64) -> Self {
        let n = diag.len();
        let mut d = diag.to_vec();
        let mut dl = vec![off; n.saturating_sub(1)];
        let mut du = vec![off; n.saturating_sub(1)];
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let tiny = f64::MIN_POSITIVE.sqrt();
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if n > 0 && d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        TridiagonalLu { d, du, du2, dl, swapped }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}
