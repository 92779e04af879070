//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line; exits non-zero if any
//! criterion fails.

use std::f64::consts::{PI, SQRT_2};
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use surface_cnot::driving::{
    build_h_nonhermitian, dressed_basis, exact_eigenvalues, pair_eigenvalues,
    perturbative_eigenvalues, DriveParams, L01, L10, L11,
};
use surface_cnot::dynamics::{
    analytic_evolution, default_sweep_values, detuning_sweep, evolve_master, liouvillian,
    peak_transfer_search, DetuningAxis, Dissipator, InitialState, PulseSchedule, Scheme,
};
use surface_cnot::gate::{analytic_ur, ideal_cnot, simulate_cnot, simulated_gate};
use surface_cnot::quantum::{gate_fidelity, ket_to_density, DensityMatrix, Ket, Operator};
use surface_cnot::spectrum::{
    analytic_wavefunction, decay_rate_ratios, quadrature, PhysicalConstants, V_PER_CM,
};
use surface_cnot::C64;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "gate fidelity", budget: Duration::from_secs(1), run: gate_fidelity_check },
        Criterion { id: 2, name: "input-state fidelity table", budget: Duration::from_secs(10), run: input_state_table },
        Criterion { id: 3, name: "decay-ratio table", budget: Duration::from_secs(60), run: decay_ratio_table },
        Criterion { id: 4, name: "analytic vs master populations", budget: Duration::from_secs(5), run: oracle_triangle },
        Criterion { id: 5, name: "transfer timing", budget: Duration::from_secs(10), run: transfer_timing },
        Criterion { id: 6, name: "perturbative eigenvalue convergence", budget: Duration::from_secs(1), run: quadratic_convergence },
        Criterion { id: 7, name: "property suites", budget: Duration::from_secs(120), run: property_suites },
        Criterion { id: 8, name: "detuning sweep shape", budget: Duration::from_secs(60), run: sweep_shape },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; too slow: {elapsed:.2?} > {:?}", c.budget)),
            Err(d) => (false, d),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {} [{}] {}: {} ({:.2?})",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.name,
            detail,
            elapsed
        );
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn gate_fidelity_check() -> Outcome {
    let p = DriveParams::reference();
    let closed = analytic_ur(p.kappa_1, p.kappa_2, p.omega()).map_err(err)?.fidelity();
    let simulated = gate_fidelity(&simulated_gate(&p).map_err(err)?, &ideal_cnot()).map_err(err)?;
    for (what, f) in [("closed form", closed), ("simulated", simulated)] {
        ensure((f - 0.9989).abs() <= 5e-4, || format!("{what} F = {f:.6}"))?;
    }
    Ok(format!("closed form {closed:.6}, simulated {simulated:.6}"))
}

fn input_state_table() -> Outcome {
    let expected = [1.0, 0.9987, 0.9987, 0.9987, 0.9990, 0.9980];
    let (_, report) = simulate_cnot(&DriveParams::reference()).map_err(err)?;
    let got: Vec<f64> = report.truth_table.iter().map(|r| r.fidelity).collect();
    for ((row, g), e) in report.truth_table.iter().zip(&got).zip(expected) {
        ensure((g - e).abs() <= 5e-4, || format!("{}: {g:.6} vs {e}", row.input))?;
    }
    let shown: Vec<String> = got.iter().map(|f| format!("{f:.4}")).collect();
    Ok(shown.join(" "))
}

/// Zero-field ratios from `<1/z^2>_n = 2 / (n^3 r_B^2)` and `E_n = -R/n^2`.
fn closed_form_ratio(n: usize) -> f64 {
    let term = |n: usize| -> f64 {
        let nf = n as f64;
        (1..n)
            .map(|l| {
                let lf = l as f64;
                lf.powi(-3) * nf.powi(-3) * (lf.powi(-2) - nf.powi(-2)).powf(2.0 / 3.0)
            })
            .sum()
    };
    term(n) / term(2)
}

fn decay_ratio_table() -> Outcome {
    let c = PhysicalConstants::HELIUM;
    let rows: [(f64, [f64; 4]); 5] = [
        (0.0, [0.3439, 0.1520, 0.0795, 0.0465]),
        (100.0, [0.9807, 1.0050, 1.0442, 1.0890]),
        (200.0, [1.1260, 1.2418, 1.3552, 1.4663]),
        (500.0, [1.3233, 1.5950, 1.8487, 2.0927]),
        (1000.0, [1.4701, 1.8800, 2.2689, 2.6477]),
    ];
    let mut worst_rel: f64 = 0.0;
    for (field, paper) in rows {
        let model = decay_rate_ratios(field * V_PER_CM, 6, None, &c).map_err(err)?;
        for (k, &want) in paper.iter().enumerate() {
            let n = k + 3;
            let got = model.ratio(n).ok_or("missing level")?;
            if field == 0.0 {
                ensure((got - want).abs() <= 1e-3, || format!("0 V/cm n={n}: {got:.5} vs {want}"))?;
                let oracle = closed_form_ratio(n);
                ensure((got - oracle).abs() <= 1e-6, || {
                    format!("0 V/cm n={n}: {got:.7} vs closed form {oracle:.7}")
                })?;
            } else {
                let rel = (got - want).abs() / want;
                worst_rel = worst_rel.max(rel);
                ensure(rel <= 0.02, || format!("{field} V/cm n={n}: {got:.4} vs {want}"))?;
            }
        }
    }
    Ok(format!("worst relative deviation with field {worst_rel:.2e}"))
}

fn oracle_triangle() -> Outcome {
    let p = DriveParams::reference();
    let t_end = 2.0 * PI;
    let ts: Vec<f64> = (0..=200).map(|k| t_end * k as f64 / 200.0).collect();
    let schedule = PulseSchedule::coherent(p, t_end).map_err(err)?;
    let mut worst: f64 = 0.0;
    for s in InitialState::ALL {
        let rho0 = DensityMatrix::basis(3, s.level());
        let traj = evolve_master(&rho0, &schedule, &ts).map_err(err)?;
        for (t, rho) in ts.iter().zip(traj.states()) {
            let k = analytic_evolution(s, &p, *t).map_err(err)?;
            for l in [L01, L10, L11] {
                let d = (k.amplitudes()[l].norm_sqr() - rho.matrix()[(l, l)].re).abs();
                worst = worst.max(d);
            }
        }
    }
    ensure(worst <= 5e-3, || format!("max deviation {worst:.2e}"))?;
    Ok(format!("max population deviation {worst:.2e}"))
}

fn transfer_timing() -> Outcome {
    let p = DriveParams::reference();
    let initial = DensityMatrix::basis(3, L10);
    let target = DensityMatrix::basis(3, L11);
    let coh = peak_transfer_search(Scheme::Coherent, &p, &initial, &target).map_err(err)?;
    let two = peak_transfer_search(Scheme::TwoStep, &p, &initial, &target).map_err(err)?;
    let rel_c = (coh.t_peak - 2.0 * PI).abs() / (2.0 * PI);
    let rel_t = (two.t_peak - 2.0 * SQRT_2 * PI).abs() / (2.0 * SQRT_2 * PI);
    ensure(rel_c <= 0.01, || format!("coherent peak at {:.4}", coh.t_peak))?;
    ensure(rel_t <= 0.01, || format!("two-step peak at {:.4}", two.t_peak))?;
    ensure(coh.fidelity > two.fidelity, || {
        format!("coherent {:.6} not above two-step {:.6}", coh.fidelity, two.fidelity)
    })?;
    Ok(format!(
        "coherent t={:.4}pi F={:.6}; two-step t={:.4}pi F={:.6}",
        coh.t_peak / PI,
        coh.fidelity,
        two.t_peak / PI,
        two.fidelity
    ))
}

fn quadratic_convergence() -> Outcome {
    let error_at = |d2: f64| -> Result<f64, String> {
        let p = DriveParams::lossless().with_detunings(0.0, d2);
        let approx = perturbative_eigenvalues(&p).map_err(err)?;
        let (_, e) = pair_eigenvalues(&approx, &exact_eigenvalues(&p));
        Ok(e)
    };
    let steps = [0.08, 0.04, 0.02, 0.01];
    let errs = steps.iter().map(|&d| error_at(d)).collect::<Result<Vec<_>, _>>()?;
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[0] / w[1]).collect();
    for r in &ratios {
        ensure(*r >= 3.5, || format!("error ratios {ratios:?}"))?;
    }
    Ok(format!("error ratios {:.2} {:.2} {:.2}", ratios[0], ratios[1], ratios[2]))
}

fn random_ket(rng: &mut ChaCha8Rng, dim: usize) -> Ket {
    let amps: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Ket::from_slice(&amps).normalized()
}

fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let rank = rng.gen_range(1..=dim);
    let weights: Vec<f64> = (0..rank).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for w in weights {
        m += ket_to_density(&random_ket(rng, dim)).into_inner() * C64::new(w / total, 0.0);
    }
    DensityMatrix::new(m).expect("square")
}

fn random_params(rng: &mut ChaCha8Rng) -> DriveParams {
    DriveParams {
        rabi_1: rng.gen_range(0.2..1.0),
        rabi_2: rng.gen_range(0.2..1.0),
        detuning_1: rng.gen_range(-0.3..0.3),
        detuning_2: rng.gen_range(-0.3..0.3),
        kappa_1: rng.gen_range(0.0..0.05),
        kappa_2: rng.gen_range(0.0..0.05),
        kappa_3: rng.gen_range(0.0..0.05),
    }
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // trace, Hermiticity and positivity along random trajectories
    let mut worst_trace: f64 = 0.0;
    let mut worst_eig: f64 = 0.0;
    for _ in 0..50 {
        let p = random_params(&mut rng);
        let dim = if rng.gen_bool(0.5) { 3 } else { 4 };
        let scheme = if rng.gen_bool(0.5) { Scheme::Coherent } else { Scheme::TwoStep };
        let total = rng.gen_range(1.0..15.0);
        let schedule = PulseSchedule::of_scheme(scheme, p, total).map_err(err)?;
        let ts: Vec<f64> = (0..=25).map(|k| total * k as f64 / 25.0).collect();
        let traj = evolve_master(&random_density(&mut rng, dim), &schedule, &ts).map_err(err)?;
        for rho in traj.states() {
            worst_trace = worst_trace.max((rho.trace() - 1.0).abs());
            worst_eig = worst_eig.min(rho.min_eigenvalue());
            ensure(rho.is_hermitian(1e-12), || "Hermiticity lost".into())?;
        }
    }
    ensure(worst_trace <= 1e-9, || format!("trace drift {worst_trace:e}"))?;
    ensure(worst_eig >= -1e-9, || format!("eigenvalue {worst_eig:e}"))?;

    // populations are conserved by dephasing alone
    for _ in 0..20 {
        let dim = if rng.gen_bool(0.5) { 3 } else { 4 };
        let rates = [0, 1, 2].map(|_| rng.gen_range(0.0..2.0));
        let l = liouvillian(&Operator::zeros(dim), rates, Dissipator::Dephasing).map_err(err)?;
        let rho = random_density(&mut rng, dim);
        let t = rng.gen_range(0.0..20.0);
        let v = DVector::from_iterator(dim * dim, rho.matrix().transpose().iter().copied());
        let out = surface_cnot::expm::expm(&(l * C64::new(t, 0.0))) * v;
        for i in 0..dim {
            let d = (out[i * dim + i] - rho.matrix()[(i, i)]).norm();
            ensure(d <= 1e-12, || format!("population moved by {d:e}"))?;
        }
    }

    // dark state: no |01> amplitude and zero energy at delta_2 = 0
    for _ in 0..50 {
        let p = DriveParams {
            detuning_2: 0.0,
            kappa_2: 0.0,
            ..random_params(&mut rng)
        };
        let d = dressed_basis(&p).map_err(err)?;
        ensure(d.a1.amplitudes()[L01].norm() == 0.0, || "dark state has |01> weight".into())?;
        let ha = build_h_nonhermitian(&p).apply(&d.a1).map_err(err)?;
        ensure(ha.norm_sqr().sqrt() <= 1e-14, || "dark state is not an eigenstate".into())?;
    }

    // orthonormality of the closed-form states
    let c = PhysicalConstants::HELIUM;
    let r_b = c.bohr_radius();
    let mut worst_gram: f64 = 0.0;
    for m in 1..=6 {
        for n in m..=6 {
            let g = quadrature::integrate(
                |x| {
                    let z = x * r_b;
                    analytic_wavefunction(m, z, &c).unwrap() * analytic_wavefunction(n, z, &c).unwrap() * r_b
                },
                0.0,
                1500.0,
                1e-13,
            )
            .map_err(err)?;
            let want = if m == n { 1.0 } else { 0.0 };
            worst_gram = worst_gram.max((g - want).abs());
        }
    }
    ensure(worst_gram <= 1e-8, || format!("Gram deviation {worst_gram:e}"))?;

    // c^2 - b^2 = a exp(-k2 pi / (2 Omega))
    let mut worst_id: f64 = 0.0;
    for _ in 0..200 {
        let k1 = rng.gen_range(0.0..0.1);
        let k2 = rng.gen_range(0.0..0.1);
        let g = analytic_ur(k1, k2, 1.0).map_err(err)?;
        let rhs = (-(2.0 * k1 + k2) * PI / 4.0).exp() * (-k2 * PI / 2.0).exp();
        worst_id = worst_id.max((g.c * g.c - g.b * g.b - rhs).abs());
    }
    ensure(worst_id <= 1e-15, || format!("c^2 - b^2 identity off by {worst_id:e}"))?;

    Ok(format!(
        "trace drift {worst_trace:.1e}, min eigenvalue {worst_eig:.1e}, Gram {worst_gram:.1e}, identity {worst_id:.1e}"
    ))
}

fn sweep_shape() -> Outcome {
    let p = DriveParams::reference();
    let values = default_sweep_values(p.omega());
    let centre = values.len() / 2;
    let mut summary = Vec::new();
    for axis in [DetuningAxis::Delta1, DetuningAxis::Delta2] {
        let pts = detuning_sweep(axis, &values, &p).map_err(err)?;
        let f: Vec<f64> = pts.iter().map(|s| s.fidelity).collect();
        let f0 = f[centre];
        ensure(f.iter().all(|&x| x <= f0), || format!("{axis:?}: maximum is off zero"))?;
        for k in centre..f.len() - 1 {
            ensure(f[k + 1] <= f[k], || format!("{axis:?}: rises at +{:.2}", values[k + 1]))?;
        }
        for k in (1..=centre).rev() {
            ensure(f[k - 1] <= f[k], || format!("{axis:?}: rises at {:.2}", values[k - 1]))?;
        }
        let drop = f0 - f[0].max(f[f.len() - 1]);
        ensure(drop >= 0.01, || format!("{axis:?}: drop only {drop:.4}"))?;
        summary.push(format!(
            "{axis:?} F(0)={f0:.4} F(-0.3)={:.4} F(+0.3)={:.4}",
            f[0],
            f[f.len() - 1]
        ));
    }
    Ok(summary.join("; "))
}
