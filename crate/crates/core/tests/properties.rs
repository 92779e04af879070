use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use nalgebra::DMatrix;
use proptest::prelude::*;

use surface_cnot::driving::{build_h_rotating, DriveParams};
use surface_cnot::dynamics::{embed, evolve_master, lindblad_rhs, PulseSchedule};
use surface_cnot::expm::matrix_exponential;
use surface_cnot::gate::{analytic_ur, ideal_cnot, simulated_gate};
use surface_cnot::quantum::{gate_fidelity, ket_to_density, state_fidelity, DensityMatrix, Ket, Operator};
use surface_cnot::C64;

fn ket(dim: usize) -> impl Strategy<Value = Ket> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter("non-zero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|v| {
            let amps: Vec<C64> = v.into_iter().map(|(a, b)| C64::new(a, b)).collect();
            Ket::from_slice(&amps).normalized()
        })
}

fn mixed(dim: usize) -> impl Strategy<Value = DensityMatrix> {
    prop::collection::vec((ket(dim), 0.05f64..1.0), 1..=dim).prop_map(move |parts| {
        let total: f64 = parts.iter().map(|(_, w)| w).sum();
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        for (k, w) in parts {
            m += ket_to_density(&k).into_inner() * C64::new(w / total, 0.0);
        }
        DensityMatrix::new(m).unwrap()
    })
}

fn drive() -> impl Strategy<Value = DriveParams> {
    (0.1f64..1.0, 0.1f64..1.0, -0.3f64..0.3, -0.3f64..0.3, 0.0f64..0.05, 0.0f64..0.05, 0.0f64..0.05)
        .prop_map(|(r1, r2, d1, d2, k1, k2, k3)| DriveParams {
            rabi_1: r1,
            rabi_2: r2,
            detuning_1: d1,
            detuning_2: d2,
            kappa_1: k1,
            kappa_2: k2,
            kappa_3: k3,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pure_state_fidelity_is_overlap(a in ket(4), b in ket(4)) {
        let f = state_fidelity(&ket_to_density(&a), &ket_to_density(&b)).unwrap();
        assert_abs_diff_eq!(f, a.inner(&b).norm_sqr(), epsilon = 1e-10);
    }

    #[test]
    fn mixed_fidelity_is_bounded_and_symmetric(a in mixed(3), b in mixed(3)) {
        let f = state_fidelity(&a, &b).unwrap();
        let g = state_fidelity(&b, &a).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        assert_abs_diff_eq!(f, g, epsilon = 1e-9);
    }

    #[test]
    fn outer_products_are_physical(k in ket(4)) {
        let rho = ket_to_density(&k);
        prop_assert!(rho.is_hermitian(1e-15));
        prop_assert!(rho.min_eigenvalue() >= -1e-12);
    }

    #[test]
    fn gate_fidelity_ignores_global_phase(p in drive(), phase in 0.0f64..(2.0 * PI)) {
        let u = simulated_gate(&p).unwrap();
        let shifted = Operator::new(u.matrix() * C64::from_polar(1.0, phase)).unwrap();
        let f0 = gate_fidelity(&u, &ideal_cnot()).unwrap();
        let f1 = gate_fidelity(&shifted, &ideal_cnot()).unwrap();
        assert_abs_diff_eq!(f0, f1, epsilon = 1e-12);
    }

    #[test]
    fn hermitian_propagators_are_unitary(p in drive(), t in 0.0f64..20.0) {
        let minus_i_h = Operator::new(build_h_rotating(&p).matrix() * C64::new(0.0, -1.0)).unwrap();
        let u = matrix_exponential(&minus_i_h, t).unwrap();
        prop_assert!(u.is_unitary(1e-10));
    }

    #[test]
    fn dephasing_keeps_populations(rho in mixed(4), k in prop::array::uniform3(0.0f64..3.0)) {
        let d = lindblad_rhs(&rho, &Operator::zeros(4), k).unwrap();
        for i in 0..4 {
            prop_assert!(d.matrix()[(i, i)].norm() < 1e-12);
        }
    }

    #[test]
    fn trajectories_stay_physical(p in drive(), rho in mixed(4), total in 0.5f64..12.0) {
        let s = PulseSchedule::coherent(p, total).unwrap();
        let ts: Vec<f64> = (0..=10).map(|k| total * k as f64 / 10.0).collect();
        let traj = evolve_master(&rho, &s, &ts).unwrap();
        for st in traj.states() {
            prop_assert!(st.check_physical().is_ok());
        }
        // the |00> block never moves
        let h = embed(&build_h_rotating(&p));
        prop_assert!(h.matrix().row(0).iter().all(|z| z.norm() == 0.0));
        let last = traj.final_state().unwrap();
        assert_abs_diff_eq!(last.matrix()[(0, 0)].re, rho.matrix()[(0, 0)].re, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_identity(k1 in 0.0f64..0.1, k2 in 0.0f64..0.1) {
        let g = analytic_ur(k1, k2, 1.0).unwrap();
        let rhs = (-(2.0 * k1 + k2) * PI / 4.0).exp() * (-k2 * PI / 2.0).exp();
        prop_assert!((g.c * g.c - g.b * g.b - rhs).abs() <= 1e-15);
        prop_assert!(g.b < g.c && g.c <= 1.0);
    }
}
