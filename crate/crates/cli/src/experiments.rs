use serde::Serialize;
use serde_json::{json, Value};
use surface_cnot::driving::{L01, L10, L11};
use surface_cnot::dynamics::{
    analytic_evolution, detuning_sweep, evolve_master, peak_transfer_search, DetuningAxis,
    InitialState, PulseSchedule, Scheme,
};
use surface_cnot::gate::{fidelity_vs_dissipation, output_density, simulate_cnot, GateInput};
use surface_cnot::quantum::{ket_to_density, state_fidelity, DensityMatrix};
use surface_cnot::spectrum::{
    analytic_state, decay_rate_ratios, expected_z, solve_stark_spectrum, GridSpec,
    PhysicalConstants, SEState, V_PER_CM,
};

use crate::config::{Experiment, ExperimentConfig};

const MEV: f64 = 1.602176634e-22;

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

/// Result of one experiment: a table plus optional structured extras that
/// only the JSON format carries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Artifact {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra: Option<Value>,
}

impl Artifact {
    fn new(columns: &[&str]) -> Self {
        Artifact {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            extra: None,
        }
    }
}

/// Numerical failure with the experiment step that raised it.
#[derive(Debug)]
pub struct RunError {
    pub context: String,
    pub source: surface_cnot::Error,
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.context, self.source)
    }
}

impl std::error::Error for RunError {}

trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T, RunError>;
}

impl<T> Context<T> for surface_cnot::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T, RunError> {
        self.map_err(|source| RunError {
            context: what(),
            source,
        })
    }
}

/// Runs a validated config.
pub fn run(cfg: &ExperimentConfig) -> Result<Artifact, RunError> {
    let kind = cfg.kind().expect("validated config");
    match kind {
        Experiment::Spectrum => spectrum(cfg),
        Experiment::DecayTable => decay_table(cfg),
        Experiment::Trajectories => trajectories(cfg),
        Experiment::SchemeCompare => scheme_compare(cfg),
        Experiment::DetuningSweep => sweep(cfg),
        Experiment::GateReport => gate_report(cfg),
        Experiment::DissipationSweep => dissipation(cfg),
    }
}

fn grid(cfg: &ExperimentConfig, c: &PhysicalConstants) -> GridSpec {
    let g = GridSpec::for_levels(cfg.spectrum.n_max, c);
    match cfg.spectrum.points {
        Some(n) => g.with_points(n),
        None => g,
    }
}

fn spectrum(cfg: &ExperimentConfig) -> Result<Artifact, RunError> {
    let c = PhysicalConstants::HELIUM;
    let n_max = cfg.spectrum.n_max;
    let mut art = Artifact::new(&["field_v_per_cm", "n", "energy_mev", "mean_z_nm"]);
    for &f in &cfg.spectrum.fields_v_per_cm {
        let ctx = || format!("spectrum at {f} V/cm");
        let states: Vec<SEState> = if f == 0.0 {
            (1..=n_max)
                .map(|n| analytic_state(n, &c))
                .collect::<surface_cnot::Result<_>>()
                .context(ctx)?
        } else {
            solve_stark_spectrum(f * V_PER_CM, n_max, grid(cfg, &c), &c).context(ctx)?
        };
        for s in &states {
            let z = expected_z(s).context(ctx)?;
            art.rows.push(vec![
                f.into(),
                (s.n as f64).into(),
                (s.energy / MEV).into(),
                (z * 1e9).into(),
            ]);
        }
    }
    Ok(art)
}

fn decay_table(cfg: &ExperimentConfig) -> Result<Artifact, RunError> {
    let c = PhysicalConstants::HELIUM;
    let n_max = cfg.spectrum.n_max;
    let names: Vec<String> = (3..=n_max).map(|n| format!("kappa{n}_over_kappa2")).collect();
    let mut cols = vec!["field_v_per_cm"];
    cols.extend(names.iter().map(String::as_str));
    let mut art = Artifact::new(&cols);
    for &f in &cfg.spectrum.fields_v_per_cm {
        let model = decay_rate_ratios(f * V_PER_CM, n_max, Some(grid(cfg, &c)), &c)
            .context(|| format!("decay rates at {f} V/cm"))?;
        let mut row = vec![Cell::from(f)];
        row.extend((3..=n_max).map(|n| Cell::from(model.ratio(n).expect("n <= n_max"))));
        art.rows.push(row);
    }
    Ok(art)
}

fn analytic_initial(g: GateInput) -> Option<InitialState> {
    match g {
        GateInput::S10 => Some(InitialState::S10),
        GateInput::S01 => Some(InitialState::S01),
        GateInput::S11 => Some(InitialState::S11),
        _ => None,
    }
}

fn trajectories(cfg: &ExperimentConfig) -> Result<Artifact, RunError> {
    let p = cfg.physical.drive();
    let spec = &cfg.trajectory;
    let end = spec.omega_t_end;
    let ts: Vec<f64> = (0..spec.samples)
        .map(|k| end * k as f64 / (spec.samples - 1) as f64)
        .collect();
    let ctx = || "master-equation trajectory".to_string();
    let schedule = PulseSchedule::coherent(p, end).context(ctx)?;
    let rho0 = ket_to_density(&spec.initial.ket());
    let traj = evolve_master(&rho0, &schedule, &ts).context(ctx)?;

    let labels = ["00", "01", "10", "11"];
    let mut cols: Vec<String> = vec!["omega_t".into(), "t_s".into()];
    cols.extend(labels.iter().map(|l| format!("p{l}")));
    // closed forms exist for the single driven levels only, and need the
    // perturbative regime
    let closed = analytic_initial(spec.initial)
        .filter(|&s| analytic_evolution(s, &p, 0.0).is_ok());
    if closed.is_some() {
        cols.extend(["analytic_p01", "analytic_p10", "analytic_p11"].map(String::from));
    }
    if spec.coherences {
        for i in 0..4 {
            for j in i + 1..4 {
                cols.push(format!("re_rho_{}_{}", labels[i], labels[j]));
                cols.push(format!("im_rho_{}_{}", labels[i], labels[j]));
            }
        }
    }

    let mut art = Artifact {
        columns: cols,
        rows: Vec::with_capacity(ts.len()),
        extra: None,
    };
    for (t, rho) in ts.iter().zip(traj.states()) {
        let m = rho.matrix();
        let mut row: Vec<Cell> = vec![(*t).into(), (t / cfg.physical.omega).into()];
        row.extend((0..4).map(|i| Cell::from(m[(i, i)].re)));
        if let Some(s) = closed {
            let k = analytic_evolution(s, &p, *t).context(|| "closed-form trajectory".into())?;
            for l in [L01, L10, L11] {
                row.push(k.amplitudes()[l].norm_sqr().into());
            }
        }
        if spec.coherences {
            for i in 0..4 {
                for j in i + 1..4 {
                    row.push(m[(i, j)].re.into());
                    row.push(m[(i, j)].im.into());
                }
            }
        }
        art.rows.push(row);
    }
    Ok(art)
}

fn scheme_compare(cfg: &ExperimentConfig) -> Result<Artifact, RunError> {
    let p = cfg.physical.drive();
    let initial = DensityMatrix::basis(3, L10);
    let target = DensityMatrix::basis(3, L11);
    let two_step_period = PulseSchedule::nominal_period(Scheme::TwoStep, &p);
    let samples = cfg.trajectory.samples;
    let ts: Vec<f64> = (0..samples)
        .map(|k| two_step_period * k as f64 / (samples - 1) as f64)
        .collect();

    let mut curves = Vec::new();
    for scheme in [Scheme::Coherent, Scheme::TwoStep] {
        let ctx = || format!("{scheme:?} trajectory");
        let s = PulseSchedule::of_scheme(scheme, p, two_step_period).context(ctx)?;
        let traj = evolve_master(&initial, &s, &ts).context(ctx)?;
        let f = traj
            .states()
            .iter()
            .map(|rho| state_fidelity(&target, rho))
            .collect::<surface_cnot::Result<Vec<f64>>>()
            .context(ctx)?;
        curves.push(f);
    }
    let mut peaks = Vec::new();
    for scheme in [Scheme::Coherent, Scheme::TwoStep] {
        let pk = peak_transfer_search(scheme, &p, &initial, &target)
            .context(|| format!("{scheme:?} peak search"))?;
        peaks.push(json!({ "scheme": scheme, "omega_t_peak": pk.t_peak, "fidelity": pk.fidelity }));
    }

    let mut art = Artifact::new(&["omega_t", "fidelity_coherent", "fidelity_two_step"]);
    for (k, t) in ts.iter().enumerate() {
        art.rows.push(vec![(*t).into(), curves[0][k].into(), curves[1][k].into()]);
    }
    art.extra = Some(json!({ "peaks": peaks }));
    Ok(art)
}

fn sweep(cfg: &ExperimentConfig) -> Result<Artifact, RunError> {
    let p = cfg.physical.drive();
    let values = cfg.sweep.values();
    let axes = match cfg.sweep.axis {
        Some(a) => vec![a],
        None => vec![DetuningAxis::Delta1, DetuningAxis::Delta2],
    };
    let mut art = Artifact::new(&["axis", "detuning_over_omega", "omega_t_peak", "fidelity"]);
    for axis in axes {
        let pts = detuning_sweep(axis, &values, &p).context(|| format!("{axis:?} sweep"))?;
        let name = match axis {
            DetuningAxis::Delta1 => "delta1",
            DetuningAxis::Delta2 => "delta2",
        };
        for pt in pts {
            art.rows.push(vec![name.into(), pt.detuning.into(), pt.t_peak.into(), pt.fidelity.into()]);
        }
    }
    Ok(art)
}

fn gate_report(cfg: &ExperimentConfig) -> Result<Artifact, RunError> {
    let p = cfg.physical.drive();
    let (_, report) = simulate_cnot(&p).context(|| "gate simulation".into())?;
    let mut art = Artifact::new(&["input", "target", "fidelity"]);
    for row in &report.truth_table {
        art.rows.push(vec![row.input.as_str().into(), row.target.as_str().into(), row.fidelity.into()]);
    }
    art.rows.push(vec!["gate".into(), "ideal_cnot".into(), report.gate_fidelity.into()]);
    art.rows.push(vec![
        "simulated_gate".into(),
        "ideal_cnot".into(),
        report.simulated_gate_fidelity.into(),
    ]);

    let mut densities = Vec::new();
    for input in [GateInput::PlusZero, GateInput::PlusOne] {
        let rho = output_density(&p, input).context(|| format!("output of {}", input.label()))?;
        let m = rho.matrix();
        let re: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| m[(i, j)].re).collect()).collect();
        let im: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| m[(i, j)].im).collect()).collect();
        densities.push(json!({ "input": input.label(), "re": re, "im": im }));
    }
    art.extra = Some(json!({ "report": report, "output_densities": densities }));
    Ok(art)
}

fn dissipation(cfg: &ExperimentConfig) -> Result<Artifact, RunError> {
    let ph = &cfg.physical;
    let pts = fidelity_vs_dissipation(&cfg.dissipation.values(), ph.ratio_kappa2, ph.ratio_kappa3)
        .context(|| "dissipation sweep".into())?;
    let mut art = Artifact::new(&["kappa1_over_omega", "gate_fidelity"]);
    for pt in pts {
        art.rows.push(vec![pt.kappa1_over_omega.into(), pt.fidelity.into()]);
    }
    Ok(art)
}
