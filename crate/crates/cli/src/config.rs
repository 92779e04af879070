use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use surface_cnot::driving::DriveParams;
use surface_cnot::dynamics::{DetuningAxis, MAX_SWEEP_DETUNING};
use surface_cnot::gate::{GateInput, MAX_KAPPA1_RATIO};
use surface_cnot::spectrum::MIN_GRID_POINTS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Spectrum,
    DecayTable,
    Trajectories,
    SchemeCompare,
    DetuningSweep,
    GateReport,
    DissipationSweep,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Spectrum,
        Experiment::DecayTable,
        Experiment::Trajectories,
        Experiment::SchemeCompare,
        Experiment::DetuningSweep,
        Experiment::GateReport,
        Experiment::DissipationSweep,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Experiment::Spectrum => "spectrum",
            Experiment::DecayTable => "decay_table",
            Experiment::Trajectories => "trajectories",
            Experiment::SchemeCompare => "scheme_compare",
            Experiment::DetuningSweep => "detuning_sweep",
            Experiment::GateReport => "gate_report",
            Experiment::DissipationSweep => "dissipation_sweep",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.tag() == tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Physical parameters in SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Physical {
    /// Total Rabi frequency, 1/s.
    pub omega: f64,
    /// Decay rate of `|01>`, 1/s.
    pub kappa1: f64,
    pub ratio_kappa2: f64,
    pub ratio_kappa3: f64,
    /// Single- and two-photon detunings, 1/s.
    pub detuning1: f64,
    pub detuning2: f64,
}

impl Default for Physical {
    fn default() -> Self {
        Physical {
            omega: 1e9,
            kappa1: 1e6,
            ratio_kappa2: 0.3439,
            ratio_kappa3: 0.1520,
            detuning1: 0.0,
            detuning2: 0.0,
        }
    }
}

impl Physical {
    /// Drive parameters in units of `omega` with equal Rabi frequencies.
    pub fn drive(&self) -> DriveParams {
        let k1 = self.kappa1 / self.omega;
        DriveParams::resonant(k1, self.ratio_kappa2 * k1, self.ratio_kappa3 * k1)
            .with_detunings(self.detuning1 / self.omega, self.detuning2 / self.omega)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumSpec {
    /// Holding fields, V/cm.
    pub fields_v_per_cm: Vec<f64>,
    pub n_max: usize,
    /// Grid points of the finite-difference solver; `None` uses the library
    /// default.
    pub points: Option<usize>,
}

impl Default for SpectrumSpec {
    fn default() -> Self {
        SpectrumSpec {
            fields_v_per_cm: vec![0.0, 100.0, 200.0, 500.0, 1000.0],
            n_max: 6,
            points: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrajectorySpec {
    pub initial: GateInput,
    /// End of the sampled window in `Omega t`.
    pub omega_t_end: f64,
    pub samples: usize,
    /// Also emit real and imaginary parts of every coherence.
    pub coherences: bool,
}

impl Default for TrajectorySpec {
    fn default() -> Self {
        TrajectorySpec {
            initial: GateInput::S10,
            omega_t_end: 2.0 * std::f64::consts::PI,
            samples: 201,
            coherences: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    /// `None` sweeps both axes.
    pub axis: Option<DetuningAxis>,
    /// Range in units of `omega`.
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            axis: None,
            min: -0.3,
            max: 0.3,
            points: 61,
        }
    }
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points).map(|k| self.min + step * k as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DissipationSpec {
    pub kappa1_over_omega_max: f64,
    pub points: usize,
}

impl Default for DissipationSpec {
    fn default() -> Self {
        DissipationSpec {
            kappa1_over_omega_max: 0.01,
            points: 51,
        }
    }
}

impl DissipationSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![0.0];
        }
        let step = self.kappa1_over_omega_max / (self.points - 1) as f64;
        (0..self.points).map(|k| step * k as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    /// Directory receiving `<experiment>.<ext>`.
    pub dir: PathBuf,
    pub format: Format,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            dir: PathBuf::from("."),
            format: Format::Csv,
        }
    }
}

/// Everything a run depends on. The experiment tag is kept as text so that
/// an unknown tag is reported by [`ExperimentConfig::validate`] rather than
/// by the parser.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub physical: Physical,
    pub spectrum: SpectrumSpec,
    pub trajectory: TrajectorySpec,
    pub sweep: SweepSpec,
    pub dissipation: DissipationSpec,
    pub output: OutputSpec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: Experiment::GateReport.tag().into(),
            physical: Physical::default(),
            spectrum: SpectrumSpec::default(),
            trajectory: TrajectorySpec::default(),
            sweep: SweepSpec::default(),
            dissipation: DissipationSpec::default(),
            output: OutputSpec::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }

    pub fn kind(&self) -> Option<Experiment> {
        Experiment::from_tag(&self.experiment)
    }

    /// Every constraint the config breaks; empty iff a run would accept it.
    pub fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.kind().is_none() {
            let known: Vec<&str> = Experiment::ALL.iter().map(|e| e.tag()).collect();
            v.push(format!(
                "experiment: unknown tag \"{}\" (expected one of {})",
                self.experiment,
                known.join(", ")
            ));
        }

        let p = &self.physical;
        positive(&mut v, "physical.omega", p.omega);
        non_negative(&mut v, "physical.kappa1", p.kappa1);
        non_negative(&mut v, "physical.ratio_kappa2", p.ratio_kappa2);
        non_negative(&mut v, "physical.ratio_kappa3", p.ratio_kappa3);
        for (name, d) in [("physical.detuning1", p.detuning1), ("physical.detuning2", p.detuning2)] {
            if !d.is_finite() {
                v.push(format!("{name} must be finite"));
            } else if p.omega > 0.0 && d.abs() > MAX_SWEEP_DETUNING * p.omega {
                v.push(format!(
                    "{name}: |Delta| / omega = {} exceeds the dynamics bound {MAX_SWEEP_DETUNING}",
                    d.abs() / p.omega
                ));
            }
        }

        let s = &self.spectrum;
        if s.fields_v_per_cm.is_empty() {
            v.push("spectrum.fields_v_per_cm must not be empty".into());
        }
        if s.fields_v_per_cm.iter().any(|f| !f.is_finite()) {
            v.push("spectrum.fields_v_per_cm must be finite".into());
        }
        if !(2..=6).contains(&s.n_max) {
            v.push(format!("spectrum.n_max must lie in 2..=6, got {}", s.n_max));
        }
        if let Some(n) = s.points {
            if n < MIN_GRID_POINTS {
                v.push(format!("spectrum.points must be >= {MIN_GRID_POINTS}, got {n}"));
            }
        }

        let t = &self.trajectory;
        positive(&mut v, "trajectory.omega_t_end", t.omega_t_end);
        if t.samples < 2 {
            v.push("trajectory.samples must be >= 2".into());
        }

        let w = &self.sweep;
        if w.points == 0 {
            v.push("sweep.points must be >= 1".into());
        }
        if !(w.min.is_finite() && w.max.is_finite()) || w.min > w.max {
            v.push("sweep.min and sweep.max must be finite with min <= max".into());
        }
        for (name, x) in [("sweep.min", w.min), ("sweep.max", w.max)] {
            if x.abs() > MAX_SWEEP_DETUNING {
                v.push(format!(
                    "{name}: |Delta| / omega = {} exceeds the dynamics bound {MAX_SWEEP_DETUNING}",
                    x.abs()
                ));
            }
        }

        let d = &self.dissipation;
        if !(0.0..=MAX_KAPPA1_RATIO).contains(&d.kappa1_over_omega_max) {
            v.push(format!(
                "dissipation.kappa1_over_omega_max must lie in [0, {MAX_KAPPA1_RATIO}]"
            ));
        }
        if d.points == 0 {
            v.push("dissipation.points must be >= 1".into());
        }
        v
    }
}

fn positive(v: &mut Vec<String>, name: &str, x: f64) {
    if !(x > 0.0 && x.is_finite()) {
        v.push(format!("{name} must be > 0"));
    }
}

fn non_negative(v: &mut Vec<String>, name: &str, x: f64) {
    if !(x >= 0.0 && x.is_finite()) {
        v.push(format!("{name} must be >= 0"));
    }
}
