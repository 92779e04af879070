use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use surface_cnot_cli::{output, run, Experiment, ExperimentConfig, Format};

#[derive(Parser)]
#[command(name = "surface-cnot", version, about = "CNOT gate simulations for electrons on helium")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Subcommand)]
enum Command {
    /// Stark-shifted surface-state energies and mean heights
    Spectrum,
    /// Spontaneous decay rates relative to n = 2
    Decay,
    /// Level populations during one drive period
    Evolve,
    /// Coherent vs two-step |10> -> |11> transfer
    Compare,
    /// Peak transfer fidelity against detuning
    SweepDetuning,
    /// Truth table and gate fidelity
    Gate,
    /// Gate fidelity against dissipation
    SweepDissipation,
    /// Run whatever experiment the config file names
    Run,
}

impl Command {
    fn experiment(&self) -> Option<Experiment> {
        Some(match self {
            Command::Spectrum => Experiment::Spectrum,
            Command::Decay => Experiment::DecayTable,
            Command::Evolve => Experiment::Trajectories,
            Command::Compare => Experiment::SchemeCompare,
            Command::SweepDetuning => Experiment::DetuningSweep,
            Command::Gate => Experiment::GateReport,
            Command::SweepDissipation => Experiment::DissipationSweep,
            Command::Run => return None,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct Overrides {
    /// JSON experiment config; flags below take precedence over it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Total Rabi frequency, 1/s
    #[arg(long, global = true)]
    omega: Option<f64>,
    /// Decay rate of n = 2, 1/s
    #[arg(long, global = true)]
    kappa1: Option<f64>,
    /// Holding field in V/cm; repeat for several
    #[arg(long = "ez", global = true)]
    fields: Vec<f64>,
    /// Number of sweep points
    #[arg(long, global = true)]
    points: Option<usize>,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(d) = &self.out {
            cfg.output.dir = d.clone();
        }
        if let Some(f) = self.format {
            cfg.output.format = match f {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
        }
        if let Some(w) = self.omega {
            cfg.physical.omega = w;
        }
        if let Some(k) = self.kappa1 {
            cfg.physical.kappa1 = k;
        }
        if !self.fields.is_empty() {
            cfg.spectrum.fields_v_per_cm = self.fields.clone();
        }
        if let Some(n) = self.points {
            cfg.sweep.points = n;
            cfg.dissipation.points = n;
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors share the exit status of invalid configs
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut cfg = match &cli.overrides.config {
        Some(path) => match ExperimentConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        None => ExperimentConfig::default(),
    };
    if let Some(kind) = cli.command.experiment() {
        cfg.experiment = kind.tag().into();
    }
    cli.overrides.apply(&mut cfg);

    let problems = cfg.validate();
    if !problems.is_empty() {
        for p in problems {
            eprintln!("error: {p}");
        }
        return ExitCode::from(1);
    }

    let artifact = match run(&cfg) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match output::write(&cfg, &artifact) {
        Ok(path) => {
            println!("{}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}
