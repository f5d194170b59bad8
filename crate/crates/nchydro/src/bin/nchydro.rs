//! Command-line front end. All configuration comes in through flags (no
//! environment variables); exit codes are 0 on success, 1 on computation
//! errors, 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nchydro::constants::{PhysicalConstants, ThetaUnit};
use nchydro::hydrogen::HydrogenModel;
use nchydro::perturbation::Mode;
use nchydro::report::{
    cmd_bound, cmd_report, cmd_selfcheck, cmd_shift, cmd_spectrum, BoundArgs, CommandOutput,
    OutputFormat, ReportArgs, SelfcheckArgs, ShiftArgs, SpectrumArgs,
};
use nchydro::{Error, Result};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ThetaUnitArg {
    /// Inverse square MeV.
    #[value(name = "MeV-2", alias = "mev-2")]
    MeV2,
    /// Inverse square GeV (1 GeV^-2 = 1e-6 MeV^-2).
    #[value(name = "GeV-2", alias = "gev-2")]
    GeV2,
}

impl From<ThetaUnitArg> for ThetaUnit {
    fn from(v: ThetaUnitArg) -> Self {
        match v {
            ThetaUnitArg::MeV2 => ThetaUnit::InverseMeV2,
            ThetaUnitArg::GeV2 => ThetaUnit::InverseGeV2,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Reproduce the printed second-order expressions verbatim, including
    /// their dropped S-state terms and mixed dimensions.
    Literal,
    /// Dimensionally consistent second-order theory of the squared-energy
    /// eigenproblem.
    Corrected,
}

impl From<ModeArg> for Mode {
    fn from(v: ModeArg) -> Self {
        match v {
            ModeArg::Literal => Mode::Literal,
            ModeArg::Corrected => Mode::Corrected,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    /// Single object with "config", "constants", and "rows" or "report".
    Json,
    /// '#'-prefixed provenance lines, a header row, then comma-separated
    /// data rows with '.' decimal points.
    Csv,
    /// Fixed-width table or narrative with the same provenance header.
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(v: FormatArg) -> Self {
        match v {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

/// Relativistic hydrogen levels with space-time noncommutativity
/// corrections: spectra, per-state shifts, and bounds on the deformation
/// strength from precision spectroscopy.
#[derive(Debug, Parser)]
#[command(name = "nchydro", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Level table: unperturbed energy, noncommutative shift, and shifted
    /// energy for every (n_r <= nr-max, l <= l-max, 0 <= m <= l).
    Spectrum {
        /// Largest radial quantum number n_r.
        #[arg(long, default_value_t = 2)]
        nr_max: u32,
        /// Largest orbital quantum number l.
        #[arg(long, default_value_t = 2)]
        l_max: u32,
        /// Noncommutativity strength theta (>= 0) in --theta-unit.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long, value_enum, default_value = "MeV-2")]
        theta_unit: ThetaUnitArg,
        #[arg(long, value_enum, default_value = "literal")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Shift breakdown (first order, level mixing, direct term) for one
    /// state at one theta.
    Shift {
        /// Spectroscopic label, e.g. 1S, 2S, 2P, 3D (m = 0).
        #[arg(long)]
        state: String,
        /// Noncommutativity strength theta (>= 0) in --theta-unit.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long, value_enum, default_value = "MeV-2")]
        theta_unit: ThetaUnitArg,
        #[arg(long, value_enum, default_value = "literal")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Largest theta compatible with an experimental precision on the
    /// a-b transition, with the full unit-conversion trail.
    Bound {
        /// First state of the transition (spectroscopic label).
        #[arg(long, default_value = "1S")]
        state_a: String,
        /// Second state of the transition (spectroscopic label).
        #[arg(long, default_value = "2S")]
        state_b: String,
        /// Experimental precision of the transition, Hz.
        #[arg(long, default_value_t = 34.0)]
        precision_hz: f64,
        #[arg(long, value_enum, default_value = "literal")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// 1S-2S reproduction report: both modes' shift coefficients, theta
    /// bounds, unit trails, and the discrepancy analysis against the
    /// reference numbers.
    Report {
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Oracle self-checks: closed-form radial moments vs quadrature,
    /// angular elements vs spherical quadrature, normalization, and
    /// first-order nullity. Exits nonzero if any suite fails. Time budget:
    /// under 60 s on commodity hardware (a few seconds in release builds).
    Selfcheck {
        /// Override every suite's tolerance (e.g. 1e-20 forces failure).
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn deliver(out: &CommandOutput, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, &out.body)?,
        None => print!("{}", out.body),
    }
    if out.failed_suites > 0 {
        return Err(Error::SelfcheckFailed {
            failed: out.failed_suites,
            total: out.total_suites,
        });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let model = HydrogenModel::new(PhysicalConstants::codata2018());
    match cli.command {
        Command::Spectrum {
            nr_max,
            l_max,
            theta,
            theta_unit,
            mode,
            format,
            output,
        } => {
            let out = cmd_spectrum(
                &model,
                &SpectrumArgs {
                    nr_max,
                    l_max,
                    theta,
                    theta_unit: theta_unit.into(),
                    mode: mode.into(),
                    format: format.into(),
                },
            )?;
            deliver(&out, output.as_ref())
        }
        Command::Shift {
            state,
            theta,
            theta_unit,
            mode,
            format,
            output,
        } => {
            let out = cmd_shift(
                &model,
                &ShiftArgs {
                    state,
                    theta,
                    theta_unit: theta_unit.into(),
                    mode: mode.into(),
                    format: format.into(),
                },
            )?;
            deliver(&out, output.as_ref())
        }
        Command::Bound {
            state_a,
            state_b,
            precision_hz,
            mode,
            format,
            output,
        } => {
            let out = cmd_bound(
                &model,
                &BoundArgs {
                    state_a,
                    state_b,
                    precision_hz,
                    mode: mode.into(),
                    format: format.into(),
                },
            )?;
            deliver(&out, output.as_ref())
        }
        Command::Report { format, output } => {
            let out = cmd_report(
                &model,
                &ReportArgs {
                    format: format.into(),
                },
            )?;
            deliver(&out, output.as_ref())
        }
        Command::Selfcheck {
            tolerance,
            format,
            output,
        } => {
            let out = cmd_selfcheck(
                &model,
                &SelfcheckArgs {
                    tolerance,
                    format: format.into(),
                },
            )?;
            deliver(&out, output.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version print to stdout and succeed; real parse
            // errors are usage errors.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
