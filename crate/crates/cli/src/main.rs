//! `asep2`: exact stationary states, partition functions, phase diagram and a
//! reference simulator for the open two-species exclusion process.

mod commands;
mod error;
mod output;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use asep2::observables::CurrentConvention;
use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;
use output::{write_output, Format};
use params::{load_params, Preset};

#[derive(Parser, Debug)]
#[command(name = "asep2", version, about = "Exact stationary states of the open two-species ASEP")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// TOML parameter file with keys s, a, b, c, d and optional xi, each a "p/q" string.
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    /// Built-in parameter set used when --params is absent.
    #[arg(long, global = true, value_enum, default_value = "maximal-current")]
    pub preset: Preset,
    /// Override one parameter, e.g. --set a=-3/2. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=P/Q")]
    pub overrides: Vec<String>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; CSV starts with a `#` line carrying the schema version and parameters.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Sign of reported currents: `paper` is injections minus extractions at
    /// site 1 (negative for 0 < t < 1); `rightward` flips it.
    #[arg(long, global = true, value_enum, default_value = "paper")]
    pub current_convention: Convention,
    /// Seed for the simulator and for random verification points.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Relative tolerance for floating-point checks (the mimachi suite).
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Largest N accepted by exact-arithmetic commands.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Paper,
    Rightward,
}

impl From<Convention> for CurrentConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Paper => CurrentConvention::Paper,
            Convention::Rightward => CurrentConvention::Rightward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exact rational arithmetic from the full state.
    Exact,
    /// Contour-integral evaluation in double precision.
    Contour,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hecke,
    Ybe,
    Qkz,
    Recursions,
    Fugacity,
    Hcoeff,
    AwContiguous,
    Mimachi,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the stationary state and dump every component with Z, current and density.
    Steady {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Run a verification suite; exit code 0 iff every identity holds.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Largest index for the hcoeff suite.
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// Largest m for the aw-contiguous suite.
        #[arg(long, default_value_t = 8)]
        mmax: usize,
        /// Monomial degree for the hecke suite.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// Random rational points per check where applicable.
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// Partition function Z_{N,m}: the full polynomial, Z(1) and the fugacity refinement.
    Partition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
    },
    /// Current and first-class density for one sector.
    Observables {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
    },
    /// Thermodynamic phase, limiting current and density over a rho* grid, with
    /// optional finite-size contour values.
    Phase {
        /// Comma-separated second-class densities in [0, 1).
        #[arg(long, value_delimiter = ',', conflicts_with = "grid")]
        rho_star: Vec<f64>,
        /// Evenly spaced grid i/K, i = 0..K.
        #[arg(long)]
        grid: Option<usize>,
        /// Comma-separated system sizes for finite-N columns.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// Gillespie simulation with comparison to the exact stationary law.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Recorded events; scientific notation such as 1e7 is accepted.
        #[arg(long, default_value = "1e6", value_parser = parse_count)]
        events: u64,
        /// Events discarded before recording; default events/100.
        #[arg(long, value_parser = parse_count)]
        burn_in: Option<u64>,
        /// Events per batch for standard errors; default events/100.
        #[arg(long, value_parser = parse_count)]
        thinning: Option<u64>,
        /// Largest total-variation distance counted as a pass.
        #[arg(long, default_value_t = 0.01)]
        tv_threshold: f64,
        /// Largest |z| of the current counted as a pass.
        #[arg(long, default_value_t = 3.0)]
        z_threshold: f64,
        /// Skip the comparison with the exact law.
        #[arg(long)]
        no_compare: bool,
    },
    /// Print the Markdown command reference.
    #[command(hide = true)]
    Reference,
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("{s:?} is not a count"))?;
    if f >= 0.0 && f.fract() == 0.0 && f < 1.8e19 {
        Ok(f as u64)
    } else {
        Err(format!("{s:?} is not a non-negative integer"))
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Command::Reference = cli.command {
        write_output(&commands::reference(), cli.global.out.as_deref())?;
        return Ok(true);
    }
    let g = &cli.global;
    let params = load_params(g.params.as_deref(), g.preset, &g.overrides)?;
    let outcome = commands::dispatch(&cli.command, g, params)?;
    write_output(&outcome.render(g.format)?, g.out.as_deref())?;
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("asep2: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("asep2: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
