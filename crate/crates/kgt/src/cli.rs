//! Argument definitions for the `kgt` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kgt",
    version,
    about = "Green functions, evolution and verification for the hyperbolic Klein-Gordon thermal equation",
    long_about = "Green functions, evolution and verification for the hyperbolic Klein-Gordon thermal equation\n\n\
                  (1/v^2) T_tt + (m/hbar) T_t + (2 V0 m/hbar^2) T = Laplacian T\n\n\
                  Exit codes: 0 success, 1 verification failure, 2 usage or input error, 3 domain error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Physical parameters: electron defaults, then the JSON file, then flags.
#[derive(Debug, Clone, Args)]
pub struct Physical {
    /// JSON file overriding default parameters (keys: mass_kg, alpha, c_m_s,
    /// v0_joule, epsilon0_f_m, hbar_j_s)
    #[arg(long, value_name = "FILE")]
    pub params: Option<PathBuf>,
    /// Heaton mass in electron masses
    #[arg(long)]
    pub mass: Option<f64>,
    /// Potential V0 in electronvolts
    #[arg(long = "v0-ev")]
    pub v0_ev: Option<f64>,
}

/// Parameters of the undamped form; missing values are derived from the
/// physical parameters.
#[derive(Debug, Clone, Args)]
pub struct Wave {
    #[command(flatten)]
    pub physical: Physical,
    /// Propagation speed v, m/s
    #[arg(long)]
    pub v: Option<f64>,
    /// Squared frequency q^2, 1/s^2 (may be negative)
    #[arg(long = "q-sq", allow_hyphen_values = true)]
    pub q_sq: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct Range {
    /// First sample position, m
    #[arg(long, allow_hyphen_values = true)]
    pub min: f64,
    /// Last sample position, m
    #[arg(long, allow_hyphen_values = true)]
    pub max: f64,
    /// Number of samples (at least 2)
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Evolve {
    #[command(flatten)]
    pub wave: Wave,
    #[command(flatten)]
    pub range: Range,
    /// Initial data JSON, e.g. {"phi": {"shape": "gaussian", "center": 0, "width": 1e-10, "amplitude": 300}}
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    /// Evaluation time, s
    #[arg(long)]
    pub t: f64,
    /// Relaxation time override, s ("inf" disables damping)
    #[arg(long)]
    pub tau: Option<f64>,
    /// Relative tolerance of the convolution quadrature
    #[arg(long = "quad-tol", default_value_t = 1e-10)]
    pub quad_tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived parameters (v, tau, q^2, sigma0, de Broglie wavelength) as JSON
    Params {
        #[command(flatten)]
        physical: Physical,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate the 1D Green function: columns x_m, G
    Green1d {
        #[command(flatten)]
        wave: Wave,
        #[command(flatten)]
        range: Range,
        /// Time, s
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate the 3D Green function: columns r_m, G_regular, cone_layer_coefficient, region
    Green3d {
        #[command(flatten)]
        wave: Wave,
        #[command(flatten)]
        range: Range,
        /// Time, s
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Evolve 1D initial data: columns position_m, u_K, temperature_K
    Evolve1d {
        #[command(flatten)]
        evolve: Evolve,
        #[command(flatten)]
        output: Output,
    },
    /// Evolve radially symmetric 3D initial data: columns position_m, u_K, temperature_K
    Evolve3d {
        #[command(flatten)]
        evolve: Evolve,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the closed forms with the derivative and spectral oracles
    Oracle {
        #[command(flatten)]
        wave: Wave,
        /// Time, s
        #[arg(long)]
        t: f64,
        /// Spatial dimension, 1 or 3
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        dim: u8,
        /// Number of interior points between 0.1 vt and 0.9 vt
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run the verification cases and emit a JSON report
    Verify {
        /// Print the case names and exit
        #[arg(long)]
        list: bool,
        /// Run only the named case (repeatable)
        #[arg(long = "case", value_name = "NAME")]
        cases: Vec<String>,
        /// Deliberately break a component to exercise the failure path
        #[arg(long = "inject-fault", value_enum, hide = true)]
        inject_fault: Option<Fault>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    Prefactor,
}
