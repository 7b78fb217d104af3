//! `duality`: single-shot interferometer runs, landscape sweeps, the L_U
//! search, unitary factorization, shot-noise experiments and the
//! consistency report.
//!
//! Exit status is 0 on success, 2 for invalid flags or inputs (one-line
//! diagnostic on stderr) and 1 for I/O failures.

mod commands;
mod inputs;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "duality",
    version,
    about = "Wave-particle duality in a generalized two-way interferometer"
)]
struct Cli {
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for commands that draw random numbers.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Read every angle flag (and angle sweep ranges) in degrees.
    #[arg(long, global = true)]
    degrees: bool,

    /// Compact single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Final state, fringe, predictability and visibility for one configuration.
    Simulate(SimulateArgs),
    /// Evaluate a landscape function on a grid and write CSV.
    Sweep(SweepArgs),
    /// Maximize P² + V² over input states for a fixed axis.
    Lmax(LmaxArgs),
    /// Factor a 2×2 unitary into phase / splitter / phase form.
    Decompose(DecomposeArgs),
    /// Simulate finite-shot detection and fit the fringe.
    Montecarlo(MontecarloArgs),
    /// Compare every closed form with the matrix oracle.
    Consistency(ConsistencyArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(id = "state", required = true, multiple = false)]
struct StateArgs {
    /// Input Bloch vector.
    #[arg(long, value_name = "X,Y,Z", allow_hyphen_values = true, group = "state")]
    bloch: Option<String>,
    /// Input state s_x ê_x.
    #[arg(long, value_name = "V", allow_hyphen_values = true, group = "state")]
    sx: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(id = "axis_choice", required = true, multiple = false)]
struct AxisArgs {
    /// Rotation axis of the middle unitary (normalized on input).
    #[arg(long, value_name = "MX,MY,MZ", allow_hyphen_values = true, group = "axis_choice")]
    axis: Option<String>,
    /// Rotation axis as polar and azimuthal angles.
    #[arg(long, value_name = "THETA,XI", allow_hyphen_values = true, group = "axis_choice")]
    spherical: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    state: StateArgs,
    #[command(flatten)]
    #[serde(flatten)]
    axis: AxisArgs,
    /// Beam-splitter angle [default: π/2, the balanced splitter].
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    /// Rotation angle of the middle unitary.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
struct SweepArgs {
    /// F_pure, F_spherical, f_cartesian, f_rotated, duality_omega_paper or
    /// duality_first_principles.
    #[arg(long)]
    function: String,
    /// `name=start:end:count`, add `:incl` to end exactly on `end`.
    #[arg(long = "range", value_name = "SPEC", allow_hyphen_values = true)]
    ranges: Vec<String>,
    /// Hold a parameter fixed, `name=value`.
    #[arg(long = "fix", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    fixed: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
struct LmaxArgs {
    #[command(flatten)]
    #[serde(flatten)]
    axis: AxisArgs,
    /// Beam-splitter angle [default: π/2, the balanced splitter].
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    /// Points in the stage-one lattice.
    #[arg(long, default_value_t = 10_000)]
    lattice: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(id = "matrix", required = true, multiple = false)]
struct DecomposeArgs {
    /// Row-major entries as real,imag pairs.
    #[arg(
        long,
        value_name = "RE,IM,RE,IM,RE,IM,RE,IM",
        allow_hyphen_values = true,
        group = "matrix"
    )]
    unitary: Option<String>,
    /// Rotation exp(-i phi m·σ/2).
    #[arg(
        long = "axis-angle",
        value_name = "MX,MY,MZ,PHI",
        allow_hyphen_values = true,
        group = "matrix"
    )]
    axis_angle: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
struct MontecarloArgs {
    #[command(flatten)]
    #[serde(flatten)]
    state: StateArgs,
    #[command(flatten)]
    #[serde(flatten)]
    axis: AxisArgs,
    /// Beam-splitter angle [default: π/2, the balanced splitter].
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    #[arg(long, default_value_t = 48)]
    points: usize,
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
struct ConsistencyArgs {
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let validation = err.chain().any(|cause| cause.is::<duality_core::Error>());
            ExitCode::from(if validation { 2 } else { 1 })
        }
    }
}
