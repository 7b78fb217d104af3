use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use duality_core::consistency::{consistency_report, ConsistencyReport};
use duality_core::decompose::{factorize_unitary, recomposition_residual};
use duality_core::interferometer::{
    detection_probability, final_state, visibility_closed_form, visibility_scan, DENSE_GRID_CHECK,
};
use duality_core::landscape::{
    duality_sum, l_max_with, sweep_grid, BoundSearch, Extrema, Landscape, ParamRange, SweepSpec,
};
use duality_core::measurement::{fit_fringe, sample_counts, Count, ExperimentPlan, FringeFit, RNG_NAME};
use duality_core::qubit::{rotation_unitary, Matrix2, UnitAxis};
use duality_core::Error;
use num_complex::Complex;
use serde::Serialize;

use crate::inputs::{self, angle_unit, parse_list};
use crate::manifest::RunManifest;
use crate::{Cli, Command, ConsistencyArgs, DecomposeArgs, LmaxArgs, MontecarloArgs, SimulateArgs, SweepArgs};

#[derive(Serialize)]
struct Report<T> {
    manifest: RunManifest,
    #[serde(flatten)]
    result: T,
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Simulate(args) => simulate(cli, args),
        Command::Sweep(args) => sweep(cli, args),
        Command::Lmax(args) => lmax(cli, args),
        Command::Decompose(args) => decompose(cli, args),
        Command::Montecarlo(args) => montecarlo(cli, args),
        Command::Consistency(args) => consistency(cli, args),
    }
}

fn to_json(cli: &Cli, value: &impl Serialize) -> Result<String> {
    let text = if cli.json {
        serde_json::to_string(value)?
    } else {
        serde_json::to_string_pretty(value)?
    };
    Ok(text + "\n")
}

/// The JSON report goes to `--out` when given, stdout otherwise.
fn emit_report(cli: &Cli, value: &impl Serialize) -> Result<()> {
    let text = to_json(cli, value)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

#[derive(Serialize)]
struct SimulateResult {
    omega: f64,
    axis: [f64; 3],
    input_state: [f64; 3],
    phi: f64,
    final_state: [f64; 3],
    detection_probability: f64,
    predictability: f64,
    /// Only defined for the balanced splitter.
    visibility_closed_form: Option<f64>,
    visibility_scan: f64,
    duality_sum: f64,
}

fn simulate(cli: &Cli, args: &SimulateArgs) -> Result<()> {
    let unit = angle_unit(cli.degrees);
    let config = inputs::config(&args.state, &args.axis, args.omega, unit)?;
    if !args.phi.is_finite() {
        return Err(Error::InvalidArgument("--phi must be finite".into()).into());
    }
    let phi = args.phi * unit;
    let duality = duality_sum(&config);
    let result = SimulateResult {
        omega: config.omega,
        axis: config.axis.vector().to_array(),
        input_state: config.input.vector().to_array(),
        phi,
        final_state: final_state(&config, phi).vector().to_array(),
        detection_probability: detection_probability(&config, phi),
        predictability: duality.predictability,
        visibility_closed_form: visibility_closed_form(&config).ok(),
        visibility_scan: visibility_scan(&config, DENSE_GRID_CHECK)?,
        duality_sum: duality.sum,
    };
    let manifest = RunManifest::new("simulate", args, cli.degrees);
    emit_report(cli, &Report { manifest, result })
}

fn parse_fixed(text: &str, unit: f64) -> duality_core::Result<(String, f64)> {
    let malformed = || Error::InvalidArgument(format!("--fix expects name=value, got '{text}'"));
    let (name, value) = text.split_once('=').ok_or_else(malformed)?;
    let value: f64 = value.trim().parse().map_err(|_| malformed())?;
    let name = name.trim().to_string();
    let factor = if Landscape::is_angle(&name) { unit } else { 1.0 };
    Ok((name, value * factor))
}

#[derive(Serialize)]
struct SweepSidecar<'a> {
    manifest: RunManifest,
    function: Landscape,
    columns: &'a [String],
    rows: usize,
    /// Coordinates are always written in radians.
    angle_unit: &'static str,
    extrema: &'a Extrema,
}

fn sweep(cli: &Cli, args: &SweepArgs) -> Result<()> {
    let unit = angle_unit(cli.degrees);
    let function: Landscape = args.function.parse()?;
    let ranges = args
        .ranges
        .iter()
        .map(|text| {
            let range: ParamRange = text.parse()?;
            Ok(if Landscape::is_angle(&range.name) {
                range.scaled(unit)
            } else {
                range
            })
        })
        .collect::<duality_core::Result<Vec<_>>>()?;
    let fixed = args
        .fixed
        .iter()
        .map(|text| parse_fixed(text, unit))
        .collect::<duality_core::Result<Vec<_>>>()?;
    let spec = SweepSpec::new(function, ranges, fixed)?;
    let table = sweep_grid(&spec);

    match &cli.out {
        Some(path) => {
            let mut out = create(path)?;
            table.write_csv(&mut out)?;
            out.flush()?;
            let sidecar = SweepSidecar {
                manifest: RunManifest::new("sweep", args, cli.degrees),
                function,
                columns: &table.columns,
                rows: table.rows.len(),
                angle_unit: "radians",
                extrema: &table.extrema,
            };
            let side = sidecar_path(path);
            std::fs::write(&side, to_json(cli, &sidecar)?).with_context(|| format!("writing {}", side.display()))?;
        }
        None => table.write_csv(BufWriter::new(io::stdout().lock()))?,
    }
    Ok(())
}

#[derive(Serialize)]
struct LmaxResult {
    omega: f64,
    axis: [f64; 3],
    l_max: f64,
    argmax_state: [f64; 3],
    argmax_norm: f64,
    grid_resolution: usize,
    shells: Vec<f64>,
    starts: usize,
    tolerance: f64,
    iterations: usize,
    evaluations: usize,
}

fn lmax(cli: &Cli, args: &LmaxArgs) -> Result<()> {
    let unit = angle_unit(cli.degrees);
    let axis = inputs::axis(&args.axis, unit)?;
    let omega = inputs::omega(args.omega, unit)?;
    if args.lattice == 0 {
        return Err(Error::InvalidArgument("--lattice must be positive".into()).into());
    }
    let search = BoundSearch {
        lattice_points: args.lattice,
        ..BoundSearch::default()
    };
    let bound = l_max_with(&axis, omega, &search);
    let result = LmaxResult {
        omega,
        axis: axis.vector().to_array(),
        l_max: bound.l_max,
        argmax_state: bound.argmax_state.vector().to_array(),
        argmax_norm: bound.argmax_state.norm(),
        grid_resolution: bound.grid_resolution,
        shells: search.shells.clone(),
        starts: search.starts,
        tolerance: search.tolerance,
        iterations: bound.iterations,
        evaluations: bound.evaluations,
    };
    let manifest = RunManifest::new("lmax", args, cli.degrees);
    emit_report(cli, &Report { manifest, result })
}

#[derive(Serialize)]
struct DecomposeResult {
    unitarity_residual: f64,
    varphi: f64,
    psi: f64,
    chi: f64,
    delta: f64,
    recomposition_residual: f64,
}

fn decompose(cli: &Cli, args: &DecomposeArgs) -> Result<()> {
    let matrix = match (&args.unitary, &args.axis_angle) {
        (Some(text), _) => {
            let v = parse_list::<8>("unitary", text)?;
            Matrix2::new(
                Complex::new(v[0], v[1]),
                Complex::new(v[2], v[3]),
                Complex::new(v[4], v[5]),
                Complex::new(v[6], v[7]),
            )
        }
        (None, Some(text)) => {
            let [x, y, z, phi] = parse_list::<4>("axis-angle", text)?;
            let axis = UnitAxis::normalized(x, y, z)?;
            *rotation_unitary(&axis, phi * angle_unit(cli.degrees)).matrix()
        }
        (None, None) => {
            return Err(Error::InvalidArgument("one of --unitary or --axis-angle is required".into()).into())
        }
    };
    let factors = factorize_unitary(&matrix)?;
    let result = DecomposeResult {
        unitarity_residual: matrix.unitarity_residual(),
        varphi: factors.varphi,
        psi: factors.psi,
        chi: factors.chi,
        delta: factors.delta,
        recomposition_residual: recomposition_residual(&matrix, &factors),
    };
    let manifest = RunManifest::new("decompose", args, cli.degrees);
    emit_report(cli, &Report { manifest, result })
}

#[derive(Serialize)]
struct MontecarloResult {
    omega: f64,
    axis: [f64; 3],
    input_state: [f64; 3],
    phi_points: usize,
    shots_per_point: u64,
    fit: FringeFit<f64>,
    analytic_visibility: f64,
    /// `(visibility_hat - analytic) / std_error`.
    discrepancy_sigma: f64,
}

fn write_counts(path: &Path, counts: &[Count<f64>]) -> Result<()> {
    let mut out = create(path)?;
    writeln!(out, "phi,successes,shots,frequency")?;
    for c in counts {
        writeln!(out, "{},{},{},{}", c.phi, c.successes, c.shots, c.frequency())?;
    }
    out.flush()?;
    Ok(())
}

fn montecarlo(cli: &Cli, args: &MontecarloArgs) -> Result<()> {
    let config = inputs::config(&args.state, &args.axis, args.omega, angle_unit(cli.degrees))?;
    let seed = cli.seed.unwrap_or(0);
    let plan = ExperimentPlan::new(config, args.points, args.shots, seed)?;
    let counts = sample_counts(&plan);
    let fit = fit_fringe(&counts)?;
    let analytic = duality_sum(&config).visibility;
    let result = MontecarloResult {
        omega: config.omega,
        axis: config.axis.vector().to_array(),
        input_state: config.input.vector().to_array(),
        phi_points: plan.phi_points,
        shots_per_point: plan.shots_per_point,
        fit,
        analytic_visibility: analytic,
        discrepancy_sigma: (fit.visibility_hat - analytic) / fit.std_error,
    };
    let manifest = RunManifest::new("montecarlo", args, cli.degrees).with_rng(plan.rng_name(), seed);
    let report = Report { manifest, result };

    // Per-phase counts go to --out (with a sidecar); the report to stdout.
    if let Some(path) = &cli.out {
        write_counts(path, &counts)?;
        let side = sidecar_path(path);
        std::fs::write(&side, to_json(cli, &report)?).with_context(|| format!("writing {}", side.display()))?;
    }
    io::stdout().lock().write_all(to_json(cli, &report)?.as_bytes())?;
    Ok(())
}

fn consistency(cli: &Cli, args: &ConsistencyArgs) -> Result<()> {
    let seed = cli.seed.unwrap_or(0);
    let result: ConsistencyReport = consistency_report(args.samples, seed);
    let manifest = RunManifest::new("consistency", args, cli.degrees).with_rng(RNG_NAME, seed);
    emit_report(cli, &Report { manifest, result })
}
