//! End-to-end acceptance suite. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line, then exits non-zero if any
//! failed.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use duality_core::consistency::consistency_report;
use duality_core::decompose::{factorize_unitary, recomposition_residual};
use duality_core::interferometer::{
    detection_probability_closed_form, detection_probability_oracle, predictability_oracle, visibility_closed_form,
    visibility_oracle, InterferometerConfig,
};
use duality_core::landscape::{
    duality_sum, f_cartesian, f_pure, f_spherical, l_max, sweep_grid, Landscape, OmegaConvention, ParamRange,
    SweepSpec, SweepTable,
};
use duality_core::measurement::{fit_fringe, sample_counts, ExperimentPlan};
use duality_core::qubit::{rotation_unitary, BlochVector, UnitAxis};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn random_axis(rng: &mut ChaCha8Rng) -> UnitAxis<f64> {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    UnitAxis::normalized(r * phi.cos(), r * phi.sin(), z).unwrap()
}

fn random_state(rng: &mut ChaCha8Rng) -> BlochVector<f64> {
    let r: f64 = rng.random::<f64>().cbrt();
    BlochVector::from_vec(random_axis(rng).vector().scale(r.min(1.0))).unwrap()
}

fn oracle_sum(config: &InterferometerConfig<f64>) -> f64 {
    predictability_oracle(config).powi(2) + visibility_oracle(config).powi(2)
}

fn landmarks() -> Outcome {
    let ten_ninths = 10.0 / 9.0;
    let values = [
        ("f_cartesian(0,0)", f_cartesian(0.0, 0.0).unwrap(), 2.0),
        (
            "f_cartesian(1/√2,1/√2)",
            f_cartesian(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap(),
            ten_ninths,
        ),
        ("F_pure(π/4,0)", f_pure(FRAC_PI_4, 0.0), ten_ninths),
    ];
    let mut worst = 0.0f64;
    for (name, got, want) in values {
        let err = (got - want).abs();
        check(err <= 1e-12, format!("{name} = {got}, expected {want}"))?;
        worst = worst.max(err);
    }
    Ok(format!("max error {worst:.1e}"))
}

fn englert_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..1_000 {
        let s = random_state(&mut rng);
        let sum = duality_sum(&InterferometerConfig::balanced(UnitAxis::e_z(), s)).sum;
        worst = worst.max((sum - s.norm().powi(2)).abs());
    }
    check(worst <= 1e-9, format!("max |P²+V² - |s|²| = {worst:e}"))?;
    Ok(format!("1000 states, max error {worst:.1e}"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut p_err, mut v_err, mut f_err) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let config = InterferometerConfig::balanced(random_axis(&mut rng), random_state(&mut rng));
        let phi: f64 = rng.random_range(0.0..TAU);
        let closed = detection_probability_closed_form(&config, phi).unwrap();
        p_err = p_err.max((closed - detection_probability_oracle(&config, phi)).abs());
        v_err = v_err.max((visibility_closed_form(&config).unwrap() - visibility_oracle(&config)).abs());

        let s_x: f64 = rng.random_range(-1.0..=1.0);
        let theta: f64 = rng.random_range(0.0..=PI);
        let xi: f64 = rng.random_range(0.0..TAU);
        let landscape_config =
            InterferometerConfig::balanced(UnitAxis::from_spherical(theta, xi), BlochVector::along_x(s_x).unwrap());
        f_err = f_err.max((f_spherical(s_x, theta, xi) - oracle_sum(&landscape_config)).abs());
    }
    check(p_err <= 1e-9, format!("probability residual {p_err:e}"))?;
    check(v_err <= 1e-9, format!("visibility residual {v_err:e}"))?;
    check(f_err <= 1e-9, format!("landscape residual {f_err:e}"))?;
    Ok(format!(
        "10000 configs, residuals p {p_err:.1e}, V {v_err:.1e}, F {f_err:.1e}"
    ))
}

fn bound_suite() -> Outcome {
    let cases = [
        ("e_z", UnitAxis::e_z(), 1.0, 1e-6),
        ("e_x", UnitAxis::e_x(), 1.0, 1e-6),
        ("e_y", UnitAxis::e_y(), 2.0, 1e-4),
    ];
    let mut summary = Vec::new();
    for (name, axis, want, tol) in cases {
        let got = l_max(&axis, FRAC_PI_2).l_max;
        check(
            (got - want).abs() <= tol,
            format!("l_max({name}) = {got}, expected {want} ± {tol:e}"),
        )?;
        summary.push(format!("{name} {got:.9}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..100 {
        let axis = random_axis(&mut rng);
        let bound = l_max(&axis, FRAC_PI_2);
        check(
            bound.l_max >= 1.0 - 1e-9 && bound.l_max <= 2.0 + 1e-9,
            format!("l_max = {} outside [1, 2] for axis {:?}", bound.l_max, axis.vector()),
        )?;
        check(bound.argmax_state.norm() <= 1.0 + 1e-12, "argmax outside the ball")?;
        lo = lo.min(bound.l_max);
        hi = hi.max(bound.l_max);
    }
    summary.push(format!("100 random axes in [{lo:.6}, {hi:.6}]"));
    Ok(summary.join(", "))
}

fn saturation() -> Outcome {
    // ê_y and axes (m, sqrt(1 - 2m²), -m) on the f = 2 line all saturate.
    let mut axes = vec![UnitAxis::e_y()];
    for m in [0.1, 0.3, 0.5, 0.65] {
        axes.push(UnitAxis::new(m, (1.0f64 - 2.0 * m * m).sqrt(), -m).unwrap());
    }
    let mut worst = 0.0f64;
    for axis in axes {
        let bound = l_max(&axis, FRAC_PI_2);
        check(
            bound.l_max >= 2.0 - 1e-6,
            format!("axis {:?} does not saturate: {}", axis.vector(), bound.l_max),
        )?;
        let s = bound.argmax_state;
        check(
            (s.norm() - 1.0).abs() <= 1e-6,
            format!("argmax not pure: |s| = {}", s.norm()),
        )?;
        let angle = (s.x().abs() / s.norm()).min(1.0).acos();
        check(
            angle <= 1e-3,
            format!("argmax {:?} is {angle:e} rad from ±e_x", s.vector()),
        )?;
        worst = worst.max(angle);
    }
    Ok(format!("5 saturating axes, max angle to ±e_x {worst:.1e} rad"))
}

fn factorization_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut worst = 0.0f64;
    for _ in 0..1_000 {
        let axis = random_axis(&mut rng);
        let angle: f64 = rng.random_range(-TAU..TAU);
        let phase: f64 = rng.random_range(-PI..PI);
        let u = rotation_unitary(&axis, angle)
            .matrix()
            .scale(Complex::from_polar(1.0, phase));
        let f = factorize_unitary(&u).map_err(|e| e.to_string())?;
        worst = worst.max(recomposition_residual(&u, &f));
    }
    check(worst <= 1e-12, format!("max residual {worst:e}"))?;
    Ok(format!("1000 unitaries, max residual {worst:.1e}"))
}

fn monte_carlo() -> Outcome {
    let config = InterferometerConfig::balanced(UnitAxis::e_y(), BlochVector::along_x(1.0f64).unwrap());
    let plan = ExperimentPlan::new(config, 48, 100_000, 7).map_err(|e| e.to_string())?;
    let fit = fit_fringe(&sample_counts(&plan)).map_err(|e| e.to_string())?;
    check(
        (fit.visibility_hat - 1.0).abs() <= 0.01,
        format!("visibility_hat = {} at 1e5 shots", fit.visibility_hat),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut covered = 0;
    for k in 0..200 {
        let omega: f64 = rng.random_range(0.2..PI - 0.2);
        let config = InterferometerConfig::new(omega, random_axis(&mut rng), random_state(&mut rng));
        let truth = duality_sum(&config).visibility;
        let plan = ExperimentPlan::new(config, 48, 10_000, 1_000 + k).unwrap();
        let fit = fit_fringe(&sample_counts(&plan)).map_err(|e| e.to_string())?;
        if (fit.visibility_hat - truth).abs() <= 5.0 * fit.std_error {
            covered += 1;
        }
    }
    check(covered >= 198, format!("only {covered}/200 plans within 5 SE"))?;
    Ok(format!(
        "V̂ = {:.5} ± {:.1e}, {covered}/200 plans within 5 SE",
        fit.visibility_hat, fit.std_error
    ))
}

fn sweep(function: Landscape, ranges: &[&str], fixed: &[(&str, f64)]) -> Result<SweepTable, String> {
    let ranges = ranges
        .iter()
        .map(|r| r.parse::<ParamRange>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let fixed = fixed.iter().map(|(n, v)| (n.to_string(), *v)).collect();
    let spec = SweepSpec::new(function, ranges, fixed).map_err(|e| e.to_string())?;
    let table = sweep_grid(&spec);
    let mut csv = Vec::new();
    table.write_csv(&mut csv).map_err(|e| e.to_string())?;
    check(csv.len() > table.rows.len(), "empty CSV")?;
    Ok(table)
}

fn landscape_sweeps() -> Outcome {
    let pure_grid = sweep(
        Landscape::FPure,
        &["theta=0:3.14159265:200", "xi=0:6.28318531:200"],
        &[],
    )?;
    check(
        pure_grid.rows.len() == 40_000,
        format!("F_pure rows = {}", pure_grid.rows.len()),
    )?;
    let pure_max = pure_grid.extrema.max.unwrap_or(f64::NAN);
    check((pure_max - 2.0).abs() <= 1e-9, format!("F_pure max = {pure_max}"))?;

    let profile_table = sweep(Landscape::FRotated, &["mxp=0:1:101:incl"], &[("sx", 1.0)])?;
    let profile: Vec<f64> = profile_table.rows.iter().map(|r| r.value.unwrap()).collect();
    check(
        (profile[0] - 2.0).abs() <= 1e-12,
        format!("profile starts at {}", profile[0]),
    )?;
    let last = *profile.last().unwrap();
    check((last - 10.0 / 9.0).abs() <= 1e-12, format!("profile ends at {last}"))?;
    check(
        profile.windows(2).all(|w| w[1] < w[0]),
        "profile not strictly decreasing",
    )?;

    let disk = sweep(Landscape::FCartesian, &["mx=-1:1:101", "mz=-1:1:101"], &[])?;
    for row in &disk.rows {
        let (m_x, m_z) = (row.coords[0], row.coords[1]);
        let inside = m_x * m_x + m_z * m_z <= 1.0;
        check(inside == row.value.is_some(), format!("mask wrong at ({m_x}, {m_z})"))?;
    }
    let (disk_min, disk_max) = (
        disk.extrema.min.unwrap_or(f64::NAN),
        disk.extrema.max.unwrap_or(f64::NAN),
    );
    check(
        disk_min >= 1.0 - 1e-12 && (disk_max - 2.0).abs() <= 1e-12,
        format!("disk extrema [{disk_min}, {disk_max}]"),
    )?;

    let family_table = sweep(Landscape::FRotated, &["sx=0.25:1:4:incl", "mxp=0:1:101:incl"], &[])?;
    let family: Vec<Vec<f64>> = family_table
        .rows
        .chunks(101)
        .map(|c| c.iter().map(|r| r.value.unwrap()).collect())
        .collect();
    check(family.len() == 4, "expected four curves")?;
    for pair in family.windows(2) {
        check(
            pair[0].iter().zip(&pair[1]).all(|(a, b)| a < b),
            "curves not ordered by s_x",
        )?;
    }

    Ok(format!(
        "F_pure max {pure_max:.12}, f_rotated profile {:.12} to {last:.12}, f_cartesian {} disk cells in [{disk_min:.6}, {disk_max:.12}], s_x family ordered",
        profile[0], disk.extrema.present
    ))
}

fn discrepancy_report() -> Outcome {
    let report = consistency_report(10_000, 16);
    let json = serde_json::to_string(&report).map_err(|e| e.to_string())?;
    check(!json.is_empty() && report.samples == 10_000, "empty report")?;
    let line = &report.anti_diagonal;
    check(
        line.max_deviation_from_two <= 1e-12,
        format!("f on m_z = -m_x deviates by {:e}", line.max_deviation_from_two),
    )?;
    check(line.published_maximum == 1.0, "published maximum not recorded")?;
    for convention in [OmegaConvention::Identity, OmegaConvention::ShiftedXi] {
        check(
            report.omega_formula.iter().any(|c| c.convention == convention),
            format!("no residual for {}", convention.name()),
        )?;
    }
    let identity = &report.omega_formula[0];
    check(
        identity.balanced > 1e-6,
        "identity convention unexpectedly agrees at ω = π/2",
    )?;
    let adjudicated = report.adjudicated_convention.ok_or("no convention adjudicated")?;
    let r = &report.closed_form_residuals;
    let worst = [
        r.detection_probability_closed_form,
        r.visibility_closed_form,
        r.f_spherical,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    check(worst <= 1e-9, format!("closed-form residual {worst:e}"))?;
    Ok(format!(
        "f = 2 on the line (published max {}), identity residual {:.2e}, adjudicated '{}'",
        line.published_maximum,
        identity.balanced,
        adjudicated.name()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("landmark values", landmarks),
        ("Englert reduction", englert_reduction),
        ("oracle equivalence", oracle_equivalence),
        ("bound suite", bound_suite),
        ("saturation", saturation),
        ("factorization round-trip", factorization_round_trip),
        ("Monte Carlo fidelity", monte_carlo),
        ("landscape sweeps", landscape_sweeps),
        ("discrepancy report", discrepancy_report),
    ];
    let mut failures = 0;
    for (index, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} ({elapsed:.2}s): {detail}", index + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL {}. {name} ({elapsed:.2}s): {reason}", index + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
