//! Flag values to validated core types. Every failure here is a
//! `duality_core::Error`, which the binary reports with exit status 2.

use duality_core::interferometer::InterferometerConfig;
use duality_core::landscape::SphericalAxis;
use duality_core::qubit::{BlochVector, UnitAxis};
use duality_core::{Error, Result};

use crate::{AxisArgs, StateArgs};

/// Radians per unit of the angle flags.
pub fn angle_unit(degrees: bool) -> f64 {
    if degrees {
        std::f64::consts::PI / 180.0
    } else {
        1.0
    }
}

pub fn parse_list<const N: usize>(flag: &str, text: &str) -> Result<[f64; N]> {
    let values: Vec<f64> = text
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("--{flag} expects {N} comma-separated numbers, got '{text}'")))?;
    let values: [f64; N] = values
        .try_into()
        .map_err(|v: Vec<f64>| Error::InvalidArgument(format!("--{flag} expects {N} numbers, got {}", v.len())))?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("--{flag} has a non-finite entry")));
    }
    Ok(values)
}

pub fn state(args: &StateArgs) -> Result<BlochVector<f64>> {
    match (&args.bloch, args.sx) {
        (Some(text), _) => {
            let [x, y, z] = parse_list::<3>("bloch", text)?;
            BlochVector::new(x, y, z)
        }
        (None, Some(s_x)) => BlochVector::along_x(s_x),
        (None, None) => Err(Error::InvalidArgument("one of --bloch or --sx is required".into())),
    }
}

pub fn axis(args: &AxisArgs, unit: f64) -> Result<UnitAxis<f64>> {
    match (&args.axis, &args.spherical) {
        (Some(text), _) => {
            let [x, y, z] = parse_list::<3>("axis", text)?;
            UnitAxis::normalized(x, y, z)
        }
        (None, Some(text)) => {
            let [theta, xi] = parse_list::<2>("spherical", text)?;
            Ok(SphericalAxis::new(theta * unit, xi * unit)?.to_axis())
        }
        (None, None) => Err(Error::InvalidArgument(
            "one of --axis or --spherical is required".into(),
        )),
    }
}

pub fn omega(omega: Option<f64>, unit: f64) -> Result<f64> {
    match omega {
        None => Ok(std::f64::consts::FRAC_PI_2),
        Some(w) if w.is_finite() => Ok(w * unit),
        Some(_) => Err(Error::InvalidArgument("--omega must be finite".into())),
    }
}

pub fn config(
    state_args: &StateArgs,
    axis_args: &AxisArgs,
    omega_flag: Option<f64>,
    unit: f64,
) -> Result<InterferometerConfig<f64>> {
    Ok(InterferometerConfig::new(
        omega(omega_flag, unit)?,
        axis(axis_args, unit)?,
        state(state_args)?,
    ))
}
