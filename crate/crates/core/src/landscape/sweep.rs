//! Dense evaluation of the landscape functions over parameter grids.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{duality_sum, duality_sum_omega_published, f_cartesian, f_pure, f_rotated, f_spherical};
use crate::error::{Error, Result};
use crate::interferometer::InterferometerConfig;
use crate::qubit::{BlochVector, UnitAxis};

/// Functions a sweep can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Landscape {
    #[serde(rename = "F_pure")]
    FPure,
    #[serde(rename = "F_spherical")]
    FSpherical,
    #[serde(rename = "f_cartesian")]
    FCartesian,
    #[serde(rename = "f_rotated")]
    FRotated,
    #[serde(rename = "duality_omega_paper")]
    DualityOmegaPublished,
    #[serde(rename = "duality_first_principles")]
    DualityFirstPrinciples,
}

impl Landscape {
    pub const ALL: [Landscape; 6] = [
        Self::FPure,
        Self::FSpherical,
        Self::FCartesian,
        Self::FRotated,
        Self::DualityOmegaPublished,
        Self::DualityFirstPrinciples,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::FPure => "F_pure",
            Self::FSpherical => "F_spherical",
            Self::FCartesian => "f_cartesian",
            Self::FRotated => "f_rotated",
            Self::DualityOmegaPublished => "duality_omega_paper",
            Self::DualityFirstPrinciples => "duality_first_principles",
        }
    }

    /// Parameter names in column (and loop-nesting) order.
    pub fn parameters(&self) -> &'static [&'static str] {
        match self {
            Self::FPure => &["theta", "xi"],
            Self::FSpherical => &["sx", "theta", "xi"],
            Self::FCartesian => &["mx", "mz"],
            Self::FRotated => &["sx", "mxp"],
            Self::DualityOmegaPublished | Self::DualityFirstPrinciples => &["sx", "theta", "xi", "omega"],
        }
    }

    /// Whether a parameter is an angle (radians).
    pub fn is_angle(parameter: &str) -> bool {
        matches!(parameter, "theta" | "xi" | "omega")
    }

    /// Value at `args` (in [`Self::parameters`] order); `None` outside the
    /// function's domain.
    pub fn evaluate(&self, args: &[f64]) -> Option<f64> {
        let in_ball = |sx: f64| sx.abs() <= 1.0;
        let value = match (self, args) {
            (Self::FPure, &[theta, xi]) => f_pure(theta, xi),
            (Self::FSpherical, &[sx, theta, xi]) if in_ball(sx) => f_spherical(sx, theta, xi),
            (Self::FCartesian, &[mx, mz]) => f_cartesian(mx, mz).ok()?,
            (Self::FRotated, &[sx, mxp]) if in_ball(sx) && (0.0..=1.0).contains(&mxp) => f_rotated(sx, mxp),
            (Self::DualityOmegaPublished, &[sx, theta, xi, omega]) if in_ball(sx) => {
                duality_sum_omega_published(sx, theta, xi, omega)
            }
            (Self::DualityFirstPrinciples, &[sx, theta, xi, omega]) => {
                let input = BlochVector::along_x(sx).ok()?;
                duality_sum(&InterferometerConfig::new(
                    omega,
                    UnitAxis::from_spherical(theta, xi),
                    input,
                ))
                .sum
            }
            _ => return None,
        };
        value.is_finite().then_some(value)
    }
}

impl fmt::Display for Landscape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Landscape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}

/// `count` points from `start` towards `end`. Exclusive ranges step by
/// `(end-start)/count` and never reach `end`; inclusive ranges step by
/// `(end-start)/(count-1)` and end exactly on `end`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamRange {
    pub name: String,
    pub start: f64,
    pub end: f64,
    pub count: usize,
    pub inclusive: bool,
}

impl ParamRange {
    pub fn new(name: impl Into<String>, start: f64, end: f64, count: usize, inclusive: bool) -> Result<Self> {
        let name = name.into();
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "range for '{name}' has non-finite bounds"
            )));
        }
        let single_point = inclusive && count == 1 && start == end;
        if count == 0 || (start == end && !single_point) || (inclusive && count == 1 && !single_point) {
            return Err(Error::EmptyRange(name));
        }
        Ok(Self {
            name,
            start,
            end,
            count,
            inclusive,
        })
    }

    pub fn value(&self, k: usize) -> f64 {
        if self.inclusive {
            if k + 1 == self.count {
                return self.end;
            }
            self.start + k as f64 * (self.end - self.start) / (self.count - 1).max(1) as f64
        } else {
            self.start + k as f64 * (self.end - self.start) / self.count as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.value(k)).collect()
    }

    /// Multiplies both bounds, e.g. for a degrees-to-radians conversion.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            start: self.start * factor,
            end: self.end * factor,
            ..self.clone()
        }
    }
}

impl FromStr for ParamRange {
    type Err = Error;

    /// `name=start:end:count`, optionally suffixed with `:incl`.
    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::MalformedRange(s.to_string());
        let (name, rest) = s.split_once('=').ok_or_else(malformed)?;
        let parts: Vec<&str> = rest.split(':').collect();
        let inclusive = match parts.len() {
            3 => false,
            4 if parts[3] == "incl" => true,
            _ => return Err(malformed()),
        };
        let start: f64 = parts[0].trim().parse().map_err(|_| malformed())?;
        let end: f64 = parts[1].trim().parse().map_err(|_| malformed())?;
        let count: usize = parts[2].trim().parse().map_err(|_| malformed())?;
        let name = name.trim();
        if name.is_empty() {
            return Err(malformed());
        }
        Self::new(name, start, end, count, inclusive)
    }
}

/// A landscape function plus one range or fixed value per parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub function: Landscape,
    pub ranges: Vec<ParamRange>,
    pub fixed: Vec<(String, f64)>,
}

impl SweepSpec {
    pub fn new(function: Landscape, ranges: Vec<ParamRange>, fixed: Vec<(String, f64)>) -> Result<Self> {
        let params = function.parameters();
        let mut seen: Vec<&str> = Vec::new();
        for name in ranges
            .iter()
            .map(|r| r.name.as_str())
            .chain(fixed.iter().map(|(n, _)| n.as_str()))
        {
            if !params.contains(&name) {
                return Err(Error::InvalidArgument(format!(
                    "'{name}' is not a parameter of {function} (expects {})",
                    params.join(", ")
                )));
            }
            if seen.contains(&name) {
                return Err(Error::InvalidArgument(format!(
                    "parameter '{name}' given more than once"
                )));
            }
            seen.push(name);
        }
        if let Some(missing) = params.iter().find(|p| !seen.contains(p)) {
            return Err(Error::InvalidArgument(format!(
                "parameter '{missing}' of {function} needs --range or --fix"
            )));
        }
        if let Some((name, _)) = fixed.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "fixed value for '{name}' is not finite"
            )));
        }
        Ok(Self {
            function,
            ranges,
            fixed,
        })
    }

    /// Grid values per parameter in [`Landscape::parameters`] order.
    fn axes(&self) -> Vec<Vec<f64>> {
        self.function
            .parameters()
            .iter()
            .map(|p| {
                if let Some(r) = self.ranges.iter().find(|r| r.name == *p) {
                    r.values()
                } else {
                    let (_, v) = self.fixed.iter().find(|(n, _)| n == p).expect("validated in new");
                    vec![*v]
                }
            })
            .collect()
    }

    pub fn row_count(&self) -> usize {
        self.ranges.iter().map(|r| r.count).product()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    /// `None` for out-of-domain cells.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extrema {
    pub min: Option<f64>,
    pub argmin: Option<Vec<f64>>,
    pub max: Option<f64>,
    pub argmax: Option<Vec<f64>>,
    pub present: usize,
    pub absent: usize,
}

impl Extrema {
    fn of(rows: &[SweepRow]) -> Self {
        let mut out = Extrema {
            min: None,
            argmin: None,
            max: None,
            argmax: None,
            present: 0,
            absent: 0,
        };
        for row in rows {
            let Some(v) = row.value else {
                out.absent += 1;
                continue;
            };
            out.present += 1;
            if out.min.is_none_or(|m| v < m) {
                out.min = Some(v);
                out.argmin = Some(row.coords.clone());
            }
            if out.max.is_none_or(|m| v > m) {
                out.max = Some(v);
                out.argmax = Some(row.coords.clone());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub function: Landscape,
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
    pub extrema: Extrema,
}

impl SweepTable {
    /// Header of coordinate names then `value`; absent values are empty
    /// fields. Numbers use the shortest representation that parses back to
    /// the identical `f64`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{},value", self.columns.join(","))?;
        for row in &self.rows {
            for c in &row.coords {
                write!(out, "{c},")?;
            }
            match row.value {
                Some(v) => writeln!(out, "{v}")?,
                None => writeln!(out)?,
            }
        }
        out.flush()
    }
}

/// Evaluates the spec on its full grid, first parameter varying slowest.
/// Cells are computed in parallel; row order does not depend on scheduling.
pub fn sweep_grid(spec: &SweepSpec) -> SweepTable {
    let axes = spec.axes();
    let total: usize = axes.iter().map(Vec::len).product();
    let function = spec.function;
    let rows: Vec<SweepRow> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rem = flat;
            let mut coords = vec![0.0; axes.len()];
            for (slot, axis) in coords.iter_mut().zip(&axes).rev() {
                *slot = axis[rem % axis.len()];
                rem /= axis.len();
            }
            let value = function.evaluate(&coords);
            SweepRow { coords, value }
        })
        .collect();
    SweepTable {
        function,
        columns: function.parameters().iter().map(|s| s.to_string()).collect(),
        extrema: Extrema::of(&rows),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        let r: ParamRange = "theta=0:3.14159265:200".parse().unwrap();
        assert_eq!((r.name.as_str(), r.count, r.inclusive), ("theta", 200, false));
        let r: ParamRange = "mxp=0:1:11:incl".parse().unwrap();
        assert_eq!(r.values().last(), Some(&1.0));
        assert!((r.value(5) - 0.5).abs() < 1e-15);
        for bad in [
            "theta",
            "theta=0:1",
            "theta=a:1:3",
            "=0:1:3",
            "x=0:1:3:open",
            "x=0:1:-2",
        ] {
            assert!(
                matches!(bad.parse::<ParamRange>(), Err(Error::MalformedRange(_))),
                "{bad}"
            );
        }
        assert!(matches!("x=0:1:0".parse::<ParamRange>(), Err(Error::EmptyRange(_))));
        assert!(matches!("x=1:1:5".parse::<ParamRange>(), Err(Error::EmptyRange(_))));
        assert!("x=1:1:1:incl".parse::<ParamRange>().is_ok());
    }

    #[test]
    fn exclusive_range_never_reaches_end() {
        let r = ParamRange::new("xi", 0.0, 1.0, 4, false).unwrap();
        assert_eq!(r.values(), vec![0.0, 0.25, 0.5, 0.75]);
    }

    #[test]
    fn unknown_function_rejected() {
        assert!(matches!("F_bogus".parse::<Landscape>(), Err(Error::UnknownFunction(_))));
        for l in Landscape::ALL {
            assert_eq!(l.name().parse::<Landscape>().unwrap(), l);
        }
    }

    #[test]
    fn spec_validation() {
        let theta = ParamRange::new("theta", 0.0, 1.0, 3, false).unwrap();
        assert!(SweepSpec::new(Landscape::FPure, vec![theta.clone()], vec![]).is_err());
        assert!(SweepSpec::new(Landscape::FPure, vec![theta.clone()], vec![("xi".into(), 0.0)]).is_ok());
        assert!(SweepSpec::new(Landscape::FPure, vec![theta.clone()], vec![("sx".into(), 0.0)]).is_err());
        assert!(SweepSpec::new(Landscape::FPure, vec![theta.clone(), theta], vec![("xi".into(), 0.0)]).is_err());
    }

    #[test]
    fn row_major_order() {
        let spec = SweepSpec::new(
            Landscape::FCartesian,
            vec![
                ParamRange::new("mz", 0.0, 0.3, 3, false).unwrap(),
                ParamRange::new("mx", 0.0, 0.2, 2, false).unwrap(),
            ],
            vec![],
        )
        .unwrap();
        let table = sweep_grid(&spec);
        let coords: Vec<Vec<f64>> = table.rows.iter().map(|r| r.coords.clone()).collect();
        assert!((coords[1][1] - 0.1).abs() < 1e-15 && coords[1][0] == 0.0);
        assert_eq!(table.rows.len(), 6);
        assert_eq!(table.columns, vec!["mx", "mz"]);
    }

    #[test]
    fn disk_mask_and_csv() {
        let spec = SweepSpec::new(
            Landscape::FCartesian,
            vec![
                ParamRange::new("mx", -1.0, 1.0, 5, true).unwrap(),
                ParamRange::new("mz", -1.0, 1.0, 5, true).unwrap(),
            ],
            vec![],
        )
        .unwrap();
        let table = sweep_grid(&spec);
        assert_eq!(table.extrema.present + table.extrema.absent, 25);
        assert_eq!(table.rows[0].value, None);
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("mx,mz,value\n-1,-1,\n"));
        assert_eq!(text.lines().count(), 26);
    }
}
