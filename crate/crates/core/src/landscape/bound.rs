//! Tight bound `L_U = max_s (𝒫² + 𝒱²)` over all input states for a fixed
//! middle unitary.
//!
//! Stage one evaluates a Fibonacci lattice of pure states (plus the six
//! cardinal directions) on the unit sphere and on interior shells. Stage two
//! refines the best few cells by coordinate-wise golden-section search in a
//! local chart (two tangent directions and the radius), halving the step
//! whenever a sweep stops moving, until the step drops below the tolerance.
//! The chart is re-centred on every accepted move, so no pole of a global
//! polar parametrization is ever hit.

use serde::Serialize;

use super::duality_sum;
use crate::interferometer::InterferometerConfig;
use crate::qubit::{BlochVector, UnitAxis, Vec3};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundSearch {
    /// Pure states in the stage-one lattice.
    pub lattice_points: usize,
    /// Interior radii scanned with the same lattice.
    pub shells: Vec<f64>,
    /// Number of best stage-one cells refined independently.
    pub starts: usize,
    /// Refinement stops once the step falls below this.
    pub tolerance: f64,
    pub max_cycles: usize,
}

impl Default for BoundSearch {
    fn default() -> Self {
        Self {
            lattice_points: 10_000,
            shells: vec![0.25, 0.5, 0.75],
            starts: 8,
            tolerance: 1e-6,
            max_cycles: 400,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualityBound<T> {
    pub l_max: T,
    pub argmax_state: BlochVector<T>,
    /// Refinement sweeps summed over all starts.
    pub iterations: usize,
    /// Lattice size used in stage one.
    pub grid_resolution: usize,
    pub evaluations: usize,
}

/// `n` quasi-uniform unit vectors (golden-angle spiral).
pub fn fibonacci_sphere<T: Scalar>(n: usize) -> Vec<Vec3<T>> {
    let golden_angle = T::PI() * (T::lit(3.0) - T::lit(5.0).sqrt());
    let count = T::lit(n as f64);
    (0..n)
        .map(|k| {
            let kf = T::lit(k as f64);
            let z = T::one() - (T::lit(2.0) * kf + T::one()) / count;
            let r = (T::one() - z * z).max(T::zero()).sqrt();
            let (s, c) = (kf * golden_angle).sin_cos();
            Vec3::new(r * c, r * s, z)
        })
        .collect()
}

pub fn l_max<T: Scalar>(axis: &UnitAxis<T>, omega: T) -> DualityBound<T> {
    l_max_with(axis, omega, &BoundSearch::default())
}

pub fn l_max_with<T: Scalar>(axis: &UnitAxis<T>, omega: T, search: &BoundSearch) -> DualityBound<T> {
    let mut objective = Objective {
        axis: *axis,
        omega,
        evaluations: 0,
    };

    let mut directions = fibonacci_sphere::<T>(search.lattice_points);
    for v in [UnitAxis::e_x(), UnitAxis::e_y(), UnitAxis::e_z()] {
        directions.push(v.vector());
        directions.push(-v.vector());
    }
    let radii: Vec<T> = std::iter::once(T::one())
        .chain(search.shells.iter().map(|&r| T::lit(r)))
        .collect();

    let mut cells: Vec<Cell<T>> = Vec::with_capacity(directions.len() * radii.len());
    for &radius in &radii {
        for &direction in &directions {
            let value = objective.eval(direction, radius);
            cells.push(Cell {
                direction,
                radius,
                value,
            });
        }
    }
    // Stable sort keeps lattice order among ties, so the result is
    // deterministic.
    cells.sort_by(|a, b| b.value.partial_cmp(&a.value).unwrap_or(std::cmp::Ordering::Equal));

    let initial_step = T::lit(2.0 * (4.0 * std::f64::consts::PI / search.lattice_points.max(1) as f64).sqrt());
    let mut best = cells[0];
    let mut iterations = 0;
    for start in cells.iter().take(search.starts.max(1)) {
        let (refined, cycles) = refine(&mut objective, *start, initial_step, search);
        iterations += cycles;
        if refined.value > best.value {
            best = refined;
        }
    }

    DualityBound {
        l_max: best.value,
        argmax_state: BlochVector::from_vec_unchecked(best.direction.scale(best.radius)),
        iterations,
        grid_resolution: search.lattice_points,
        evaluations: objective.evaluations,
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell<T> {
    direction: Vec3<T>,
    radius: T,
    value: T,
}

struct Objective<T> {
    axis: UnitAxis<T>,
    omega: T,
    evaluations: usize,
}

impl<T: Scalar> Objective<T> {
    fn eval(&mut self, direction: Vec3<T>, radius: T) -> T {
        self.evaluations += 1;
        let state = BlochVector::from_vec_unchecked(direction.scale(radius));
        duality_sum(&InterferometerConfig::new(self.omega, self.axis, state)).sum
    }
}

fn refine<T: Scalar>(
    objective: &mut Objective<T>,
    start: Cell<T>,
    initial_step: T,
    search: &BoundSearch,
) -> (Cell<T>, usize) {
    let tolerance = T::lit(search.tolerance);
    let mut cell = start;
    let mut step = initial_step;
    let mut cycles = 0;
    while step >= tolerance && cycles < search.max_cycles {
        cycles += 1;
        let before = cell.direction.scale(cell.radius);

        for tangent_index in 0..2 {
            let (u, v) = tangent_frame(&cell.direction);
            let tangent = if tangent_index == 0 { u } else { v };
            let radius = cell.radius;
            let base = cell.direction;
            let (offset, value) = golden_max(
                |a| objective.eval(normalize(base + tangent.scale(a)), radius),
                -step,
                step,
                step,
            );
            if value > cell.value {
                cell.direction = normalize(base + tangent.scale(offset));
                cell.value = value;
            }
        }

        let lo = (cell.radius - step).max(T::zero());
        let hi = (cell.radius + step).min(T::one());
        let direction = cell.direction;
        let (radius, value) = golden_max(|r| objective.eval(direction, r), lo, hi, step);
        if value > cell.value {
            cell.radius = radius;
            cell.value = value;
        }

        let moved = (cell.direction.scale(cell.radius) - before).norm();
        if moved < step / T::lit(4.0) {
            step /= T::lit(2.0);
        }
    }
    (cell, cycles)
}

/// Golden-section maximization on `[lo, hi]` down to `scale·1e-3`; the
/// endpoints are also compared so boundary maxima are returned exactly.
fn golden_max<T: Scalar, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, scale: T) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let tol = (scale * T::lit(1e-3)).max(T::epsilon());
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for x in [lo, hi] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

fn tangent_frame<T: Scalar>(n: &Vec3<T>) -> (Vec3<T>, Vec3<T>) {
    let helper = if n.x.abs() < T::lit(0.9) {
        Vec3::new(T::one(), T::zero(), T::zero())
    } else {
        Vec3::new(T::zero(), T::one(), T::zero())
    };
    let u = normalize(helper - n.scale(helper.dot(n)));
    let v = n.cross(&u);
    (u, v)
}

fn normalize<T: Scalar>(v: Vec3<T>) -> Vec3<T> {
    v.scale(v.norm().recip())
}
