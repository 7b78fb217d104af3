//! The two-way interferometer `BS(ω)⁻¹ · U(m̂, φ) · BS(ω)` with
//! `BS(ω) = exp(-iωσ_y/2)` and `U = exp(-iφ m̂·σ/2)`, measured in the σ_z
//! (which-path) basis.
//!
//! Quantities come in up to three independent routes:
//! * Bloch route: successive Rodrigues rotations of the input Bloch vector
//!   (the default, valid for any ω);
//! * closed form: the balanced-splitter expressions in terms of
//!   `t(m̂) = -m_z ê_x + m_y ê_y + m_x ê_z`;
//! * matrix oracle: explicit `W ρ W†` evolution and projector traces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qubit::{
    bloch_to_density, conjugate_state, rotate_bloch, rotation_unitary, BlochVector, Matrix2, UnitAxis, Unitary2, Vec3,
};
use crate::scalar::Scalar;

/// Default number of uniform φ samples when a fringe grid is requested.
pub const DEFAULT_PHI_GRID: usize = 256;

/// Grid size at and above which [`visibility_scan`] also cross-checks the
/// three-point result against dense-grid extrema.
pub const DENSE_GRID_CHECK: usize = 10_000;

const DENSE_GRID_TOL: f64 = 1e-6;

/// One experiment: beam-splitter angle, middle rotation axis, input state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterferometerConfig<T> {
    pub omega: T,
    pub axis: UnitAxis<T>,
    pub input: BlochVector<T>,
}

impl<T: Scalar> InterferometerConfig<T> {
    pub fn new(omega: T, axis: UnitAxis<T>, input: BlochVector<T>) -> Self {
        Self { omega, axis, input }
    }

    /// 50:50 splitter, `ω = π/2`.
    pub fn balanced(axis: UnitAxis<T>, input: BlochVector<T>) -> Self {
        Self::new(T::FRAC_PI_2(), axis, input)
    }

    pub fn is_balanced(&self) -> bool {
        (self.omega - T::FRAC_PI_2()).abs() <= T::invariant_tol()
    }

    fn require_balanced(&self) -> Result<()> {
        if self.is_balanced() {
            Ok(())
        } else {
            Err(Error::UnbalancedSplitter {
                omega: self.omega.as_f64(),
            })
        }
    }
}

/// Sampled fringe `p(φ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FringeCurve<T> {
    phis: Vec<T>,
    probs: Vec<T>,
}

impl<T: Scalar> FringeCurve<T> {
    pub fn new(phis: Vec<T>, probs: Vec<T>) -> Result<Self> {
        if phis.len() != probs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} phases but {} probabilities",
                phis.len(),
                probs.len()
            )));
        }
        if phis.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument("phases must be strictly increasing".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(**p >= T::zero() && **p <= T::one())) {
            return Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")));
        }
        Ok(Self { phis, probs })
    }

    pub fn phis(&self) -> &[T] {
        &self.phis
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn i_max(&self) -> T {
        self.probs.iter().copied().fold(T::neg_infinity(), T::max)
    }

    pub fn i_min(&self) -> T {
        self.probs.iter().copied().fold(T::infinity(), T::min)
    }

    /// `(I_max - I_min) / (I_max + I_min)` read off the samples; 0 when the
    /// curve is identically zero.
    pub fn visibility(&self) -> T {
        let (hi, lo) = (self.i_max(), self.i_min());
        if hi + lo <= T::zero() {
            T::zero()
        } else {
            (hi - lo) / (hi + lo)
        }
    }
}

/// Exact sinusoid `p(φ) = offset - cosine·cos φ - sine·sin φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FringeCoefficients<T> {
    pub offset: T,
    pub cosine: T,
    pub sine: T,
}

impl<T: Scalar> FringeCoefficients<T> {
    /// Recovers the coefficients from samples at `φ = 0, π/2, π`.
    pub fn from_three_points(p_zero: T, p_half_pi: T, p_pi: T) -> Self {
        let half = T::lit(0.5);
        let offset = (p_zero + p_pi) * half;
        Self {
            offset,
            cosine: (p_pi - p_zero) * half,
            sine: offset - p_half_pi,
        }
    }

    pub fn amplitude(&self) -> T {
        self.cosine.hypot(self.sine)
    }

    pub fn eval(&self, phi: T) -> T {
        let (s, c) = phi.sin_cos();
        self.offset - self.cosine * c - self.sine * s
    }

    pub fn i_max(&self) -> T {
        self.offset + self.amplitude()
    }

    pub fn i_min(&self) -> T {
        self.offset - self.amplitude()
    }

    /// Amplitude over offset, clamped to `[0, 1]`; a vanishing offset gives
    /// zero.
    pub fn visibility(&self) -> T {
        if self.offset <= T::degenerate_tol() {
            return T::zero();
        }
        (self.amplitude() / self.offset).min(T::one())
    }
}

/// `exp(-iωσ_y/2)`.
pub fn beam_splitter<T: Scalar>(omega: T) -> Unitary2<T> {
    rotation_unitary(&UnitAxis::e_y(), omega)
}

/// `W = BS(ω)† · U(m̂, φ) · BS(ω)`.
pub fn overall_unitary<T: Scalar>(config: &InterferometerConfig<T>, phi: T) -> Unitary2<T> {
    let bs = beam_splitter(config.omega);
    let middle = rotation_unitary(&config.axis, phi);
    bs.adjoint().then_after(&middle).then_after(&bs)
}

/// Rotation axis of the overall unitary for the balanced splitter:
/// `t(m̂) = -m_z ê_x + m_y ê_y + m_x ê_z`.
pub fn t_vector<T: Scalar>(m: &UnitAxis<T>) -> UnitAxis<T> {
    UnitAxis::from_vec_unchecked(Vec3::new(-m.z(), m.y(), m.x()))
}

/// State after the first beam splitter.
pub fn state_after_splitter<T: Scalar>(config: &InterferometerConfig<T>) -> BlochVector<T> {
    rotate_bloch(&UnitAxis::e_y(), config.omega, &config.input)
}

/// Path probabilities `(w₊, w₋)` after the first beam splitter.
pub fn path_probabilities<T: Scalar>(config: &InterferometerConfig<T>) -> (T, T) {
    let (sin, cos) = config.omega.sin_cos();
    let s = &config.input;
    let z = s.z() * cos - s.x() * sin;
    let half = T::lit(0.5);
    (half * (T::one() + z), half * (T::one() - z))
}

/// `𝒫 = |w₊ - w₋| = |s_z cos ω - s_x sin ω|`.
pub fn predictability<T: Scalar>(config: &InterferometerConfig<T>) -> T {
    let (sin, cos) = config.omega.sin_cos();
    (config.input.z() * cos - config.input.x() * sin).abs()
}

/// Bloch vector leaving the interferometer, via three rotations.
pub fn final_state<T: Scalar>(config: &InterferometerConfig<T>, phi: T) -> BlochVector<T> {
    let ey = UnitAxis::e_y();
    let s1 = rotate_bloch(&ey, config.omega, &config.input);
    let s2 = rotate_bloch(&config.axis, phi, &s1);
    rotate_bloch(&ey, -config.omega, &s2)
}

/// Probability of the `-1` outcome of σ_z on the output state.
pub fn detection_probability<T: Scalar>(config: &InterferometerConfig<T>, phi: T) -> T {
    let s = final_state(config, phi);
    clamp_unit(T::lit(0.5) * (T::one() - s.z()))
}

/// Closed-form fringe of the balanced interferometer:
/// offset `(1 - (t·s) t_z)/2`, cosine `(s_z - (t·s) t_z)/2`, sine `(t×s)_z/2`.
pub fn fringe_coefficients<T: Scalar>(config: &InterferometerConfig<T>) -> Result<FringeCoefficients<T>> {
    config.require_balanced()?;
    let t = t_vector(&config.axis).vector();
    let s = config.input.vector();
    let along = t.dot(&s) * t.z;
    let half = T::lit(0.5);
    Ok(FringeCoefficients {
        offset: half * (T::one() - along),
        cosine: half * (s.z - along),
        sine: half * t.cross(&s).z,
    })
}

pub fn detection_probability_closed_form<T: Scalar>(config: &InterferometerConfig<T>, phi: T) -> Result<T> {
    Ok(clamp_unit(fringe_coefficients(config)?.eval(phi)))
}

/// Balanced-splitter visibility
/// `sqrt([s_z - (t·s)t_z]² + [(t×s)_z]²) / [1 - (t·s)t_z]`.
///
/// When the denominator vanishes (`s = ê_z = ±t`) the fringe itself is
/// identically zero and the visibility is 0.
pub fn visibility_closed_form<T: Scalar>(config: &InterferometerConfig<T>) -> Result<T> {
    config.require_balanced()?;
    let t = t_vector(&config.axis).vector();
    let s = config.input.vector();
    let along = t.dot(&s) * t.z;
    let denominator = T::one() - along;
    if denominator <= T::lit(2.0) * T::degenerate_tol() {
        return Ok(T::zero());
    }
    let numerator = (s.z - along).powi(2) + t.cross(&s).z.powi(2);
    Ok((numerator / denominator.powi(2)).sqrt().min(T::one()))
}

/// Uniform grid `φ_k = 2πk/n`, `k = 0..n`.
pub fn phi_grid<T: Scalar>(n: usize) -> Vec<T> {
    let step = T::TAU() / T::lit(n as f64);
    (0..n).map(|k| T::lit(k as f64) * step).collect()
}

pub fn fringe_curve<T: Scalar>(config: &InterferometerConfig<T>, n_points: usize) -> Result<FringeCurve<T>> {
    let phis = phi_grid(n_points);
    let probs = phis.iter().map(|&phi| detection_probability(config, phi)).collect();
    FringeCurve::new(phis, probs)
}

/// Fringe coefficients for any ω, from three exact samples of `p(φ)`.
pub fn fringe_scan<T: Scalar>(config: &InterferometerConfig<T>) -> FringeCoefficients<T> {
    FringeCoefficients::from_three_points(
        detection_probability(config, T::zero()),
        detection_probability(config, T::FRAC_PI_2()),
        detection_probability(config, T::PI()),
    )
}

/// Visibility for any ω.
///
/// `p(φ)` is exactly sinusoidal, so the offset and both quadratures are
/// recovered from `φ ∈ {0, π/2, π}`. With `n_points >= 10⁴` the result is
/// also checked against the extrema of an `n_points` uniform grid (only when
/// the fringe offset exceeds 1e-6, below which the grid ratio is dominated
/// by rounding).
pub fn visibility_scan<T: Scalar>(config: &InterferometerConfig<T>, n_points: usize) -> Result<T> {
    if n_points < 3 {
        return Err(Error::InvalidArgument(format!(
            "visibility scan needs at least 3 points, got {n_points}"
        )));
    }
    let coefficients = fringe_scan(config);
    let visibility = coefficients.visibility();
    if n_points >= DENSE_GRID_CHECK && coefficients.offset > T::lit(1e-6) {
        let grid = fringe_curve(config, n_points)?.visibility();
        if !((grid - visibility).abs() <= T::lit(DENSE_GRID_TOL)) {
            return Err(Error::ScanMismatch {
                three_point: visibility.as_f64(),
                grid: grid.as_f64(),
            });
        }
    }
    Ok(visibility)
}

/// Matrix-oracle detection probability `tr[(𝟙-σ_z)/2 · W ρ W†]`.
pub fn detection_probability_oracle<T: Scalar>(config: &InterferometerConfig<T>, phi: T) -> T {
    let w = overall_unitary(config, phi);
    let out = conjugate_state(&w, &bloch_to_density(&config.input));
    (minus_projector() * *out.matrix()).trace().re
}

/// Matrix-oracle predictability from the σ_z projectors after the first
/// splitter.
pub fn predictability_oracle<T: Scalar>(config: &InterferometerConfig<T>) -> T {
    let after = conjugate_state(&beam_splitter(config.omega), &bloch_to_density(&config.input));
    let w_minus = (minus_projector() * *after.matrix()).trace().re;
    let w_plus = (plus_projector() * *after.matrix()).trace().re;
    (w_plus - w_minus).abs()
}

/// Matrix-oracle visibility: three-point sinusoid recovery on
/// [`detection_probability_oracle`].
pub fn visibility_oracle<T: Scalar>(config: &InterferometerConfig<T>) -> T {
    FringeCoefficients::from_three_points(
        detection_probability_oracle(config, T::zero()),
        detection_probability_oracle(config, T::FRAC_PI_2()),
        detection_probability_oracle(config, T::PI()),
    )
    .visibility()
}

fn minus_projector<T: Scalar>() -> Matrix2<T> {
    Matrix2::from_real(T::zero(), T::zero(), T::zero(), T::one())
}

fn plus_projector<T: Scalar>() -> Matrix2<T> {
    Matrix2::from_real(T::one(), T::zero(), T::zero(), T::zero())
}

fn clamp_unit<T: Scalar>(p: T) -> T {
    p.max(T::zero()).min(T::one())
}
