//! Closed-form duality-sum landscapes and their first-principles
//! counterpart.
//!
//! All closed forms here take the input state `s_x ê_x`. [`duality_sum`]
//! works for any configuration and is what the closed forms are checked
//! against.

mod bound;
mod sweep;

pub use bound::{fibonacci_sphere, l_max, l_max_with, BoundSearch, DualityBound};
pub use sweep::{sweep_grid, Extrema, Landscape, ParamRange, SweepRow, SweepSpec, SweepTable};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interferometer::{fringe_scan, predictability, visibility_closed_form, InterferometerConfig};
use crate::qubit::{UnitAxis, Vec3};
use crate::scalar::Scalar;

/// Polar angle Θ from +z and azimuth ξ from +x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalAxis<T> {
    theta: T,
    xi: T,
}

impl<T: Scalar> SphericalAxis<T> {
    /// `theta ∈ [0, π]`, `xi ∈ [0, 2π)`.
    pub fn new(theta: T, xi: T) -> Result<Self> {
        if !(theta >= T::zero() && theta <= T::PI()) {
            return Err(Error::AngleOutOfRange(format!("theta = {theta} not in [0, pi]")));
        }
        if !(xi >= T::zero() && xi < T::TAU()) {
            return Err(Error::AngleOutOfRange(format!("xi = {xi} not in [0, 2pi)")));
        }
        Ok(Self { theta, xi })
    }

    pub fn from_axis(axis: &UnitAxis<T>) -> Self {
        let theta = axis.z().max(-T::one()).min(T::one()).acos();
        let mut xi = axis.y().atan2(axis.x());
        if xi < T::zero() {
            xi += T::TAU();
        }
        if xi >= T::TAU() {
            xi = T::zero();
        }
        Self { theta, xi }
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn xi(&self) -> T {
        self.xi
    }

    pub fn to_axis(&self) -> UnitAxis<T> {
        UnitAxis::from_spherical(self.theta, self.xi)
    }

    /// Component along ê_z, `cos Θ ê_z`.
    pub fn m_perp(&self) -> Vec3<T> {
        Vec3::new(T::zero(), T::zero(), self.theta.cos())
    }

    /// Projection on the (x, y) plane, `sin Θ (cos ξ ê_x + sin ξ ê_y)`.
    pub fn m_parallel(&self) -> Vec3<T> {
        let st = self.theta.sin();
        Vec3::new(st * self.xi.cos(), st * self.xi.sin(), T::zero())
    }
}

/// Predictability, visibility and `𝒫² + 𝒱²` for one configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualityResult<T> {
    pub predictability: T,
    pub visibility: T,
    pub sum: T,
}

impl<T: Scalar> DualityResult<T> {
    pub fn new(predictability: T, visibility: T) -> Self {
        Self {
            predictability,
            visibility,
            sum: predictability * predictability + visibility * visibility,
        }
    }
}

/// `𝒫² + 𝒱²` from the interferometer model: closed-form visibility for the
/// balanced splitter, exact three-point fringe recovery otherwise.
pub fn duality_sum<T: Scalar>(config: &InterferometerConfig<T>) -> DualityResult<T> {
    let visibility = if config.is_balanced() {
        visibility_closed_form(config).expect("balanced configuration")
    } else {
        fringe_scan(config).visibility()
    };
    DualityResult::new(predictability(config), visibility)
}

/// `|s_x|² (1 + sin²Θ (cos²Θ cos²ξ + sin²ξ) / (1 + s_x sinΘ cosΘ cosξ)²)`.
pub fn f_spherical<T: Scalar>(s_x: T, theta: T, xi: T) -> T {
    let (st, ct) = theta.sin_cos();
    let (sx, cx) = xi.sin_cos();
    let numerator = st * st * (ct * ct * cx * cx + sx * sx);
    let denominator = T::one() + s_x * st * ct * cx;
    s_x * s_x * (T::one() + numerator / (denominator * denominator))
}

/// Pure-state (`s = ê_x`) landscape over the axis direction.
pub fn f_pure<T: Scalar>(theta: T, xi: T) -> T {
    let (st, ct) = theta.sin_cos();
    let (sx, cx) = xi.sin_cos();
    let numerator = st * st * ct * ct * cx * cx + st * st * sx * sx;
    let denominator = T::one() + st * ct * cx;
    T::one() + numerator / (denominator * denominator)
}

/// Pure-state landscape in axis components,
/// `1 + (1 - m_x²)(1 - m_z²) / (1 + m_z m_x)²`.
pub fn f_cartesian<T: Scalar>(m_x: T, m_z: T) -> Result<T> {
    let radius_sq = m_x * m_x + m_z * m_z;
    if !(radius_sq <= T::one() + T::invariant_tol()) {
        return Err(Error::OutsideDisk {
            m_x: m_x.as_f64(),
            m_z: m_z.as_f64(),
        });
    }
    let denominator = T::one() + m_z * m_x;
    Ok(T::one() + (T::one() - m_x * m_x) * (T::one() - m_z * m_z) / (denominator * denominator))
}

/// Landscape along the arc from ê_y (`m_x' = 0`) to
/// ê_x' = (ê_x + ê_z)/√2 (`m_x' = 1`):
/// `s_x² + s_x² (1 - m_x'²/2)² / (1 + s_x m_x'²/2)²`.
pub fn f_rotated<T: Scalar>(s_x: T, m_x_prime: T) -> T {
    let q = m_x_prime * m_x_prime / T::lit(2.0);
    let ratio = (T::one() - q) / (T::one() + s_x * q);
    s_x * s_x + s_x * s_x * ratio * ratio
}

/// Basis obtained by a -45° rotation about ê_y:
/// `(ê_x', ê_y', ê_z') = ((ê_x+ê_z)/√2, ê_y, (-ê_x+ê_z)/√2)`.
pub fn rotated_basis<T: Scalar>() -> [UnitAxis<T>; 3] {
    let h = T::FRAC_1_SQRT_2();
    [
        UnitAxis::from_vec_unchecked(Vec3::new(h, T::zero(), h)),
        UnitAxis::e_y(),
        UnitAxis::from_vec_unchecked(Vec3::new(-h, T::zero(), h)),
    ]
}

/// Axis `m_x' ê_x' + sqrt(1 - m_x'²) ê_y` for `m_x' ∈ [0, 1]`.
pub fn axis_from_rotated<T: Scalar>(m_x_prime: T) -> Result<UnitAxis<T>> {
    if !(m_x_prime >= T::zero() && m_x_prime <= T::one()) {
        return Err(Error::InvalidArgument(format!("m_x' = {m_x_prime} not in [0, 1]")));
    }
    let [ex_prime, ey, _] = rotated_basis::<T>();
    let m_y = (T::one() - m_x_prime * m_x_prime).sqrt();
    Ok(UnitAxis::from_vec_unchecked(
        ex_prime.vector().scale(m_x_prime) + ey.vector().scale(m_y),
    ))
}

/// The published general-ω expression for `s = s_x ê_x`, evaluated exactly
/// as printed. Its angle conventions differ from the rest of the crate; see
/// [`OmegaConvention`] and use [`duality_sum`] for actual values.
pub fn duality_sum_omega_published<T: Scalar>(s_x: T, theta: T, xi: T, omega: T) -> T {
    let two = T::lit(2.0);
    let (st, _) = theta.sin_cos();
    let (s2t, c2t) = (two * theta).sin_cos();
    let (s2w, c2w) = (two * omega).sin_cos();
    let (sxi, cxi) = xi.sin_cos();
    let q = s2t * c2w * sxi + s2w * c2t + s2w * st * st * cxi * cxi;
    let numerator = q * q / T::lit(4.0) + st * st * cxi * cxi;
    let denominator = T::one() - s_x / two * q;
    s_x * s_x * (omega.sin().powi(2) + numerator / (denominator * denominator))
}

/// Angle conventions under which the published general-ω expression can be
/// read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaConvention {
    /// Arguments passed through unchanged.
    Identity,
    /// `ξ → π/2 - ξ`.
    ShiftedXi,
    /// `ξ → π/2 - ξ` together with `ω → -ω` (splitter rotating the other way).
    ShiftedXiReversedOmega,
}

impl OmegaConvention {
    pub const ALL: [OmegaConvention; 3] = [Self::Identity, Self::ShiftedXi, Self::ShiftedXiReversedOmega];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::ShiftedXi => "xi -> pi/2 - xi",
            Self::ShiftedXiReversedOmega => "xi -> pi/2 - xi, omega -> -omega",
        }
    }

    /// Evaluates the published expression at the crate's `(Θ, ξ, ω)` mapped
    /// through this convention.
    pub fn evaluate<T: Scalar>(&self, s_x: T, theta: T, xi: T, omega: T) -> T {
        match self {
            Self::Identity => duality_sum_omega_published(s_x, theta, xi, omega),
            Self::ShiftedXi => duality_sum_omega_published(s_x, theta, T::FRAC_PI_2() - xi, omega),
            Self::ShiftedXiReversedOmega => duality_sum_omega_published(s_x, theta, T::FRAC_PI_2() - xi, -omega),
        }
    }
}
