//! Predictability, fringe visibility and the duality sum `𝒫² + 𝒱²` for a
//! two-way interferometer whose middle phase shifter is replaced by an
//! arbitrary SU(2) rotation, together with the tight bound `L_U` over input
//! states.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to the precision used by the tests and the CLI.
//!
//! ```
//! use duality_core::landscape::{duality_sum, l_max};
//! use duality_core::{BlochVectorF64, InterferometerConfigF64, UnitAxisF64};
//!
//! let config = InterferometerConfigF64::balanced(UnitAxisF64::e_y(), BlochVectorF64::along_x(1.0).unwrap());
//! assert!((duality_sum(&config).sum - 2.0).abs() < 1e-12);
//! let bound = l_max(&UnitAxisF64::e_z(), std::f64::consts::FRAC_PI_2);
//! assert!((bound.l_max - 1.0).abs() < 1e-6);
//! ```

// Negated comparisons (`!(x <= tol)`) are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod consistency;
pub mod decompose;
pub mod error;
pub mod interferometer;
pub mod landscape;
pub mod measurement;
pub mod qubit;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Vec3F64 = qubit::Vec3<f64>;
pub type BlochVectorF64 = qubit::BlochVector<f64>;
pub type UnitAxisF64 = qubit::UnitAxis<f64>;
pub type Matrix2F64 = qubit::Matrix2<f64>;
pub type DensityMatrixF64 = qubit::DensityMatrix<f64>;
pub type Unitary2F64 = qubit::Unitary2<f64>;
pub type InterferometerConfigF64 = interferometer::InterferometerConfig<f64>;
pub type FringeCurveF64 = interferometer::FringeCurve<f64>;
pub type SphericalAxisF64 = landscape::SphericalAxis<f64>;
pub type DualityResultF64 = landscape::DualityResult<f64>;
pub type DualityBoundF64 = landscape::DualityBound<f64>;
pub type FactoredUnitaryF64 = decompose::FactoredUnitary<f64>;
pub type ExperimentPlanF64 = measurement::ExperimentPlan<f64>;
pub type FringeFitF64 = measurement::FringeFit<f64>;

pub type BlochVectorF32 = qubit::BlochVector<f32>;
pub type UnitAxisF32 = qubit::UnitAxis<f32>;
pub type Unitary2F32 = qubit::Unitary2<f32>;
pub type InterferometerConfigF32 = interferometer::InterferometerConfig<f32>;
pub type DualityResultF32 = landscape::DualityResult<f32>;
