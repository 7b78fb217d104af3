//! Single-qubit primitives: Bloch vectors, 2×2 complex matrices, Pauli
//! algebra, axis-angle rotations and unitary conjugation.
//!
//! States are carried as Bloch vectors. The density-matrix view exists so
//! that every Bloch-language formula can be checked against plain matrix
//! evolution.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Plain real 3-vector. No invariant attached.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    /// Rodrigues rotation of `self` by `angle` (right-handed) about the unit
    /// vector `axis`.
    pub fn rotated(&self, axis: &Vec3<T>, angle: T) -> Self {
        let (sin, cos) = angle.sin_cos();
        let along = axis.dot(self);
        self.scale(cos) + axis.cross(self).scale(sin) + axis.scale((T::one() - cos) * along)
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// Bloch vector of a (possibly mixed) qubit state, `|s| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BlochVector<T>(Vec3<T>);

impl<T: Scalar> BlochVector<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        Self::from_vec(Vec3::new(x, y, z))
    }

    pub fn from_vec(v: Vec3<T>) -> Result<Self> {
        let norm = v.norm();
        if !(norm <= T::one() + T::invariant_tol()) {
            return Err(Error::NonPhysicalState { norm: norm.as_f64() });
        }
        Ok(Self(v))
    }

    /// Wraps a vector already known to be physical (e.g. the image of a
    /// physical state under a rotation).
    pub(crate) fn from_vec_unchecked(v: Vec3<T>) -> Self {
        Self(v)
    }

    /// Totally depolarized state.
    pub fn zero() -> Self {
        Self(Vec3::zero())
    }

    /// `s_x ê_x`, the family of input states used throughout the landscape
    /// formulas.
    pub fn along_x(s_x: T) -> Result<Self> {
        Self::new(s_x, T::zero(), T::zero())
    }

    pub fn x(&self) -> T {
        self.0.x
    }

    pub fn y(&self) -> T {
        self.0.y
    }

    pub fn z(&self) -> T {
        self.0.z
    }

    pub fn vector(&self) -> Vec3<T> {
        self.0
    }

    pub fn norm(&self) -> T {
        self.0.norm()
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - T::one()).abs() <= T::invariant_tol()
    }
}

/// Unit vector in R³: rotation axes and the fixed basis directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitAxis<T>(Vec3<T>);

impl<T: Scalar> UnitAxis<T> {
    /// Accepts components whose norm is already 1 within tolerance.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        let norm = v.norm();
        if !((norm - T::one()).abs() <= T::invariant_tol()) {
            return Err(Error::NotUnitAxis { norm: norm.as_f64() });
        }
        Ok(Self(v))
    }

    /// Rescales an arbitrary nonzero vector to unit length.
    pub fn normalized(x: T, y: T, z: T) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        let norm = v.norm();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::ZeroAxis);
        }
        Ok(Self(v.scale(norm.recip())))
    }

    pub(crate) fn from_vec_unchecked(v: Vec3<T>) -> Self {
        Self(v)
    }

    /// `cos Θ ê_z + sin Θ (cos ξ ê_x + sin ξ ê_y)`; defined for any real
    /// angles.
    pub fn from_spherical(theta: T, xi: T) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sx, cx) = xi.sin_cos();
        Self(Vec3::new(st * cx, st * sx, ct))
    }

    pub fn e_x() -> Self {
        Self(Vec3::new(T::one(), T::zero(), T::zero()))
    }

    pub fn e_y() -> Self {
        Self(Vec3::new(T::zero(), T::one(), T::zero()))
    }

    pub fn e_z() -> Self {
        Self(Vec3::new(T::zero(), T::zero(), T::one()))
    }

    pub fn x(&self) -> T {
        self.0.x
    }

    pub fn y(&self) -> T {
        self.0.y
    }

    pub fn z(&self) -> T {
        self.0.z
    }

    pub fn vector(&self) -> Vec3<T> {
        self.0
    }
}

impl<T: Scalar> Neg for UnitAxis<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Scalar> Matrix2<T> {
    pub fn new(m00: Complex<T>, m01: Complex<T>, m10: Complex<T>, m11: Complex<T>) -> Self {
        Self {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn from_real(m00: T, m01: T, m10: T, m11: T) -> Self {
        Self::new(m00.into(), m01.into(), m10.into(), m11.into())
    }

    pub fn identity() -> Self {
        Self::from_real(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn zero() -> Self {
        Self::from_real(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn pauli_x() -> Self {
        Self::from_real(T::zero(), T::one(), T::one(), T::zero())
    }

    pub fn pauli_y() -> Self {
        let i = Complex::i();
        Self::new(Complex::from(T::zero()), -i, i, Complex::from(T::zero()))
    }

    pub fn pauli_z() -> Self {
        Self::from_real(T::one(), T::zero(), T::zero(), -T::one())
    }

    /// `v·σ = v_x σ_x + v_y σ_y + v_z σ_z`.
    pub fn pauli_dot(v: &Vec3<T>) -> Self {
        Self::pauli_x().scale(v.x.into()) + Self::pauli_y().scale(v.y.into()) + Self::pauli_z().scale(v.z.into())
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.m[row][col]
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        let m = &self.m;
        Self::new(m[0][0] * k, m[0][1] * k, m[1][0] * k, m[1][1] * k)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }

    /// Entrywise distance of `M M†` from the identity.
    pub fn unitarity_residual(&self) -> T {
        (*self * self.adjoint()).max_abs_diff(&Self::identity())
    }

    pub fn hermiticity_residual(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }
}

impl<T: Scalar> Mul for Matrix2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Scalar> Add for Matrix2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl<T: Scalar> Sub for Matrix2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(Complex::from(-T::one()))
    }
}

/// Hermitian, unit-trace, positive semidefinite 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<T>(Matrix2<T>);

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(m: Matrix2<T>) -> Result<Self> {
        let tol = T::invariant_tol();
        let residual = m.hermiticity_residual();
        if !(residual <= tol) {
            return Err(Error::NotHermitian {
                residual: residual.as_f64(),
            });
        }
        let trace = m.trace().re;
        if !((trace - T::one()).abs() <= tol) {
            return Err(Error::BadTrace { trace: trace.as_f64() });
        }
        // Eigenvalues of a Hermitian 2×2: tr/2 ± sqrt(((a-d)/2)² + |b|²).
        let half_gap = (m.m[0][0].re - m.m[1][1].re) / T::lit(2.0);
        let radius = (half_gap * half_gap + m.m[0][1].norm_sqr()).sqrt();
        let lowest = trace / T::lit(2.0) - radius;
        if !(lowest >= -tol) {
            return Err(Error::NegativeEigenvalue {
                eigenvalue: lowest.as_f64(),
            });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix2<T> {
        &self.0
    }
}

/// 2×2 unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2<T>(Matrix2<T>);

impl<T: Scalar> Unitary2<T> {
    pub fn new(m: Matrix2<T>) -> Result<Self> {
        Self::with_tolerance(m, T::invariant_tol())
    }

    pub fn with_tolerance(m: Matrix2<T>, tol: T) -> Result<Self> {
        let residual = m.unitarity_residual();
        if !(residual <= tol) {
            return Err(Error::NotUnitary {
                residual: residual.as_f64(),
            });
        }
        Ok(Self(m))
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix2<T>) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn matrix(&self) -> &Matrix2<T> {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn det(&self) -> Complex<T> {
        self.0.det()
    }

    /// Matrix product `self · rhs`, applied right-to-left to states.
    pub fn then_after(&self, rhs: &Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

/// `ρ = (𝟙 + s·σ)/2`.
pub fn bloch_to_density<T: Scalar>(s: &BlochVector<T>) -> DensityMatrix<T> {
    let half = Complex::from(T::lit(0.5));
    DensityMatrix((Matrix2::identity() + Matrix2::pauli_dot(&s.vector())).scale(half))
}

/// Components `tr(ρ σ_k)`.
pub fn density_to_bloch<T: Scalar>(rho: &DensityMatrix<T>) -> BlochVector<T> {
    let m = rho.matrix();
    let v = Vec3::new(
        (*m * Matrix2::pauli_x()).trace().re,
        (*m * Matrix2::pauli_y()).trace().re,
        (*m * Matrix2::pauli_z()).trace().re,
    );
    // A validated density matrix has |s| <= 1 up to the invariant tolerance.
    BlochVector::from_vec_unchecked(v)
}

/// `exp(-i angle axis·σ / 2) = cos(angle/2) 𝟙 - i sin(angle/2) axis·σ`.
pub fn rotation_unitary<T: Scalar>(axis: &UnitAxis<T>, angle: T) -> Unitary2<T> {
    let (sin, cos) = (angle / T::lit(2.0)).sin_cos();
    let generator = Matrix2::pauli_dot(&axis.vector());
    let m = Matrix2::identity().scale(cos.into()) + generator.scale(Complex::new(T::zero(), -sin));
    Unitary2(m)
}

/// Image of `s` under the SO(3) rotation induced by [`rotation_unitary`].
pub fn rotate_bloch<T: Scalar>(axis: &UnitAxis<T>, angle: T, s: &BlochVector<T>) -> BlochVector<T> {
    BlochVector::from_vec_unchecked(s.vector().rotated(&axis.vector(), angle))
}

/// `U ρ U†`.
pub fn conjugate_state<T: Scalar>(u: &Unitary2<T>, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
    DensityMatrix(*u.matrix() * *rho.matrix() * u.matrix().adjoint())
}
