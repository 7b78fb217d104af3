//! Phase-shifter / beam-splitter / phase-shifter factorization of a 2×2
//! unitary:
//!
//! ```text
//! U = e^{iφ} diag(e^{iψ}, e^{-iψ}) [[cos χ, sin χ], [-sin χ, cos χ]] diag(e^{iΔ}, e^{-iΔ})
//!   = e^{iφ} e^{iψσ_z} e^{iχσ_y} e^{iΔσ_z}
//! ```

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qubit::{Matrix2, Unitary2};
use crate::scalar::Scalar;

/// Unitarity residual accepted by [`factorize_unitary`].
pub const FACTORIZE_TOL: f64 = 1e-10;

const DEGENERATE_ENTRY: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactoredUnitary<T> {
    /// Global phase φ (named to keep it apart from the fringe phase).
    pub varphi: T,
    pub psi: T,
    pub chi: T,
    pub delta: T,
}

/// Splits `u` into `(varphi, psi, chi, delta)`.
///
/// `varphi = arg(det U)/2`; with `W = e^{-i varphi} U = [[a, b], [-b̄, ā]]`,
/// `chi = atan2(|b|, |a|)`, `psi = (arg a + arg b)/2` and
/// `delta = (arg a - arg b)/2`. When `b` (or `a`) vanishes the split between
/// psi and delta is arbitrary; delta is then pinned to 0.
pub fn factorize_unitary<T: Scalar>(u: &Matrix2<T>) -> Result<FactoredUnitary<T>> {
    let residual = u.unitarity_residual();
    if !(residual <= T::lit(FACTORIZE_TOL)) {
        return Err(Error::NotUnitary {
            residual: residual.as_f64(),
        });
    }
    let half = T::lit(0.5);
    let varphi = u.det().arg() * half;
    let w = u.scale(Complex::from_polar(T::one(), -varphi));
    let a = w.get(0, 0);
    let b = w.get(0, 1);
    let chi = b.norm().atan2(a.norm());
    let tiny = T::lit(DEGENERATE_ENTRY);
    let (psi, delta) = if b.norm() <= tiny {
        (a.arg(), T::zero())
    } else if a.norm() <= tiny {
        (b.arg(), T::zero())
    } else {
        ((a.arg() + b.arg()) * half, (a.arg() - b.arg()) * half)
    };
    Ok(FactoredUnitary {
        varphi,
        psi,
        chi,
        delta,
    })
}

/// Matrix product of the three factors and the global phase.
pub fn recompose<T: Scalar>(f: &FactoredUnitary<T>) -> Unitary2<T> {
    let zero = Complex::from(T::zero());
    let phase = |angle: T| Complex::from_polar(T::one(), angle);
    let left = Matrix2::new(phase(f.psi), zero, zero, phase(-f.psi));
    let (s, c) = f.chi.sin_cos();
    let middle = Matrix2::from_real(c, s, -s, c);
    let right = Matrix2::new(phase(f.delta), zero, zero, phase(-f.delta));
    Unitary2::from_matrix_unchecked((left * middle * right).scale(phase(f.varphi)))
}

/// Largest entrywise deviation of `recompose(factorize(u))` from `u`.
pub fn recomposition_residual<T: Scalar>(u: &Matrix2<T>, f: &FactoredUnitary<T>) -> T {
    recompose(f).matrix().max_abs_diff(u)
}
