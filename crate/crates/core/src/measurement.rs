//! Repeated σ_z measurements at a grid of phases, and least-squares fringe
//! fitting of the observed frequencies.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interferometer::{detection_probability, phi_grid, InterferometerConfig};
use crate::scalar::Scalar;

/// Name of the generator recorded alongside every sampled result.
pub const RNG_NAME: &str = "ChaCha8Rng";

const VANISHING_OFFSET: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentPlan<T> {
    pub config: InterferometerConfig<T>,
    pub phi_points: usize,
    pub shots_per_point: u64,
    pub seed: u64,
    rng_name: &'static str,
}

impl<T: Scalar> ExperimentPlan<T> {
    pub fn new(config: InterferometerConfig<T>, phi_points: usize, shots_per_point: u64, seed: u64) -> Result<Self> {
        if phi_points < 3 {
            return Err(Error::InvalidArgument(format!(
                "need at least 3 phase points, got {phi_points}"
            )));
        }
        if shots_per_point < 1 {
            return Err(Error::InvalidArgument("need at least one shot per point".into()));
        }
        Ok(Self {
            config,
            phi_points,
            shots_per_point,
            seed,
            rng_name: RNG_NAME,
        })
    }

    pub fn rng_name(&self) -> &'static str {
        self.rng_name
    }
}

/// Outcome tally at one phase: `successes` counts the `-1` outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Count<T> {
    pub phi: T,
    pub successes: u64,
    pub shots: u64,
}

impl<T: Scalar> Count<T> {
    pub fn frequency(&self) -> T {
        T::lit(self.successes as f64 / self.shots as f64)
    }
}

/// Samples every phase of the plan's uniform grid.
///
/// Point `k` draws from its own ChaCha8 stream (`seed`, stream `k`), so the
/// output is identical whether points are processed sequentially or in
/// parallel. The number of `-1` outcomes among `shots_per_point`
/// independent Bernoulli trials is drawn directly from the binomial law.
pub fn sample_counts<T: Scalar>(plan: &ExperimentPlan<T>) -> Vec<Count<T>> {
    let phis = phi_grid::<T>(plan.phi_points);
    phis.into_par_iter()
        .enumerate()
        .map(|(k, phi)| {
            let p = detection_probability(&plan.config, phi).as_f64().clamp(0.0, 1.0);
            let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
            rng.set_stream(k as u64);
            let successes = Binomial::new(plan.shots_per_point, p)
                .expect("probability clamped to [0, 1]")
                .sample(&mut rng);
            Count {
                phi,
                successes,
                shots: plan.shots_per_point,
            }
        })
        .collect()
}

/// Least-squares fringe `p(φ) ≈ a - b cos φ - c sin φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FringeFit<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub i_max: T,
    pub i_min: T,
    pub visibility_hat: T,
    /// Delta-method standard error of `visibility_hat` from binomial
    /// variance at the fitted probabilities; infinite when the offset
    /// vanishes.
    pub std_error: T,
}

/// Unweighted OLS of observed frequencies on `{1, -cos φ, -sin φ}` through
/// the 3×3 normal equations.
pub fn fit_fringe<T: Scalar>(counts: &[Count<T>]) -> Result<FringeFit<T>> {
    let mut distinct: Vec<T> = counts.iter().map(|c| c.phi).collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::RankDeficientFit {
            distinct: distinct.len(),
        });
    }
    if counts.iter().any(|c| c.shots == 0) {
        return Err(Error::InvalidArgument("count with zero shots".into()));
    }

    let design = |phi: T| {
        let (s, c) = phi.sin_cos();
        [T::one(), -c, -s]
    };
    let mut normal = [[T::zero(); 3]; 3];
    let mut rhs = [T::zero(); 3];
    for count in counts {
        let x = design(count.phi);
        let y = count.frequency();
        for i in 0..3 {
            rhs[i] += x[i] * y;
            for j in 0..3 {
                normal[i][j] += x[i] * x[j];
            }
        }
    }
    let inverse = invert3(&normal).ok_or(Error::RankDeficientFit {
        distinct: distinct.len(),
    })?;
    let beta = mat_vec(&inverse, &rhs);
    let [a, b, c] = beta;

    // Sandwich covariance (XᵀX)⁻¹ Xᵀ Σ X (XᵀX)⁻¹ with Σ = diag(p(1-p)/n).
    let mut meat = [[T::zero(); 3]; 3];
    for count in counts {
        let x = design(count.phi);
        let fitted = (x[0] * a + x[1] * b + x[2] * c).max(T::zero()).min(T::one());
        let var = fitted * (T::one() - fitted) / T::lit(count.shots as f64);
        for i in 0..3 {
            for j in 0..3 {
                meat[i][j] += var * x[i] * x[j];
            }
        }
    }
    let cov = mat_mul(&mat_mul(&inverse, &meat), &inverse);

    let amplitude = b.hypot(c);
    let (visibility_hat, std_error) = if a <= T::lit(VANISHING_OFFSET) {
        (T::zero(), T::infinity())
    } else {
        let v = amplitude / a;
        let se = if amplitude > T::zero() {
            let g = [-v / a, b / (a * amplitude), c / (a * amplitude)];
            quad_form(&cov, &g).max(T::zero()).sqrt()
        } else {
            (cov[1][1] + cov[2][2]).max(T::zero()).sqrt() / a
        };
        (v, se)
    };

    Ok(FringeFit {
        a,
        b,
        c,
        i_max: a + amplitude,
        i_min: a - amplitude,
        visibility_hat,
        std_error,
    })
}

fn invert3<T: Scalar>(m: &[[T; 3]; 3]) -> Option<[[T; 3]; 3]> {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let adj = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    let det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
    let scale = m.iter().flatten().fold(T::zero(), |acc, v| acc.max(v.abs()));
    if !(det.abs() > T::epsilon() * T::lit(1e3) * scale.powi(3)) {
        return None;
    }
    let mut out = adj;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v /= det;
        }
    }
    Some(out)
}

fn mat_vec<T: Scalar>(m: &[[T; 3]; 3], v: &[T; 3]) -> [T; 3] {
    let mut out = [T::zero(); 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i] += m[i][j] * v[j];
        }
    }
    out
}

fn mat_mul<T: Scalar>(a: &[[T; 3]; 3], b: &[[T; 3]; 3]) -> [[T; 3]; 3] {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn quad_form<T: Scalar>(m: &[[T; 3]; 3], g: &[T; 3]) -> T {
    let mg = mat_vec(m, g);
    g[0] * mg[0] + g[1] * mg[1] + g[2] * mg[2]
}
