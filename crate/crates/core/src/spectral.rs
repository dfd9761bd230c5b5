//! Characteristic polynomials and certified Perron-Frobenius eigenvalues.

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::poly::IntPolynomial;
use crate::roots::{largest_real_root, RootApproximation};

/// Default certification tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// `det(tI - m)` with exact integer coefficients.
///
/// Non-integral matrices are first scaled by their common denominator `d`;
/// the result is then the characteristic polynomial of `d·m` (see
/// [`char_poly_scaled`] for the scale).
pub fn char_poly(m: &ExactMatrix) -> IntPolynomial {
    char_poly_scaled(m).0
}

/// Characteristic polynomial of `d·m` together with the scale `d`.
pub fn char_poly_scaled(m: &ExactMatrix) -> (IntPolynomial, BigInt) {
    let n = m.dim();
    let scale = m.denominator().clone();
    let small: Option<Vec<i128>> = m
        .numerators()
        .iter()
        .map(|x| x.to_i64().map(i128::from))
        .collect();
    if let Some(a) = small {
        if let Some(c) = berkowitz(n, &a) {
            return (
                IntPolynomial::new(c.into_iter().rev().map(BigInt::from).collect()),
                scale,
            );
        }
    }
    let c = berkowitz(n, m.numerators()).expect("BigInt arithmetic does not overflow");
    (IntPolynomial::new(c.into_iter().rev().collect()), scale)
}

/// Berkowitz's division-free algorithm. Returns coefficients of `det(tI - A)`,
/// leading coefficient first, or `None` on overflow.
fn berkowitz<T>(n: usize, a: &[T]) -> Option<Vec<T>>
where
    T: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul,
{
    let at = |i: usize, j: usize| &a[i * n + j];
    let mut v: Vec<T> = vec![T::one()];
    for r in 0..n {
        // Leading r×r block A_r, column C = a[0..r][r], row R = a[r][0..r].
        let mut q: Vec<T> = Vec::with_capacity(r + 2);
        q.push(T::one());
        q.push(T::zero().checked_sub(at(r, r))?);
        let mut col: Vec<T> = (0..r).map(|i| at(i, r).clone()).collect();
        for _ in 0..r {
            let mut dot = T::zero();
            for (j, c) in col.iter().enumerate() {
                dot = dot.checked_add(&at(r, j).checked_mul(c)?)?;
            }
            q.push(T::zero().checked_sub(&dot)?);
            let mut next = vec![T::zero(); r];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut s = T::zero();
                for (j, c) in col.iter().enumerate() {
                    s = s.checked_add(&at(i, j).checked_mul(c)?)?;
                }
                *slot = s;
            }
            col = next;
        }
        let mut w = vec![T::zero(); r + 2];
        for (i, slot) in w.iter_mut().enumerate() {
            let mut s = T::zero();
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                s = s.checked_add(&q[i - j].checked_mul(vj)?)?;
            }
            *slot = s;
        }
        v = w;
    }
    Some(v)
}

/// Perron-Frobenius eigenvalue with its certificate and a power-iteration cross-check.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub root: RootApproximation,
    /// Characteristic polynomial of the (denominator-scaled) matrix.
    pub char_poly: String,
    #[serde(skip)]
    pub poly: IntPolynomial,
    /// Floating power-iteration estimate; diagnostic only.
    pub power_estimate: f64,
    /// Whether the estimate agrees with the certified value to `10·tol`.
    pub cross_check_agrees: bool,
}

/// Certified spectral radius of a nonnegative matrix.
pub fn spectral_radius(m: &ExactMatrix, tol: f64) -> Result<RootApproximation> {
    spectral_radius_report(m, tol).map(|r| r.root)
}

pub fn spectral_radius_report(m: &ExactMatrix, tol: f64) -> Result<SpectralReport> {
    if let Some((row, col)) = m.first_negative() {
        return Err(Error::NotNonnegative { row, col });
    }
    let (poly, scale) = char_poly_scaled(m);
    let scaled_tol = tol * scale.to_f64().unwrap_or(1.0);
    let root = largest_real_root(&poly, scaled_tol)?.divide_by(&scale);
    let power_estimate = power_iteration(m, tol);
    let cross_check_agrees = (power_estimate - root.value).abs() <= 10.0 * tol + root.radius;
    Ok(SpectralReport {
        root,
        char_poly: poly.to_string(),
        poly,
        power_estimate,
        cross_check_agrees,
    })
}

/// Power iteration from the all-ones vector; returns the last growth estimate.
pub fn power_iteration(m: &ExactMatrix, tol: f64) -> f64 {
    let n = m.dim();
    let a = m.to_f64();
    let digits = (-tol.log10()).ceil().max(1.0) as usize;
    let max_iter = 10 * n * digits;
    let mut x = vec![1.0; n];
    let mut estimate = f64::NAN;
    for _ in 0..max_iter {
        let y: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| a[i * n + j] * x[j]).sum())
            .collect();
        let norm_y = y.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let norm_x = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if norm_y == 0.0 {
            return 0.0;
        }
        let next = norm_y / norm_x;
        x = y.into_iter().map(|v| v / norm_y).collect();
        if (next - estimate).abs() <= tol * next.max(1.0) {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Larger solution of `lambda + 1/lambda = s`.
pub fn solve_reciprocal_sum(s: f64) -> Result<f64> {
    if s.is_nan() || s < 2.0 {
        return Err(Error::NoRealSolution(format!("{s}")));
    }
    Ok((s + (s * s - 4.0).sqrt()) / 2.0)
}
