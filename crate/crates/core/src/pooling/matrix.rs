//! The smooth rectangular pooling matrix and its temperature derivative.

use ndarray::{Array2, ArrayView1};

use crate::error::{Error, Result};
use crate::pooling::windows::{check_curve, linear_curve, WindowGrid};

/// `r^(2 * gamma)`, using integer powers when the exponent allows it.
#[derive(Debug, Clone, Copy)]
enum EvenPower {
    Int(u32),
    Real(f64),
}

impl EvenPower {
    fn new(gamma: f64) -> Self {
        let exponent = 2.0 * gamma;
        if exponent.fract() == 0.0 && exponent <= 1024.0 {
            EvenPower::Int(exponent as u32)
        } else {
            EvenPower::Real(exponent)
        }
    }

    #[inline(always)]
    fn of(self, r: f64) -> f64 {
        match self {
            EvenPower::Int(n) => square_multiply(r, n),
            EvenPower::Real(e) => r.powf(e),
        }
    }
}

#[inline(always)]
fn square_multiply(mut base: f64, mut n: u32) -> f64 {
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

/// Smooth rectangular window `1 / (r^(2 gamma) + 1)` where `r` is the
/// distance from the window center in half-widths: 1 at the center, 1/2 on
/// the edge, and an indicator of `r < 1` as `gamma` grows.
pub fn window_weight(r: f64, gamma: f64) -> f64 {
    1.0 / (EvenPower::new(gamma).of(r.abs()) + 1.0)
}

/// `d window_weight / d gamma`, zero at `r = 0` and `r = 1`.
pub fn window_weight_gamma_derivative(r: f64, gamma: f64) -> f64 {
    derivative(EvenPower::new(gamma), r.abs())
}

#[inline(always)]
fn derivative(power: EvenPower, r: f64) -> f64 {
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    let u = power.of(r);
    if !u.is_finite() {
        return 0.0;
    }
    let p = 1.0 / (u + 1.0);
    -2.0 * r.ln() * (u * p) * p
}

#[inline(always)]
fn fill(grid: &WindowGrid, ci: ArrayView1<'_, f64>, f: impl Fn(f64) -> f64) -> Array2<f64> {
    let frames = ci.len();
    let ci = ci.to_vec();
    let mut out = Array2::zeros((grid.tau, frames));
    let inv_half = 2.0 / grid.width;
    for (i, mut row) in out.outer_iter_mut().enumerate() {
        let m = grid.center(i);
        let row = row.as_slice_mut().expect("fresh rows are contiguous");
        for (p, &c) in row.iter_mut().zip(&ci) {
            *p = f((c - m).abs() * inv_half);
        }
    }
    out
}

/// Pooling matrix on an explicit grid; `ci` need not be the curve the grid came from.
pub fn pooling_matrix_on_grid(ci: ArrayView1<'_, f64>, grid: &WindowGrid, gamma: f64) -> Array2<f64> {
    let power = EvenPower::new(gamma);
    fill(grid, ci, |r| 1.0 / (power.of(r) + 1.0))
}

/// `tau x T` matrix with entry `(i, j)` the window weight of frame `j`'s
/// curve value relative to window `i`.
pub fn pooling_matrix(ci: ArrayView1<'_, f64>, tau: usize, gamma: f64) -> Result<Array2<f64>> {
    check_gamma(gamma)?;
    let grid = WindowGrid::for_curve(ci, tau)?;
    Ok(pooling_matrix_on_grid(ci, &grid, gamma))
}

/// Conventional equal-window pooling: the same construction on a straight curve.
pub fn uniform_matrix(frames: usize, tau: usize, gamma: f64) -> Result<Array2<f64>> {
    if frames < 2 {
        return Err(Error::TooShort(frames));
    }
    pooling_matrix(linear_curve(frames).view(), tau, gamma)
}

/// Entrywise derivative of [`pooling_matrix`] with respect to `gamma`.
pub fn gamma_gradient(ci: ArrayView1<'_, f64>, tau: usize, gamma: f64) -> Result<Array2<f64>> {
    check_gamma(gamma)?;
    check_curve(ci, tau)?;
    let grid = WindowGrid::for_curve(ci, tau)?;
    let power = EvenPower::new(gamma);
    Ok(fill(&grid, ci, |r| derivative(power, r)))
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "gamma",
            reason: "must be a finite value > 0".into(),
        })
    }
}

/// Scales each row to sum to one.
///
/// Rows whose weights all underflow are renormalized in log space, which
/// keeps the relative weights of the least distant frames.
pub fn row_normalized(matrix: &Array2<f64>, ci: ArrayView1<'_, f64>, grid: &WindowGrid, gamma: f64) -> Array2<f64> {
    let mut out = matrix.clone();
    for (i, mut row) in out.outer_iter_mut().enumerate() {
        let sum = row.sum();
        if sum > 0.0 && sum.is_finite() {
            row.mapv_inplace(|p| p / sum);
            continue;
        }
        let half = 0.5 * grid.width;
        let m = grid.center(i);
        let logs: Vec<f64> = ci.iter().map(|&c| -2.0 * gamma * ((c - m).abs() / half).ln()).collect();
        let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let total: f64 = logs.iter().map(|l| (l - peak).exp()).sum();
        for (p, l) in row.iter_mut().zip(&logs) {
            *p = (l - peak).exp() / total;
        }
    }
    out
}
