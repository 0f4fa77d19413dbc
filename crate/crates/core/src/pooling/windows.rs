//! Segmentation of a cumulative curve's y-axis into `tau` equal windows.

use ndarray::{Array1, ArrayView1};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::motion::is_flat;

/// Equal-width segmentation of a curve's value range.
///
/// The range `[ci[1], ci[T]]` is padded by half the mean per-frame step on
/// both ends. Without the padding the first and last frames would sit exactly
/// on a window edge, where the smooth window weighs them by one half.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowGrid {
    pub tau: usize,
    /// Lower edge of the first window.
    pub lower: f64,
    /// Width of every window.
    pub width: f64,
}

impl WindowGrid {
    pub fn for_curve(ci: ArrayView1<'_, f64>, tau: usize) -> Result<Self> {
        check_curve(ci, tau)?;
        if is_flat(ci) {
            return Err(Error::DegenerateCurve);
        }
        let n = ci.len();
        let (start, end) = (ci[0], ci[n - 1]);
        let pad = (end - start) / (2.0 * (n - 1) as f64);
        Ok(Self {
            tau,
            lower: start - pad,
            width: (end - start + 2.0 * pad) / tau as f64,
        })
    }

    /// Center of window `i` (0-based).
    pub fn center(&self, i: usize) -> f64 {
        self.lower + (i as f64 + 0.5) * self.width
    }

    /// Upper edge of window `i` (0-based).
    pub fn upper_edge(&self, i: usize) -> f64 {
        self.lower + (i + 1) as f64 * self.width
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.tau).map(|i| self.center(i)).collect()
    }

    /// Distance from window `i`'s center in half-widths.
    pub fn ratio(&self, i: usize, value: f64) -> f64 {
        (value - self.center(i)).abs() / (0.5 * self.width)
    }
}

/// The straight curve produced by constant per-frame motion, scaled to end at 1.
pub fn linear_curve(frames: usize) -> Array1<f64> {
    let last = frames.saturating_sub(1).max(1) as f64;
    Array1::from_iter((0..frames).map(|t| t as f64 / last))
}

pub(crate) fn check_curve(ci: ArrayView1<'_, f64>, tau: usize) -> Result<()> {
    let frames = ci.len();
    if frames < 2 {
        return Err(Error::TooShort(frames));
    }
    if tau == 0 {
        return Err(Error::InvalidParameter {
            name: "tau",
            reason: "must be at least 1".into(),
        });
    }
    if tau > frames {
        return Err(Error::TauTooLarge { tau, frames });
    }
    if let Some(t) = ci.iter().position(|c| !c.is_finite()) {
        return Err(Error::NonMonotoneCurve(t + 1));
    }
    if let Some(t) = (1..frames).find(|&t| ci[t] < ci[t - 1]) {
        return Err(Error::NonMonotoneCurve(t + 1));
    }
    Ok(())
}

/// Window layout along one curve.
///
/// `boundaries` has `tau + 1` entries `0 = b_0 < b_1 < ... < b_tau = T`;
/// window `i` (1-based) covers frames `b_{i-1} + 1 ..= b_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveWindows {
    pub boundaries: Vec<usize>,
    pub grid: WindowGrid,
    /// The curve was flat and uniform windows were substituted.
    pub degenerate: bool,
}

impl CurveWindows {
    pub fn tau(&self) -> usize {
        self.grid.tau
    }

    pub fn centers(&self) -> Vec<f64> {
        self.grid.centers()
    }

    /// 1-based inclusive frame range of each window.
    pub fn ranges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.boundaries.windows(2).map(|b| (b[0] + 1, b[1]))
    }
}

/// Uniform boundaries `round(i * T / tau)`.
pub fn uniform_boundaries(frames: usize, tau: usize) -> Vec<usize> {
    (0..=tau)
        .map(|i| ((i * frames) as f64 / tau as f64).round() as usize)
        .collect()
}

/// Places `tau` windows so each covers an equal share of the curve's rise.
///
/// A frame belongs to the window whose value interval contains its curve
/// value. Windows left empty by plateaus are repaired by advancing boundaries
/// left to right, then capping them right to left so every later window keeps
/// at least one frame.
pub fn window_boundaries(ci: ArrayView1<'_, f64>, tau: usize) -> Result<CurveWindows> {
    check_curve(ci, tau)?;
    let frames = ci.len();
    if is_flat(ci) {
        let grid = WindowGrid::for_curve(linear_curve(frames).view(), tau)?;
        return Ok(CurveWindows {
            boundaries: uniform_boundaries(frames, tau),
            grid,
            degenerate: true,
        });
    }
    let grid = WindowGrid::for_curve(ci, tau)?;
    let values = ci.as_slice().map(<[f64]>::to_vec).unwrap_or_else(|| ci.to_vec());
    let mut b = Vec::with_capacity(tau + 1);
    b.push(0);
    for i in 0..tau - 1 {
        let edge = grid.upper_edge(i);
        b.push(values.partition_point(|&c| c <= edge));
    }
    b.push(frames);
    repair(&mut b);
    Ok(CurveWindows {
        boundaries: b,
        grid,
        degenerate: false,
    })
}

fn repair(b: &mut [usize]) {
    let tau = b.len() - 1;
    for i in 1..tau {
        if b[i] <= b[i - 1] {
            b[i] = b[i - 1] + 1;
        }
    }
    for i in (1..tau).rev() {
        if b[i] >= b[i + 1] {
            b[i] = b[i + 1] - 1;
        }
    }
}
