//! Independent nested-loop oracles and fixtures shared by the integration tests.
//!
//! Nothing here calls into the library's numeric code; sequences are passed in
//! as plain `Vec` grids indexed `[c][t][v]`.
#![allow(dead_code, clippy::needless_range_loop)]

use jmap::SkeletonSequence;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Grid = Vec<Vec<Vec<f64>>>;

pub fn to_grid(seq: &SkeletonSequence) -> Grid {
    let d = seq.data();
    let (c, t, v) = d.dim();
    (0..c)
        .map(|ci| (0..t).map(|ti| (0..v).map(|vi| d[[ci, ti, vi]]).collect()).collect())
        .collect()
}

pub fn from_grid(grid: &Grid) -> SkeletonSequence {
    let (c, t, v) = (grid.len(), grid[0].len(), grid[0][0].len());
    let flat: Vec<f64> = grid.iter().flatten().flatten().copied().collect();
    SkeletonSequence::from_flat(c, t, v, flat, "grid").unwrap()
}

pub fn random_grid(rng: &mut ChaCha8Rng, c: usize, t: usize, v: usize) -> Grid {
    (0..c)
        .map(|_| {
            (0..t)
                .map(|_| (0..v).map(|_| rng.random_range(-2.0..2.0)).collect())
                .collect()
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random dims with C <= 3, T <= 64, V <= 25.
pub fn random_dims(rng: &mut ChaCha8Rng) -> (usize, usize, usize) {
    (
        rng.random_range(1..=3),
        rng.random_range(2..=64),
        rng.random_range(1..=25),
    )
}

/// `mi[v][t]`, with `mi[v][0] = 0`.
pub fn oracle_mi(x: &Grid) -> Vec<Vec<f64>> {
    let (c, t, v) = (x.len(), x[0].len(), x[0][0].len());
    let mut out = vec![vec![0.0; t]; v];
    for joint in 0..v {
        for frame in 1..t {
            let mut s = 0.0;
            for ch in 0..c {
                s += (x[ch][frame][joint] - x[ch][frame - 1][joint]).abs();
            }
            out[joint][frame] = s / c as f64;
        }
    }
    out
}

pub fn oracle_kinetic(x: &Grid) -> Vec<f64> {
    let (c, t, v) = (x.len(), x[0].len(), x[0][0].len());
    (0..v)
        .map(|joint| {
            let mut total = 0.0;
            for frame in 1..t {
                let mut s = 0.0;
                for ch in 0..c {
                    let d = x[ch][frame][joint] - x[ch][frame - 1][joint];
                    s += d * d;
                }
                total += s / c as f64;
            }
            total
        })
        .collect()
}

pub fn oracle_potential(x: &Grid) -> Vec<f64> {
    let (c, t, v) = (x.len(), x[0].len(), x[0][0].len());
    (0..v)
        .map(|joint| {
            let mut total = 0.0;
            for frame in 1..t {
                let mut s = 0.0;
                for ch in 0..c {
                    s += x[ch][frame][joint] - x[ch][0][joint];
                }
                total += s / c as f64;
            }
            total.abs()
        })
        .collect()
}

pub fn oracle_frame_motion(mi: &[Vec<f64>], mask: &[bool]) -> Vec<f64> {
    let t = mi[0].len();
    let n = mask.iter().filter(|&&m| m).count() as f64;
    (0..t)
        .map(|frame| {
            let mut s = 0.0;
            for (joint, row) in mi.iter().enumerate() {
                if mask[joint] {
                    s += row[frame];
                }
            }
            s / n
        })
        .collect()
}

/// `out[c][i][v] = sum_j p_v[i][j] * x[c][j][v]`.
pub fn oracle_apply(x: &Grid, per_joint: &[Vec<Vec<f64>>]) -> Grid {
    let (c, t, v) = (x.len(), x[0].len(), x[0][0].len());
    let tau = per_joint[0].len();
    let mut out = vec![vec![vec![0.0; v]; tau]; c];
    for ch in 0..c {
        for i in 0..tau {
            for joint in 0..v {
                let mut s = 0.0;
                for j in 0..t {
                    s += per_joint[joint][i][j] * x[ch][j][joint];
                }
                out[ch][i][joint] = s;
            }
        }
    }
    out
}

/// Direct evaluation of the smooth rectangular window.
pub fn oracle_weight(value: f64, center: f64, width: f64, gamma: f64) -> f64 {
    let base = (value - center) / (0.5 * width);
    1.0 / (base.abs().powf(2.0 * gamma) + 1.0)
}

/// Central difference in `gamma` of the window weight. Inside the window
/// (`r < 1`) the weight is close to 1, so the difference is taken on the
/// complement `u / (u + 1)` to avoid cancellation.
pub fn oracle_weight_fd(value: f64, center: f64, width: f64, gamma: f64, h: f64) -> f64 {
    let r = ((value - center) / (0.5 * width)).abs();
    if r < 1.0 {
        let q = |g: f64| {
            let u = r.powf(2.0 * g);
            u / (u + 1.0)
        };
        -(q(gamma + h) - q(gamma - h)) / (2.0 * h)
    } else {
        (oracle_weight(value, center, width, gamma + h) - oracle_weight(value, center, width, gamma - h)) / (2.0 * h)
    }
}

/// The padded segmentation of `[ci[1], ci[T]]`: (lower edge, width).
pub fn oracle_grid(ci: &[f64], tau: usize) -> (f64, f64) {
    let n = ci.len();
    let rise = ci[n - 1] - ci[0];
    let pad = rise / (2.0 * (n as f64 - 1.0));
    (ci[0] - pad, (rise + 2.0 * pad) / tau as f64)
}

/// Boundary-counting oracle: `b_i` = number of frames whose curve value lies at
/// or below the upper edge of window `i`, then the empty-window repair.
pub fn oracle_boundaries(ci: &[f64], tau: usize) -> Vec<usize> {
    let n = ci.len();
    let (lower, width) = oracle_grid(ci, tau);
    let mut b = vec![0usize; tau + 1];
    for i in 1..tau {
        let edge = lower + i as f64 * width;
        b[i] = ci.iter().filter(|&&c| c <= edge).count();
    }
    b[tau] = n;
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
    b
}

/// tanh-normalized cumulative curve by explicit loops.
pub fn oracle_ci(signal: &[f64], eps: f64) -> Vec<f64> {
    let s: f64 = signal.iter().skip(1).map(|x| x.tanh()).sum();
    let mut acc = 0.0;
    signal
        .iter()
        .enumerate()
        .map(|(t, x)| {
            if t > 0 {
                acc += x.tanh() / (s + eps);
            }
            acc
        })
        .collect()
}

pub fn max_abs_diff(a: impl IntoIterator<Item = f64>, b: impl IntoIterator<Item = f64>) -> f64 {
    a.into_iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Random nondecreasing curve starting at 0 with some plateaus.
pub fn random_curve(rng: &mut ChaCha8Rng, t: usize) -> Vec<f64> {
    let mut acc = 0.0;
    (0..t)
        .map(|i| {
            if i > 0 && rng.random_bool(0.7) {
                acc += rng.random_range(0.0..1.0);
            }
            acc
        })
        .collect()
}
