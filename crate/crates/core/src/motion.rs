//! Motion intensity, its normalization, and cumulative intensity curves.
//!
//! All grids here are laid out `V x T` (joint, frame). The first frame has no
//! predecessor, so its intensity is defined as zero.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{NormFn, PoolingMode, PoolingParams, SkeletonSequence};

/// Channel-averaged absolute displacement between consecutive frames.
pub fn motion_intensity(seq: &SkeletonSequence) -> Array2<f64> {
    let x = seq.data();
    let (c, t, v) = x.dim();
    let mut out = Array2::zeros((v, t));
    let inv_c = 1.0 / c as f64;
    for ch in 0..c {
        let plane = x.index_axis(Axis(0), ch);
        for frame in 1..t {
            let prev = plane.row(frame - 1);
            let cur = plane.row(frame);
            for joint in 0..v {
                out[[joint, frame]] += (cur[joint] - prev[joint]).abs();
            }
        }
    }
    out.mapv_inplace(|m| m * inv_c);
    out
}

/// Masked joint average of a `V x T` intensity grid.
pub fn frame_motion(mi: ArrayView2<'_, f64>, mask: &[bool]) -> Result<Array1<f64>> {
    if mask.len() != mi.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "mask has {} entries for {} joints",
            mask.len(),
            mi.nrows()
        )));
    }
    let active = mask.iter().filter(|&&m| m).count();
    if active == 0 {
        return Err(Error::EmptyMask);
    }
    let mut out = Array1::zeros(mi.ncols());
    for (row, _) in mi.outer_iter().zip(mask).filter(|(_, &m)| m) {
        out += &row;
    }
    out /= active as f64;
    Ok(out)
}

/// Normalizes a non-negative intensity signal so it sums to just under one.
///
/// The first entry is forced to zero. `Softmax` is self-normalizing: it runs
/// over frames 2..T only and ignores `epsilon2`, so its total is 1 up to
/// rounding.
pub fn normalize_intensity(signal: ArrayView1<'_, f64>, norm_fn: NormFn, epsilon2: f64) -> Result<Array1<f64>> {
    if let Some(t) = signal.iter().position(|&s| !(s >= 0.0 && s.is_finite())) {
        return Err(Error::NegativeInput(t + 1));
    }
    let n = signal.len();
    let mut out = Array1::zeros(n);
    if n < 2 {
        return Ok(out);
    }
    let tail = signal.slice(ndarray::s![1..]);
    match norm_fn {
        NormFn::Softmax => {
            let peak = tail.fold(f64::NEG_INFINITY, |a, &b| a.max(b));
            let exps = tail.mapv(|s| (s - peak).exp());
            let total = exps.sum();
            out.slice_mut(ndarray::s![1..]).assign(&(exps / total));
        }
        _ => {
            let g = |s: f64| match norm_fn {
                NormFn::Tanh => s.tanh(),
                NormFn::Identity => s,
                NormFn::Sqrt => s.sqrt(),
                NormFn::Softmax => unreachable!(),
            };
            let mapped = tail.mapv(g);
            let denom = mapped.sum() + epsilon2;
            out.slice_mut(ndarray::s![1..]).assign(&(mapped / denom));
        }
    }
    Ok(out)
}

/// Running sum of a normalized intensity signal.
pub fn cumulative_intensity(mi_norm: ArrayView1<'_, f64>) -> Array1<f64> {
    let mut acc = 0.0;
    mi_norm.mapv(|m| {
        acc += m;
        acc
    })
}

/// Largest vertical gap between a cumulative curve and the straight line
/// joining its endpoints, as a fraction of its rise. Zero for a linear
/// curve; larger values mean the windows deviate more from uniform pooling.
pub fn deviation_from_uniform(ci: ArrayView1<'_, f64>) -> f64 {
    let n = ci.len();
    if n < 2 {
        return 0.0;
    }
    let start = ci[0];
    let rise = ci[n - 1] - start;
    if rise <= 0.0 {
        return 0.0;
    }
    ci.iter()
        .enumerate()
        .map(|(t, &y)| {
            let line = start + rise * t as f64 / (n - 1) as f64;
            (y - line).abs() / rise
        })
        .fold(0.0, f64::max)
}

/// Intensity grids and cumulative curves for one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionProfile {
    pub mi: Array2<f64>,
    /// Per-joint normalized intensity; filled in joint-wise mode.
    pub mi_norm: Option<Array2<f64>>,
    /// Per-joint cumulative curves; filled in joint-wise mode.
    pub ci: Option<Array2<f64>>,
    pub frame_mi: Option<Array1<f64>>,
    pub frame_ci: Option<Array1<f64>>,
    pub norm_fn: NormFn,
    pub epsilon2: f64,
    /// Every curve the mode builds is flat.
    pub degenerate: bool,
}

/// Computes MI and the cumulative curves the chosen mode needs.
pub fn build_motion_profile(seq: &SkeletonSequence, params: &PoolingParams, mask: &[bool]) -> Result<MotionProfile> {
    params.validate()?;
    let mi = motion_intensity(seq);
    let mut profile = MotionProfile {
        mi_norm: None,
        ci: None,
        frame_mi: None,
        frame_ci: None,
        norm_fn: params.norm_fn,
        epsilon2: params.epsilon2,
        degenerate: false,
        mi,
    };
    match params.mode {
        PoolingMode::FrameWise => {
            let fm = frame_motion(profile.mi.view(), mask)?;
            let norm = normalize_intensity(fm.view(), params.norm_fn, params.epsilon2)?;
            let ci = cumulative_intensity(norm.view());
            profile.degenerate = is_flat(ci.view());
            profile.frame_mi = Some(fm);
            profile.frame_ci = Some(ci);
        }
        PoolingMode::JointWise => {
            if mask.len() != profile.mi.nrows() {
                return Err(Error::DimensionMismatch(format!(
                    "mask has {} entries for {} joints",
                    mask.len(),
                    profile.mi.nrows()
                )));
            }
            let (v, t) = profile.mi.dim();
            let mut mi_norm = Array2::zeros((v, t));
            let mut ci = Array2::zeros((v, t));
            for joint in 0..v {
                let norm = normalize_intensity(profile.mi.row(joint), params.norm_fn, params.epsilon2)?;
                ci.row_mut(joint).assign(&cumulative_intensity(norm.view()));
                mi_norm.row_mut(joint).assign(&norm);
            }
            profile.degenerate = ci
                .outer_iter()
                .zip(mask)
                .filter(|(_, &m)| m)
                .all(|(row, _)| is_flat(row));
            profile.mi_norm = Some(mi_norm);
            profile.ci = Some(ci);
        }
    }
    Ok(profile)
}

pub(crate) fn is_flat(ci: ArrayView1<'_, f64>) -> bool {
    match (ci.first(), ci.last()) {
        (Some(a), Some(b)) => b - a <= 0.0 || (b - a).is_nan(),
        _ => true,
    }
}

#[derive(Serialize)]
struct ProfileJson<'a> {
    mi: Option<Vec<Vec<f64>>>,
    mi_norm: Option<Vec<Vec<f64>>>,
    ci: Option<Vec<Vec<f64>>>,
    frame_mi: Option<Vec<f64>>,
    frame_ci: Option<Vec<f64>>,
    norm_fn: &'a str,
    epsilon2: f64,
    degenerate: bool,
}

fn rows(a: &Array2<f64>) -> Vec<Vec<f64>> {
    a.outer_iter().map(|r| r.to_vec()).collect()
}

impl MotionProfile {
    /// JSON value with the curve keys; `include_mi` / `include_ci` drop the
    /// raw intensity or the normalized/cumulative curves (set to `null`).
    pub fn to_json_value(&self, include_mi: bool, include_ci: bool) -> serde_json::Value {
        let json = ProfileJson {
            mi: include_mi.then(|| rows(&self.mi)),
            mi_norm: self.mi_norm.as_ref().filter(|_| include_ci).map(rows),
            ci: self.ci.as_ref().filter(|_| include_ci).map(rows),
            frame_mi: self.frame_mi.as_ref().filter(|_| include_mi).map(|a| a.to_vec()),
            frame_ci: self.frame_ci.as_ref().filter(|_| include_ci).map(|a| a.to_vec()),
            norm_fn: self.norm_fn.as_str(),
            epsilon2: self.epsilon2,
            degenerate: self.degenerate,
        };
        serde_json::to_value(json).expect("profile serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::{array, Array3};

    fn seq_1d(values: &[f64]) -> SkeletonSequence {
        let data = Array3::from_shape_vec((1, values.len(), 1), values.to_vec()).unwrap();
        SkeletonSequence::new(data, "test").unwrap()
    }

    #[test]
    fn constant_sequence_has_no_motion() {
        let seq = SkeletonSequence::new(Array3::from_elem((3, 6, 4), 0.3), "c").unwrap();
        assert!(motion_intensity(&seq).iter().all(|&m| m == 0.0));
    }

    #[test]
    fn direct_substitution() {
        let mi = motion_intensity(&seq_1d(&[0.0, 1.0, 3.0]));
        assert_eq!(mi.row(0).to_vec(), vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn channel_average() {
        let data = Array3::from_shape_vec((2, 2, 1), vec![0.0, 2.0, 0.0, -4.0]).unwrap();
        let seq = SkeletonSequence::new(data, "c2").unwrap();
        assert_eq!(motion_intensity(&seq)[[0, 1]], 3.0);
    }

    #[test]
    fn frame_motion_reductions() {
        let mi = array![[0.0, 1.0, 2.0], [0.0, 3.0, 6.0]];
        let all = frame_motion(mi.view(), &[true, true]).unwrap();
        assert_eq!(all.to_vec(), vec![0.0, 2.0, 4.0]);
        let one = frame_motion(mi.view(), &[false, true]).unwrap();
        assert_eq!(one.to_vec(), vec![0.0, 3.0, 6.0]);
        assert_eq!(frame_motion(mi.view(), &[false, false]), Err(Error::EmptyMask));
    }

    #[test]
    fn zero_signal_normalizes_to_zero() {
        let out = normalize_intensity(Array1::zeros(5).view(), NormFn::Tanh, 1e-6).unwrap();
        assert!(out.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn tanh_normalization_matches_frozen_values() {
        // Expected values computed with mpmath at 50 digits, epsilon2 -> 0.
        let out = normalize_intensity(array![0.0, 1.0, 2.0].view(), NormFn::Tanh, 1e-15).unwrap();
        assert_eq!(out[0], 0.0);
        assert!((out[1] - 0.441_344_786_086_900_8).abs() < 1e-12);
        assert!((out[2] - 0.558_655_213_913_099_2).abs() < 1e-12);
        let ci = cumulative_intensity(out.view());
        assert!((ci[1] - 0.441_344_786_086_900_8).abs() < 1e-12);
        assert!(ci[2] < 1.0 && (ci[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalized_total_is_below_one() {
        let s = array![0.0, 0.2, 1.5, 0.0, 3.0];
        for norm in [NormFn::Tanh, NormFn::Identity, NormFn::Sqrt] {
            let out = normalize_intensity(s.view(), norm, 1e-6).unwrap();
            let g: f64 = s
                .iter()
                .skip(1)
                .map(|&x| match norm {
                    NormFn::Tanh => x.tanh(),
                    NormFn::Identity => x,
                    _ => x.sqrt(),
                })
                .sum();
            assert!((out.sum() - g / (g + 1e-6)).abs() < 1e-14);
            assert!(out.sum() < 1.0);
        }
    }

    #[test]
    fn softmax_skips_first_frame() {
        let out = normalize_intensity(array![0.0, 0.0, 0.0].view(), NormFn::Softmax, 1e-6).unwrap();
        assert_eq!(out.to_vec(), vec![0.0, 0.5, 0.5]);
    }

    #[test]
    fn negative_input_rejected() {
        let err = normalize_intensity(array![0.0, -1.0].view(), NormFn::Tanh, 1e-6).unwrap_err();
        assert_eq!(err, Error::NegativeInput(2));
    }

    #[test]
    fn linear_for_constant_steps() {
        let ci = cumulative_intensity(array![0.0, 0.25, 0.25, 0.25].view());
        assert_eq!(ci.to_vec(), vec![0.0, 0.25, 0.5, 0.75]);
        assert_eq!(deviation_from_uniform(ci.view()), 0.0);
    }

    #[test]
    fn frame_profile_on_static_sequence_is_degenerate() {
        let seq = SkeletonSequence::new(Array3::zeros((3, 8, 5)), "z").unwrap();
        let p = build_motion_profile(&seq, &PoolingParams::default(), &[true; 5]).unwrap();
        assert!(p.degenerate);
        assert!(p.frame_ci.unwrap().iter().all(|&c| c == 0.0));
        assert!(p.ci.is_none());
    }

    #[test]
    fn single_joint_modes_agree() {
        let seq = seq_1d(&[0.0, 0.5, 0.1, 0.9, 0.9, 1.3]);
        let fw = build_motion_profile(&seq, &PoolingParams::default(), &[true]).unwrap();
        let jw = build_motion_profile(
            &seq,
            &PoolingParams::default().with_mode(PoolingMode::JointWise),
            &[true],
        )
        .unwrap();
        assert_eq!(fw.frame_ci.unwrap(), jw.ci.unwrap().row(0));
    }

    #[test]
    fn json_keys() {
        let seq = seq_1d(&[0.0, 1.0, 3.0]);
        let p = build_motion_profile(&seq, &PoolingParams::default(), &[true]).unwrap();
        let v = p.to_json_value(true, true);
        for key in ["mi", "mi_norm", "ci", "frame_mi", "frame_ci", "norm_fn", "epsilon2"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["norm_fn"], "tanh");
        let v = p.to_json_value(false, true);
        assert!(v["mi"].is_null());
    }
}
