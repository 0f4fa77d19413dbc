//! Shared domain types: the skeleton sequence grid and pooling parameters.

use std::fmt;
use std::str::FromStr;

use ndarray::{Array3, ArrayView2, ArrayView3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A skeleton clip stored as a `C x T x V` grid (channel, frame, joint).
///
/// Construction validates the grid, so every value of this type has finite
/// entries and at least two frames.
#[derive(Debug, Clone, PartialEq)]
pub struct SkeletonSequence {
    data: Array3<f64>,
    source: String,
    joint_labels: Option<Vec<String>>,
}

impl SkeletonSequence {
    pub fn new(data: Array3<f64>, source: impl Into<String>) -> Result<Self> {
        let seq = Self {
            data,
            source: source.into(),
            joint_labels: None,
        };
        seq.validate()?;
        Ok(seq)
    }

    /// Builds a sequence from a flat buffer laid out channel-major, then frame, then joint.
    pub fn from_flat(
        channels: usize,
        frames: usize,
        joints: usize,
        values: Vec<f64>,
        source: impl Into<String>,
    ) -> Result<Self> {
        let expected = channels * frames * joints;
        if values.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "buffer holds {} values, shape {}x{}x{} needs {}",
                values.len(),
                channels,
                frames,
                joints,
                expected
            )));
        }
        let data = Array3::from_shape_vec((channels, frames, joints), values)
            .map_err(|e| Error::DimensionMismatch(e.to_string()))?;
        Self::new(data, source)
    }

    pub fn with_joint_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.joints() {
            return Err(Error::DimensionMismatch(format!(
                "{} joint labels for {} joints",
                labels.len(),
                self.joints()
            )));
        }
        self.joint_labels = Some(labels);
        Ok(self)
    }

    /// Re-checks every structural invariant. Idempotent.
    pub fn validate(&self) -> Result<()> {
        let (c, t, v) = self.data.dim();
        if c == 0 || v == 0 {
            return Err(Error::DimensionMismatch(format!("shape {c}x{t}x{v} has an empty axis")));
        }
        if t < 2 {
            return Err(Error::TooShort(t));
        }
        if let Some(labels) = &self.joint_labels {
            if labels.len() != v {
                return Err(Error::DimensionMismatch(format!(
                    "{} joint labels for {v} joints",
                    labels.len()
                )));
            }
        }
        for ((ci, ti, vi), x) in self.data.indexed_iter() {
            if !x.is_finite() {
                return Err(Error::NonFiniteValue(ci + 1, ti + 1, vi + 1));
            }
        }
        Ok(())
    }

    pub fn channels(&self) -> usize {
        self.data.dim().0
    }

    pub fn frames(&self) -> usize {
        self.data.dim().1
    }

    pub fn joints(&self) -> usize {
        self.data.dim().2
    }

    pub fn data(&self) -> ArrayView3<'_, f64> {
        self.data.view()
    }

    pub fn into_data(self) -> Array3<f64> {
        self.data
    }

    /// Coordinates of one joint over time, shape `C x T`.
    pub fn joint_track(&self, joint: usize) -> ArrayView2<'_, f64> {
        self.data.index_axis(ndarray::Axis(2), joint)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn joint_labels(&self) -> Option<&[String]> {
        self.joint_labels.as_deref()
    }

    /// Returns a copy with every coordinate multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let mut out = self.clone();
        out.data.mapv_inplace(|x| x * s);
        out.validate()?;
        Ok(out)
    }
}

/// Accepts an arbitrary candidate and returns it unchanged if it is valid.
pub fn validate_sequence(seq: SkeletonSequence) -> Result<SkeletonSequence> {
    seq.validate()?;
    Ok(seq)
}

/// Normalizer applied to motion intensity before accumulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormFn {
    #[default]
    Tanh,
    Identity,
    Softmax,
    Sqrt,
}

impl NormFn {
    pub const ALL: [NormFn; 4] = [NormFn::Tanh, NormFn::Identity, NormFn::Sqrt, NormFn::Softmax];

    pub fn as_str(self) -> &'static str {
        match self {
            NormFn::Tanh => "tanh",
            NormFn::Identity => "identity",
            NormFn::Softmax => "softmax",
            NormFn::Sqrt => "sqrt",
        }
    }
}

impl fmt::Display for NormFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for NormFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tanh" => Ok(NormFn::Tanh),
            "identity" => Ok(NormFn::Identity),
            "softmax" => Ok(NormFn::Softmax),
            "sqrt" => Ok(NormFn::Sqrt),
            other => Err(Error::InvalidParameter {
                name: "norm",
                reason: format!("unknown normalizer `{other}`"),
            }),
        }
    }
}

/// Whether one window set is shared by all joints or built per joint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoolingMode {
    #[default]
    FrameWise,
    JointWise,
}

impl FromStr for PoolingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "frame" | "frame_wise" => Ok(PoolingMode::FrameWise),
            "joint" | "joint_wise" => Ok(PoolingMode::JointWise),
            other => Err(Error::InvalidParameter {
                name: "mode",
                reason: format!("unknown mode `{other}`"),
            }),
        }
    }
}

/// All knobs of the pooling pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoolingParams {
    /// Temporal scaling factor; output length is `ceil(T / theta)`.
    pub theta: f64,
    /// Temperature of the smooth rectangular window.
    pub gamma: f64,
    /// Active-joint threshold control.
    pub alpha: f64,
    /// Guard added to the normalizer's denominator.
    pub epsilon2: f64,
    pub norm_fn: NormFn,
    pub mode: PoolingMode,
    pub row_normalize: bool,
}

impl Default for PoolingParams {
    fn default() -> Self {
        Self {
            theta: 2.0,
            gamma: 5.0,
            alpha: 0.1,
            epsilon2: 1e-6,
            norm_fn: NormFn::Tanh,
            mode: PoolingMode::FrameWise,
            row_normalize: true,
        }
    }
}

impl PoolingParams {
    pub fn with_mode(mut self, mode: PoolingMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        fn bad(name: &'static str, reason: &str) -> Error {
            Error::InvalidParameter {
                name,
                reason: reason.to_string(),
            }
        }
        if !(self.theta.is_finite() && self.theta >= 1.0) {
            return Err(bad("theta", "must be a finite value >= 1"));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(bad("gamma", "must be a finite value > 0"));
        }
        if !self.alpha.is_finite() {
            return Err(bad("alpha", "must be finite"));
        }
        if !(self.epsilon2.is_finite() && self.epsilon2 > 0.0) {
            return Err(bad("epsilon2", "must be a finite value > 0"));
        }
        Ok(())
    }

    /// Output length for a sequence of `frames` frames.
    pub fn tau(&self, frames: usize) -> Result<usize> {
        self.validate()?;
        // Guard against 12.000000001 style rounding before the ceil.
        let ratio = frames as f64 / self.theta;
        let rounded = ratio.round();
        let tau = if (ratio - rounded).abs() < 1e-9 {
            rounded as usize
        } else {
            ratio.ceil() as usize
        };
        let tau = tau.clamp(1, frames.max(1));
        Ok(tau)
    }
}
