//! Deterministic synthetic sequences for oracle tests and demos.
//!
//! Generator: ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64(seed)`. Draw order is fixed:
//!
//! 1. the rest pose, one uniform draw per (channel, joint) in channel-major
//!    order, mapped to `[-1, 1)` as `2u - 1` with `u` the 53-bit `f64` sample;
//! 2. if `noise_sigma > 0`, one standard-normal draw (`rand_distr`'s ziggurat
//!    `StandardNormal`) per (channel, frame, joint), scaled by `noise_sigma`.
//!
//! A segment `[start, end]` displaces channel 1 of its joints by
//! `amplitude * w(p)` where `p` runs linearly from 0 at `start` to 1 at `end`
//! and stays at 1 afterwards: `linear` is `w = p`, `sinusoid` is
//! `w = sin(2 pi p)` (back to rest after the segment), and `step` is `w = 1`
//! from `start` on. Displacements of overlapping segments add.

use ndarray::Array3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::sequence::SkeletonSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Waveform {
    Linear,
    Sinusoid,
    Step,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    /// 1-based, inclusive.
    pub start_frame: usize,
    /// 1-based, inclusive.
    pub end_frame: usize,
    /// 1-based joint numbers.
    pub joint_set: Vec<usize>,
    pub amplitude: f64,
    pub waveform: Waveform,
}

impl Segment {
    fn displacement(&self, frame: usize) -> f64 {
        if frame < self.start_frame {
            return 0.0;
        }
        let p = if self.end_frame > self.start_frame {
            ((frame.min(self.end_frame) - self.start_frame) as f64) / (self.end_frame - self.start_frame) as f64
        } else {
            1.0
        };
        let w = match self.waveform {
            Waveform::Linear => p,
            Waveform::Sinusoid => (2.0 * std::f64::consts::PI * p).sin(),
            Waveform::Step => 1.0,
        };
        self.amplitude * w
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub frame_count: usize,
    pub joint_count: usize,
    pub channel_count: usize,
    #[serde(default)]
    pub segments: Vec<Segment>,
    #[serde(default)]
    pub noise_sigma: f64,
    #[serde(default)]
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn new(frame_count: usize, joint_count: usize, channel_count: usize) -> Self {
        Self {
            frame_count,
            joint_count,
            channel_count,
            segments: Vec::new(),
            noise_sigma: 0.0,
            seed: 0,
        }
    }

    pub fn with_segment(mut self, segment: Segment) -> Self {
        self.segments.push(segment);
        self
    }

    pub fn with_noise(mut self, sigma: f64) -> Self {
        self.noise_sigma = sigma;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// All joints of a `channels x frames x joints` clip follow one segment.
    pub fn moving_span(frames: usize, joints: usize, channels: usize, start: usize, end: usize) -> Self {
        Self::new(frames, joints, channels).with_segment(Segment {
            start_frame: start,
            end_frame: end,
            joint_set: (1..=joints).collect(),
            amplitude: 1.0,
            waveform: Waveform::Linear,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.channel_count == 0 || self.joint_count == 0 {
            return Err(Error::DimensionMismatch("synthetic spec has an empty axis".into()));
        }
        if self.frame_count < 2 {
            return Err(Error::TooShort(self.frame_count));
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "noise_sigma",
                reason: "must be finite and >= 0".into(),
            });
        }
        for (i, s) in self.segments.iter().enumerate() {
            let bad = |reason: String| Err(Error::InvalidSegment(i + 1, reason));
            if !(1 <= s.start_frame && s.start_frame <= s.end_frame && s.end_frame <= self.frame_count) {
                return bad(format!(
                    "frames {}..{} outside 1..{}",
                    s.start_frame, s.end_frame, self.frame_count
                ));
            }
            if let Some(j) = s.joint_set.iter().find(|&&j| j == 0 || j > self.joint_count) {
                return bad(format!("joint {j} outside 1..{}", self.joint_count));
            }
            if !s.amplitude.is_finite() {
                return bad("amplitude must be finite".into());
            }
        }
        Ok(())
    }

    /// Short content hash used as the sequence's provenance tag.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("spec serializes");
        let hash = Sha256::digest(&canonical);
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

pub fn synthesize(spec: &SyntheticSpec) -> Result<SkeletonSequence> {
    spec.validate()?;
    let (c, t, v) = (spec.channel_count, spec.frame_count, spec.joint_count);
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);

    let mut rest = vec![0.0; c * v];
    for x in rest.iter_mut() {
        *x = 2.0 * rng.random::<f64>() - 1.0;
    }
    let mut data = Array3::zeros((c, t, v));
    for ch in 0..c {
        for frame in 0..t {
            for joint in 0..v {
                data[[ch, frame, joint]] = rest[ch * v + joint];
            }
        }
    }
    for seg in &spec.segments {
        for frame in 0..t {
            let d = seg.displacement(frame + 1);
            for &joint in &seg.joint_set {
                data[[0, frame, joint - 1]] += d;
            }
        }
    }
    if spec.noise_sigma > 0.0 {
        for x in data.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *x += spec.noise_sigma * z;
        }
    }
    SkeletonSequence::new(data, format!("synthetic:{}", spec.digest()))
}
