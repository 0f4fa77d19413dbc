//! Reader for the NTU RGB+D `.skeleton` text layout.
//!
//! ```text
//! <frame count>
//! per frame:  <body count>
//!   per body: <bodyID clippedEdges handLeftConfidence handLeftState
//!              handRightConfidence handRightState isRestricted leanX leanY trackingState>
//!             <joint count = 25>
//!             25 x <x y z depthX depthY colorX colorY orientW orientX orientY orientZ trackingState>
//! ```
//!
//! Bodies are tracked across frames by `bodyID`. The body with the largest
//! kinetic energy (summed over joints) is kept, and only the frames in which
//! it appears make up the sequence; frames without bodies are dropped.

use std::collections::BTreeMap;

use ndarray::Array3;

use crate::error::{Error, Result};
use crate::sequence::SkeletonSequence;

pub const NTU_JOINTS: usize = 25;
const BODY_FIELDS: usize = 10;
const JOINT_FIELDS: usize = 12;

type Pose = [[f64; 3]; NTU_JOINTS];

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-blank line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        self.inner
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (i + 1, l.trim()))
    }
}

fn parse_count(line: usize, text: &str, what: &str) -> Result<usize> {
    text.parse::<usize>().map_err(|_| Error::MalformedLine {
        line,
        reason: format!("expected {what}, found `{text}`"),
    })
}

/// A body's poses keyed by the 0-based index of the frame they occur in.
#[derive(Debug, Default)]
struct Track {
    poses: Vec<(usize, Pose)>,
}

impl Track {
    fn kinetic_energy(&self) -> f64 {
        self.poses
            .windows(2)
            .map(|w| {
                let (a, b) = (&w[0].1, &w[1].1);
                a.iter()
                    .zip(b)
                    .map(|(pa, pb)| pa.iter().zip(pb).map(|(x, y)| (y - x) * (y - x)).sum::<f64>() / 3.0)
                    .sum::<f64>()
            })
            .sum()
    }
}

pub fn parse_ntu_skeleton(text: &str) -> Result<SkeletonSequence> {
    parse_ntu_skeleton_with_source(text, "ntu")
}

pub fn parse_ntu_skeleton_with_source(text: &str, source: &str) -> Result<SkeletonSequence> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (line, header) = lines.next().ok_or(Error::MalformedHeader {
        line: 1,
        reason: "empty input".into(),
    })?;
    let frame_count = header.parse::<usize>().map_err(|_| Error::MalformedHeader {
        line,
        reason: format!("expected frame count, found `{header}`"),
    })?;

    let mut tracks: BTreeMap<String, Track> = BTreeMap::new();
    for frame in 0..frame_count {
        let truncated = Error::TruncatedFrame(frame + 1);
        let (line, text) = lines.next().ok_or_else(|| truncated.clone())?;
        let bodies = parse_count(line, text, "body count")?;
        for _ in 0..bodies {
            let (line, info) = lines.next().ok_or_else(|| truncated.clone())?;
            let fields: Vec<&str> = info.split_whitespace().collect();
            if fields.len() != BODY_FIELDS {
                return Err(Error::MalformedLine {
                    line,
                    reason: format!("body info has {} fields, expected {BODY_FIELDS}", fields.len()),
                });
            }
            let body_id = fields[0].to_string();
            let (line, text) = lines.next().ok_or_else(|| truncated.clone())?;
            let joints = parse_count(line, text, "joint count")?;
            if joints != NTU_JOINTS {
                return Err(Error::JointCountMismatch {
                    line,
                    expected: NTU_JOINTS,
                    got: joints,
                });
            }
            let mut pose = [[0.0; 3]; NTU_JOINTS];
            for joint in pose.iter_mut() {
                let (line, text) = lines.next().ok_or_else(|| truncated.clone())?;
                let values: Vec<&str> = text.split_whitespace().collect();
                if values.len() != JOINT_FIELDS {
                    return Err(Error::MalformedLine {
                        line,
                        reason: format!("joint line has {} fields, expected {JOINT_FIELDS}", values.len()),
                    });
                }
                for (slot, raw) in joint.iter_mut().zip(&values[..3]) {
                    *slot = raw.parse::<f64>().map_err(|_| Error::MalformedLine {
                        line,
                        reason: format!("bad coordinate `{raw}`"),
                    })?;
                }
            }
            let track = tracks.entry(body_id).or_default();
            if track.poses.last().is_some_and(|(f, _)| *f == frame) {
                return Err(Error::MalformedLine {
                    line,
                    reason: "body appears twice in one frame".into(),
                });
            }
            track.poses.push((frame, pose));
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::MalformedLine {
            line,
            reason: format!("trailing content after {frame_count} frames"),
        });
    }

    // BTreeMap order makes ties resolve to the smallest body ID.
    let mut best: Option<(&Track, f64)> = None;
    for track in tracks.values() {
        let e = track.kinetic_energy();
        if best.is_none_or(|(_, be)| e > be) {
            best = Some((track, e));
        }
    }
    let track = best.map(|(t, _)| t).ok_or(Error::NoValidFrames)?;

    let frames = track.poses.len();
    let mut data = Array3::zeros((3, frames, NTU_JOINTS));
    for (t, (_, pose)) in track.poses.iter().enumerate() {
        for (v, xyz) in pose.iter().enumerate() {
            for (c, &x) in xyz.iter().enumerate() {
                data[[c, t, v]] = x;
            }
        }
    }
    SkeletonSequence::new(data, source)
}

/// Writes poses in the NTU layout, one body per frame. Used for fixtures.
pub fn write_ntu_skeleton(bodies_per_frame: &[Vec<(&str, Pose)>]) -> String {
    let mut out = format!("{}\n", bodies_per_frame.len());
    for bodies in bodies_per_frame {
        out.push_str(&format!("{}\n", bodies.len()));
        for (id, pose) in bodies {
            out.push_str(&format!("{id} 0 0 0 0 0 0 0.0 0.0 2\n{NTU_JOINTS}\n"));
            for [x, y, z] in pose {
                out.push_str(&format!("{x:e} {y:e} {z:e} 0 0 0 0 0 0 0 0 2\n"));
            }
        }
    }
    out
}
