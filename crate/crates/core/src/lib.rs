//! Joint motion adaptive temporal pooling for skeleton action sequences.
//!
//! A `C x T x V` skeleton clip is compressed to `C x tau x V` with
//! `tau = ceil(T / theta)`. Pooling windows are narrow where joints move and
//! wide where they rest:
//!
//! 1. [`motion`] measures per-joint motion intensity and turns it into a
//!    cumulative intensity curve.
//! 2. [`energy`] picks the active joints from kinetic and potential energy.
//! 3. [`pooling`] slices the curve's y-axis into `tau` equal segments, builds
//!    a smooth rectangular pooling matrix and applies it.
//!
//! ```
//! use jmap::{pool, PoolingParams, SkeletonSequence};
//! use ndarray::Array3;
//!
//! let seq = SkeletonSequence::new(Array3::zeros((3, 10, 25)), "zeros").unwrap();
//! let pooled = pool(&seq, &PoolingParams::default()).unwrap();
//! assert_eq!(pooled.data.dim(), (3, 5, 25));
//! ```
//!
//! [`ingest`] reads NTU `.skeleton`, CSV and JSON files and synthesizes
//! deterministic test clips. The `jmap` binary wraps all of it for batch use.

pub mod cli;
pub mod energy;
pub mod error;
pub mod ingest;
pub mod motion;
pub mod pooling;
pub mod sequence;

pub use energy::{active_joint_selection, EnergyReport};
pub use error::{Error, Result};
pub use motion::{build_motion_profile, motion_intensity, MotionProfile};
pub use pooling::{analyze, apply, plan_frame_wise, plan_joint_wise, pool, PooledSequence, PoolingPlan};
pub use sequence::{validate_sequence, NormFn, PoolingMode, PoolingParams, SkeletonSequence};
