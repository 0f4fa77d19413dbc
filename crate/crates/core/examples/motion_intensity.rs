//! Per-frame motion intensity and the cumulative intensity curve of a clip
//! whose joints move only inside frames 24..48.

use jmap::ingest::{synthesize, SyntheticSpec};
use jmap::motion::{build_motion_profile, motion_intensity};
use jmap::PoolingParams;

fn main() -> jmap::Result<()> {
    let seq = synthesize(&SyntheticSpec::moving_span(64, 25, 3, 24, 48).with_noise(0.002))?;
    let mi = motion_intensity(&seq);
    let profile = build_motion_profile(&seq, &PoolingParams::default(), &vec![true; seq.joints()])?;
    let (fm, ci) = (profile.frame_mi.unwrap(), profile.frame_ci.unwrap());

    println!("frame  mi(joint 1)  frame mi   ci");
    for t in (0..seq.frames()).step_by(4) {
        println!("{:>5}  {:>11.5}  {:>8.5}  {:.4}", t + 1, mi[[0, t]], fm[t], ci[t]);
    }
    println!("ci[T] = {:.8}", ci[seq.frames() - 1]);
    Ok(())
}
