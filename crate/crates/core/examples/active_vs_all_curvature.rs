//! Building the frame curve from the active joints only bends it further
//! away from the straight line than averaging over every joint.

use jmap::energy::active_joint_selection;
use jmap::ingest::{synthesize, Segment, SyntheticSpec, Waveform};
use jmap::motion::{build_motion_profile, deviation_from_uniform};
use jmap::PoolingParams;

fn main() -> jmap::Result<()> {
    let params = PoolingParams::default();
    println!("seed  active   all joints  active joints");
    for seed in 0..6 {
        let spec = SyntheticSpec::new(80, 20, 3)
            .with_noise(0.003)
            .with_seed(seed)
            .with_segment(Segment {
                start_frame: 20 + 5 * seed as usize,
                end_frame: 40 + 5 * seed as usize,
                joint_set: vec![4, 5, 9],
                amplitude: 0.7,
                waveform: Waveform::Sinusoid,
            });
        let seq = synthesize(&spec)?;
        let report = active_joint_selection(&seq, params.alpha)?;
        let all = build_motion_profile(&seq, &params, &vec![true; seq.joints()])?;
        let active = build_motion_profile(&seq, &params, &report.active_mask)?;
        println!(
            "{seed:>4}  {:>2}/{:<3}  {:>10.4}  {:>13.4}",
            report.active_set().len(),
            seq.joints(),
            deviation_from_uniform(all.frame_ci.unwrap().view()),
            deviation_from_uniform(active.frame_ci.unwrap().view())
        );
    }
    Ok(())
}
