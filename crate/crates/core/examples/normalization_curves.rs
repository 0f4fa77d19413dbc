//! Cumulative intensity curves under each normalization function for one clip.

use jmap::ingest::{synthesize, Segment, SyntheticSpec, Waveform};
use jmap::motion::{build_motion_profile, deviation_from_uniform};
use jmap::{NormFn, PoolingParams};

fn main() -> jmap::Result<()> {
    let spec = SyntheticSpec::new(50, 10, 3)
        .with_noise(0.004)
        .with_seed(11)
        .with_segment(Segment {
            start_frame: 15,
            end_frame: 30,
            joint_set: (1..=10).collect(),
            amplitude: 0.8,
            waveform: Waveform::Sinusoid,
        });
    let seq = synthesize(&spec)?;

    let mut curves = Vec::new();
    for norm in NormFn::ALL {
        let params = PoolingParams {
            norm_fn: norm,
            ..PoolingParams::default()
        };
        let p = build_motion_profile(&seq, &params, &vec![true; seq.joints()])?;
        curves.push((norm, p.frame_ci.unwrap()));
    }

    print!("frame");
    for (norm, _) in &curves {
        print!("  {norm:>8}");
    }
    println!();
    for t in (0..seq.frames()).step_by(5) {
        print!("{:>5}", t + 1);
        for (_, ci) in &curves {
            print!("  {:>8.4}", ci[t]);
        }
        println!();
    }
    for (norm, ci) in &curves {
        println!(
            "{norm:>8}: deviation from uniform {:.4}",
            deviation_from_uniform(ci.view())
        );
    }
    Ok(())
}
