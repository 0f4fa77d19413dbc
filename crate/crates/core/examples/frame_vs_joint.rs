//! Frame-wise pooling shares one window set; joint-wise pooling gives each
//! active joint its own and pools inactive joints uniformly.

use jmap::ingest::{synthesize, Segment, SyntheticSpec, Waveform};
use jmap::{analyze, apply, PoolingMode, PoolingParams};

fn main() -> jmap::Result<()> {
    let mut spec = SyntheticSpec::new(48, 6, 3).with_noise(0.001).with_seed(3);
    for (joints, start, end) in [(vec![1], 4, 16), (vec![2], 30, 44)] {
        spec = spec.with_segment(Segment {
            start_frame: start,
            end_frame: end,
            joint_set: joints,
            amplitude: 0.5,
            waveform: Waveform::Linear,
        });
    }
    let seq = synthesize(&spec)?;

    for mode in [PoolingMode::FrameWise, PoolingMode::JointWise] {
        let params = PoolingParams::default().with_mode(mode);
        let a = analyze(&seq, &params)?;
        let pooled = apply(&a.plan, &seq)?;
        println!(
            "{mode:?}: {} window set(s), output {:?}",
            a.plan.curves.len(),
            pooled.data.dim()
        );
        for v in 0..seq.joints() {
            let c = a.plan.curve_for_joint(v);
            let first: Vec<String> = c.windows.ranges().take(6).map(|(s, e)| format!("{s}-{e}")).collect();
            let tag = if c.uniform { "uniform" } else { "adaptive" };
            println!("  joint {}: {tag:<8} {}", v + 1, first.join(" "));
        }
    }
    Ok(())
}
