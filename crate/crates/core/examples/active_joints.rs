//! Kinetic and potential energy per joint and the active set for several alphas.

use jmap::energy::active_joint_selection;
use jmap::ingest::{synthesize, Segment, SyntheticSpec, Waveform};

fn main() -> jmap::Result<()> {
    let spec = SyntheticSpec::new(60, 8, 3)
        .with_noise(0.003)
        .with_seed(7)
        .with_segment(Segment {
            start_frame: 10,
            end_frame: 40,
            joint_set: vec![2, 3],
            amplitude: 0.6,
            waveform: Waveform::Sinusoid,
        })
        .with_segment(Segment {
            start_frame: 30,
            end_frame: 50,
            joint_set: vec![6],
            amplitude: 0.3,
            waveform: Waveform::Linear,
        });
    let seq = synthesize(&spec)?;

    let report = active_joint_selection(&seq, 0.1)?;
    println!("joint  kinetic    potential  total_norm");
    for v in 0..seq.joints() {
        println!(
            "{:>5}  {:>9.5}  {:>9.5}  {:.4}",
            v + 1,
            report.kinetic[v],
            report.potential[v],
            report.total_norm[v]
        );
    }
    println!("mu = {:.4}, sigma = {:.4}", report.mu, report.sigma);

    for alpha in [-1.0, 0.0, 0.1, 1.0, 3.0] {
        let r = active_joint_selection(&seq, alpha)?;
        let set: Vec<usize> = r.active_set().iter().map(|v| v + 1).collect();
        println!("alpha {alpha:>4}: threshold {:.4}, active {set:?}", r.threshold());
    }
    Ok(())
}
