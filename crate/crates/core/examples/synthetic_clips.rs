//! A synthetic clip spec as JSON (the format `jmap synth --spec` reads),
//! its digest, and proof that the same seed gives the same clip.

use jmap::ingest::{synthesize, Segment, SyntheticSpec, Waveform};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SyntheticSpec::new(32, 5, 3)
        .with_noise(0.01)
        .with_seed(42)
        .with_segment(Segment {
            start_frame: 8,
            end_frame: 20,
            joint_set: vec![1, 2],
            amplitude: 0.5,
            waveform: Waveform::Step,
        });
    println!("{}", serde_json::to_string_pretty(&spec)?);
    println!("digest {}", spec.digest());

    let a = synthesize(&spec)?;
    let b = synthesize(&spec)?;
    let c = synthesize(&spec.clone().with_seed(43))?;
    println!("source {}", a.source());
    println!("same seed identical: {}", a.data() == b.data());
    println!("other seed identical: {}", a.data() == c.data());
    Ok(())
}
