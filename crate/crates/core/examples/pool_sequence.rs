//! The one-call path: pool a clip and look at the compressed joint track.

use jmap::ingest::{synthesize, SyntheticSpec};
use jmap::{pool, PoolingParams};

fn main() -> jmap::Result<()> {
    let seq = synthesize(&SyntheticSpec::moving_span(40, 25, 3, 10, 30))?;
    let pooled = pool(&seq, &PoolingParams::default())?;
    println!("{:?} -> {:?}", seq.data().dim(), pooled.data.dim());
    let before: Vec<String> = seq.joint_track(0).row(0).iter().map(|x| format!("{x:.2}")).collect();
    let after: Vec<String> = pooled
        .data
        .slice(ndarray::s![0, .., 0])
        .iter()
        .map(|x| format!("{x:.2}"))
        .collect();
    println!("x of joint 1 before: {}", before.join(" "));
    println!("x of joint 1 after:  {}", after.join(" "));
    Ok(())
}
