//! Adaptive window ranges next to uniform ones for a clip with a motion burst.

use jmap::ingest::{synthesize, SyntheticSpec};
use jmap::pooling::{plan_frame_wise, uniform_boundaries};
use jmap::PoolingParams;

fn main() -> jmap::Result<()> {
    let seq = synthesize(&SyntheticSpec::moving_span(64, 25, 3, 24, 48))?;
    let params = PoolingParams {
        theta: 4.0,
        ..PoolingParams::default()
    };
    let plan = plan_frame_wise(&seq, &params)?;
    let curve = &plan.curves[0];
    let uniform = uniform_boundaries(plan.frames, plan.tau);

    println!(
        "T = {}, tau = {}, width = {:.5}",
        plan.frames, plan.tau, curve.windows.grid.width
    );
    println!("window  adaptive  uniform   center");
    for (i, (a, b)) in curve.windows.ranges().enumerate() {
        println!(
            "{:>6}  {:>3}..{:<3}  {:>3}..{:<3}  {:.4}",
            i + 1,
            a,
            b,
            uniform[i] + 1,
            uniform[i + 1],
            curve.windows.grid.center(i)
        );
    }
    Ok(())
}
