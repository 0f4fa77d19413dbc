//! How the temperature shapes one row of the pooling matrix, and its gradient.

use jmap::pooling::{gamma_gradient, linear_curve, pooling_matrix, window_weight};

fn main() -> jmap::Result<()> {
    println!("   r   gamma=1   gamma=5  gamma=50");
    for r in [0.0, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0, 3.0] {
        println!(
            "{r:>4}  {:>8.5}  {:>8.5}  {:>8.5}",
            window_weight(r, 1.0),
            window_weight(r, 5.0),
            window_weight(r, 50.0)
        );
    }

    let ci = linear_curve(16);
    for gamma in [1.0, 5.0, 50.0] {
        let p = pooling_matrix(ci.view(), 4, gamma)?;
        let row: Vec<String> = p.row(1).iter().map(|x| format!("{x:.3}")).collect();
        println!("gamma {gamma:>4}, row 2: {}", row.join(" "));
    }
    let g = gamma_gradient(ci.view(), 4, 5.0)?;
    let row: Vec<String> = g.row(1).iter().map(|x| format!("{x:+.3}")).collect();
    println!("d/dgamma at 5, row 2: {}", row.join(" "));
    Ok(())
}
