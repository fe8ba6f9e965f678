//! Reduces a point-charge cluster to its monopole and dipole, then measures
//! how fast the two-term potential converges to the exact one.
//!
//! ```bash
//! cargo run --example charge_cluster
//! ```

use dipole2d::multipole::{log_log_slope, reduce, truncation_error, ChargeCluster};

fn main() -> dipole2d::Result<()> {
    let cluster = ChargeCluster::from_json(
        r#"{"charges": [
            {"q": 2.0, "x": 0.5, "y": 0.0},
            {"q": -1.0, "x": -0.5, "y": 0.2},
            {"q": 0.5, "x": 0.1, "y": -0.3}
        ]}"#,
    )?;
    let red = reduce(&cluster);
    println!("Q = {}", red.total_charge);
    println!("D = {}", red.dipole);
    println!("axis = ({}, {})", red.axis[0], red.axis[1]);

    let radii: Vec<f64> = (0..8).map(|k| 10.0 * 2f64.powi(k)).collect();
    let errors = truncation_error(&cluster, &radii, 0.7)?;
    println!();
    println!("r,relative_error");
    for (r, e) in radii.iter().zip(&errors) {
        println!("{r},{e:e}");
    }
    println!("slope = {:.4}", log_log_slope(&radii, &errors));
    Ok(())
}
