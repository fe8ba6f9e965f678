//! A normalized bound state, checked by two-dimensional quadrature and by the
//! residuals of its angular and radial equations.
//!
//! ```bash
//! cargo run --release --example wavefunction_norm
//! ```

use dipole2d::oracle::{norm_quadrature, radial_residual, NormGrid};
use dipole2d::spectrum::{Method, Wavefunction};

fn main() -> dipole2d::Result<()> {
    let wf = Wavefunction::new(3, 2, 12.0, Method::Matrix, 1e-12)?;
    let state = wf.state();
    println!("n = {}, m = {}, D = {}", state.n, state.m, state.dipole);
    println!("E_theta = {}", state.e_theta);
    println!("E       = {}", state.energy);

    let norm = norm_quadrature(|r, t| wf.eval(r, t), &NormGrid::default());
    println!("norm    = {} (+/- {:e})", norm.value, norm.error);

    let samples: Vec<f64> = (0..64)
        .map(|i| i as f64 * std::f64::consts::PI / 64.0)
        .collect();
    println!(
        "angular residual = {:e}",
        wf.angular().relative_ode_residual(&samples)
    );
    let radii: Vec<f64> = (1..40).map(|i| 0.5 * i as f64).collect();
    println!(
        "radial residual  = {:e}",
        radial_residual(state, &radii, 1e-3)
    );

    println!();
    println!("r,psi(theta=0),psi(theta=pi)");
    for i in 0..=10 {
        let r = 3.0 * i as f64;
        println!(
            "{r},{:e},{:e}",
            wf.eval(r, 0.0),
            wf.eval(r, std::f64::consts::PI)
        );
    }
    Ok(())
}
