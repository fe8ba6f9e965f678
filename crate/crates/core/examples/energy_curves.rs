//! Energy levels `E_{n,m}(D)` from `D = 0` up to the critical dipole for
//! `m = 1..=4`. Each curve starts at the Coulomb value `-1/(n - 1/2)^2`.
//!
//! ```bash
//! cargo run --release --example energy_curves
//! ```

use dipole2d::cli::{energies_table, Range, SweepSpec};
use dipole2d::spectrum::{critical_dipole, Method};

fn main() -> dipole2d::Result<()> {
    for m in 1..=4 {
        let spec = SweepSpec {
            m,
            n_list: (m..=m + 4).collect(),
            range: Range::new(0.0, critical_dipole(m, 1e-12)?, 11)?,
            method: Method::Auto,
            tol: 1e-12,
        };
        println!("# m = {m}");
        print!("{}", energies_table(&spec)?.to_csv());
        println!();
    }
    Ok(())
}
