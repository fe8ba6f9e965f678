//! Critical dipole moments: above `D_crit(m)` the angular eigenvalue turns
//! positive and the `|m|` states are no longer bound.
//!
//! ```bash
//! cargo run --example critical_dipoles
//! ```

use dipole2d::spectrum::{critical_dipole, p_from_dipole};

fn main() -> dipole2d::Result<()> {
    println!("m,D_crit,p_crit");
    for m in 0..=7 {
        let d = critical_dipole(m, 1e-12)?;
        println!("{m},{d:.6},{:.6}", p_from_dipole(d) + 0.0);
    }
    Ok(())
}
