//! Cross-checks the closed-form spectrum against Numerov shooting and
//! quadrature on the reference grid.
//!
//! ```bash
//! cargo run --release --example verify_oracles
//! ```

use dipole2d::cli::{render_verify, verify_rows};

fn main() -> dipole2d::Result<()> {
    let rows = verify_rows(false, 0.0)?;
    print!("{}", render_verify(&rows));
    if rows.iter().any(|r| !r.pass) {
        std::process::exit(1);
    }
    Ok(())
}
