//! Even Mathieu characteristic values `a_0 .. a_8` against `p`, by the
//! tridiagonal matrix route, next to the small-`p` series.
//!
//! ```bash
//! cargo run --example characteristic_values
//! ```

use dipole2d::cli::{charvals_table, Range};
use dipole2d::mathieu;

fn main() -> dipole2d::Result<()> {
    let table = charvals_table(Range::new(0.0, 40.0, 9)?, 4, 1e-12)?;
    print!("{}", table.to_csv());

    println!();
    println!("p,m,series,matrix");
    for p in [0.1, 0.3, 0.5] {
        for m in 0..3 {
            let series = mathieu::char_value_series(m, p);
            let matrix = mathieu::char_value(m, p, 1e-14)?;
            println!("{p},{m},{series},{matrix}");
        }
    }
    Ok(())
}
