//! Bound states of a two-dimensional charge in the dipole-ion potential
//! `V(r, θ) = Q/r + D cos θ / r²` (Rydberg atomic units).
//!
//! The angular equation is a Mathieu equation; its characteristic values fix
//! the radial exponent, and the radial problem is solved in closed form with
//! terminating Kummer functions. Independent numerical oracles (shooting,
//! quadrature, convergence studies) live in [`oracle`].
//!
//! Runnable examples, one per capability:
//!
//! ```bash
//! cargo run --example characteristic_values
//! cargo run --example critical_dipoles
//! cargo run --release --example energy_curves
//! cargo run --release --example wavefunction_norm
//! cargo run --example charge_cluster
//! cargo run --release --example verify_oracles
//! ```

pub mod cli;
pub mod error;
pub mod mathieu;
pub mod multipole;
pub mod oracle;
pub mod special;
pub mod spectrum;
pub mod tridiag;

pub use error::{Error, Result};
