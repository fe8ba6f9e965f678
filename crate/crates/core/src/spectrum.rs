//! Bound states of the separated problem
//!
//! ```text
//! Θ'' + (√2 D cos θ - E_θ) Θ = 0
//! R'' + [E + 2/r + (E_θ + 1/4)/r²] R = 0,      ψ = r^(-1/2) R(r) Θ(θ)
//! ```
//!
//! With `θ = 2z`, `a = -4 E_θ` and `p = -2√2 D` the angular equation is the
//! Mathieu equation, so `E_θ^(2m) = -a_2m(p)/4`. The regular radial solution
//! is `R = r^λ e^(-βr) ₁F₁(λ - 1/β; 2λ; 2βr)` with `λ = 1/2 + √(-E_θ)` and
//! `β² = -E`; normalizability forces `λ - 1/β = -n_r`, which gives
//!
//! ```text
//! E_{n,m} = -(n - m + √(-E_θ^(2m)) + 1/2)^(-2).
//! ```
//!
//! Bound states therefore exist only while `E_θ^(2m) <= 0`, i.e. for
//! `D <= D_crit^(m)`. For `m = 0` any nonzero dipole makes `a_0 < 0`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mathieu::{self, MathieuSolution, SERIES_TRUST_P};
use crate::special::{hyp1f1_terminating, ln_gamma};

/// Default absolute tolerance on characteristic values.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Positive `E_θ` up to this size is treated as the threshold itself.
pub const MARGINAL_BAND: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Matrix,
    Auto,
}

impl Method {
    /// The concrete method used at Mathieu parameter `p`.
    pub fn resolve(self, p: f64) -> Method {
        match self {
            Method::Auto if p.abs() <= SERIES_TRUST_P => Method::Series,
            Method::Auto => Method::Matrix,
            other => other,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Series => "series",
            Method::Matrix => "matrix",
            Method::Auto => "auto",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(Method::Series),
            "matrix" => Ok(Method::Matrix),
            "auto" => Ok(Method::Auto),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// Mathieu parameter for dipole moment `d`: `p = -2√2 d`.
pub fn p_from_dipole(d: f64) -> f64 {
    -2.0 * SQRT_2 * d
}

/// Inverse of [`p_from_dipole`] on magnitudes.
pub fn dipole_from_p(p: f64) -> f64 {
    p.abs() / (2.0 * SQRT_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularMode {
    pub m: u32,
    pub dipole: f64,
    pub p: f64,
    pub e_theta: f64,
    /// Either `Series` or `Matrix`; `Auto` is resolved before solving.
    pub method: Method,
}

fn check_dipole(d: f64) -> Result<()> {
    if d.is_finite() && d >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "dipole moment must be finite and >= 0, got {d}"
        )))
    }
}

/// `E_θ^(2m)(D)` by the chosen method.
pub fn angular_eigenvalue(m: u32, d: f64, method: Method) -> Result<AngularMode> {
    angular_eigenvalue_tol(m, d, method, DEFAULT_TOL)
}

pub fn angular_eigenvalue_tol(m: u32, d: f64, method: Method, tol: f64) -> Result<AngularMode> {
    check_dipole(d)?;
    let p = p_from_dipole(d);
    let method = method.resolve(p);
    let a = match method {
        Method::Series => mathieu::char_value_series(m, p),
        _ => mathieu::char_value(m, p, tol)?,
    };
    Ok(AngularMode {
        m,
        dipole: d,
        p,
        e_theta: -a / 4.0,
        method,
    })
}

/// Critical dipole moment: the smallest `D >= 0` with `a_2m(p(D)) = 0`,
/// located to within `tol` in `D`.
pub fn critical_dipole(m: u32, tol: f64) -> Result<f64> {
    if m == 0 {
        return Ok(0.0);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let char_tol = DEFAULT_TOL;
    let a_at = |q: f64| mathieu::char_value(m, q, char_tol);

    // a_2m(0) = 4m² > 0 and a_2m → -∞, so a doubling scan brackets the root.
    let mut hi = 1.0;
    while a_at(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 1e8 {
            return Err(Error::BracketNotFound(format!(
                "a_{} stayed positive up to p = {hi}",
                2 * m
            )));
        }
    }
    let mut lo = if hi > 1.0 { hi / 2.0 } else { 0.0 };
    let p_tol = tol * 2.0 * SQRT_2;
    while hi - lo > p_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if a_at(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(dipole_from_p(0.5 * (lo + hi)))
}

/// A closed-form bound state `(n, m)` at dipole moment `D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundState {
    pub n: u32,
    pub m: u32,
    pub n_r: u32,
    pub dipole: f64,
    pub e_theta: f64,
    pub lambda: f64,
    pub beta: f64,
    pub energy: f64,
    pub norm: f64,
    /// `D` sits on the critical value (within [`MARGINAL_BAND`]).
    pub marginal: bool,
    pub method: Method,
}

/// Bound state `(n, m)` at dipole moment `d`, with `n_r = n - |m|`.
pub fn energy(n: u32, m: i32, d: f64, method: Method) -> Result<BoundState> {
    energy_tol(n, m, d, method, DEFAULT_TOL)
}

pub fn energy_tol(n: u32, m: i32, d: f64, method: Method, tol: f64) -> Result<BoundState> {
    let m_abs = m.unsigned_abs();
    if m_abs > n {
        return Err(Error::InvalidQuantumNumbers { n, m: i64::from(m) });
    }
    check_dipole(d)?;
    // a_0(p) < 0 for every p != 0.
    if m_abs == 0 && d > 0.0 {
        let mode = angular_eigenvalue_tol(0, d, method, tol)?;
        return Err(Error::NoBoundState {
            m: 0,
            dipole: d,
            e_theta: mode.e_theta,
        });
    }
    let mode = angular_eigenvalue_tol(m_abs, d, method, tol)?;
    BoundState::from_angular(n, &mode)
}

impl BoundState {
    /// Completes the radial solution for a known angular eigenvalue.
    pub fn from_angular(n: u32, mode: &AngularMode) -> Result<Self> {
        let m = mode.m;
        if m > n {
            return Err(Error::InvalidQuantumNumbers { n, m: i64::from(m) });
        }
        let (e_theta, marginal) = if mode.e_theta > MARGINAL_BAND {
            return Err(Error::NoBoundState {
                m,
                dipole: mode.dipole,
                e_theta: mode.e_theta,
            });
        } else if mode.e_theta >= -MARGINAL_BAND {
            (0.0, true)
        } else {
            (mode.e_theta, false)
        };
        let n_r = n - m;
        let lambda = 0.5 + (-e_theta).sqrt();
        let shifted = f64::from(n_r) + lambda;
        let beta = 1.0 / shifted;
        let mut state = BoundState {
            n,
            m,
            n_r,
            dipole: mode.dipole,
            e_theta,
            lambda,
            beta,
            energy: -1.0 / (shifted * shifted),
            norm: 0.0,
            marginal,
            method: mode.method,
        };
        state.norm = normalization(&state);
        Ok(state)
    }

    /// Unnormalized radial factor `R(r) = r^λ e^(-βr) ₁F₁(-n_r; 2λ; 2βr)`.
    pub fn radial(&self, r: f64) -> f64 {
        radial_eval(self, r)
    }
}

/// Unnormalized radial factor `R(r) = r^λ e^(-βr) ₁F₁(-n_r; 2λ; 2βr)`.
pub fn radial_eval(state: &BoundState, r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    r.powf(state.lambda)
        * (-state.beta * r).exp()
        * hyp1f1_terminating(state.n_r, 2.0 * state.lambda, 2.0 * state.beta * r)
}

/// Normalization constant `N` making `∫ |ψ|² r dr dθ = 1` for a unit-norm
/// angular factor:
///
/// ```text
/// N = 2^λ β^(λ+1/2) / Γ(2λ) · [Γ(n_r + 2λ) / (n_r! (n_r + λ))]^(1/2)
/// ```
///
/// evaluated in log space.
pub fn normalization(state: &BoundState) -> f64 {
    let lambda = state.lambda;
    let nr = f64::from(state.n_r);
    let ln_n = lambda * 2f64.ln() + (lambda + 0.5) * state.beta.ln() - ln_gamma(2.0 * lambda)
        + 0.5 * (ln_gamma(nr + 2.0 * lambda) - ln_gamma(nr + 1.0) - (nr + lambda).ln());
    ln_n.exp()
}

/// Unit-norm angular factor `Θ(θ) = ce_2m(θ/2; p) / √π`.
pub fn angular_eval(sol: &MathieuSolution, theta: f64) -> f64 {
    sol.eval(0.5 * theta) / PI.sqrt()
}

/// `ψ(r, θ) = N r^(λ-1/2) e^(-βr) Θ(θ) ₁F₁(-n_r; 2λ; 2βr)`.
pub fn wavefunction_eval(state: &BoundState, sol: &MathieuSolution, r: f64, theta: f64) -> f64 {
    debug_assert_eq!(state.m, sol.m());
    let radial = if r == 0.0 {
        if state.lambda > 0.5 {
            0.0
        } else {
            1.0
        }
    } else {
        r.powf(state.lambda - 0.5)
            * (-state.beta * r).exp()
            * hyp1f1_terminating(state.n_r, 2.0 * state.lambda, 2.0 * state.beta * r)
    };
    state.norm * radial * angular_eval(sol, theta)
}

/// A bound state paired with its angular Mathieu function.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction {
    state: BoundState,
    angular: MathieuSolution,
}

impl Wavefunction {
    /// Solves `(n, m, D)`. The angular factor always comes from the matrix
    /// route; `method` only selects how `E_θ` (and thus the energy) is found.
    pub fn new(n: u32, m: i32, d: f64, method: Method, tol: f64) -> Result<Self> {
        let state = energy_tol(n, m, d, method, tol)?;
        let angular = mathieu::char_value_matrix(state.m, p_from_dipole(d), tol)?;
        Ok(Self { state, angular })
    }

    pub fn state(&self) -> &BoundState {
        &self.state
    }

    pub fn angular(&self) -> &MathieuSolution {
        &self.angular
    }

    pub fn eval(&self, r: f64, theta: f64) -> f64 {
        wavefunction_eval(&self.state, &self.angular, r, theta)
    }
}
