//! Even π-periodic Mathieu functions `ce_2m(z; p)` and their characteristic
//! values `a_2m(p)` for
//!
//! ```text
//! y'' + (a - 2p cos 2z) y = 0
//! ```
//!
//! Two routes are provided: the small-`p` power series for `a_2m`, and the
//! exact route that truncates the Fourier-coefficient recurrence
//!
//! ```text
//! a A_0 = p A_2
//! (a - 4) A_2 = p (2 A_0 + A_4)
//! (a - 4k²) A_2k = p (A_2k-2 + A_2k+2),   k >= 2
//! ```
//!
//! to a finite symmetric tridiagonal matrix (with `B_0 = √2 A_0`) and doubles
//! the truncation until the selected eigenvalue stops moving.
//!
//! Normalization: `∫₀^{2π} ce_2m(z)² dz = π`, so `ce_0(z; 0) = 1/√2` and
//! `ce_2m(z; 0) = cos 2mz`. Signs follow continuity in `p`: for `p >= 0`,
//! `(-1)^m ce_2m(π/2) > 0`, and `ce_2m(z; -p) = (-1)^m ce_2m(π/2 - z; p)`.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::tridiag::SymTridiagonal;

/// Largest truncation tried before giving up.
pub const MAX_TRUNCATION: usize = 1 << 14;

/// |p| up to which the power series is trusted.
pub const SERIES_TRUST_P: f64 = 0.5;

/// Converged even Mathieu eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct MathieuSolution {
    m: u32,
    p: f64,
    a: f64,
    coeffs: Vec<f64>,
    truncation: usize,
}

impl MathieuSolution {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Characteristic value `a_2m(p)`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Fourier-cosine coefficients `A_0, A_2, A_4, ...`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Matrix size at which the eigenvalue was accepted.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `ce_2m(z; p) = Σ A_2k cos 2kz`.
    pub fn eval(&self, z: f64) -> f64 {
        cosine_series(&self.coeffs, 2.0 * z, |_, c| c)
    }

    /// d²/dz² ce_2m(z; p), from the series term by term.
    pub fn second_derivative(&self, z: f64) -> f64 {
        cosine_series(&self.coeffs, 2.0 * z, |k, c| {
            let k = k as f64;
            -4.0 * k * k * c
        })
    }

    /// max over `samples` of |ce'' + (a - 2p cos 2z) ce|.
    pub fn ode_residual(&self, samples: &[f64]) -> f64 {
        samples
            .iter()
            .map(|&z| {
                let lhs = self.second_derivative(z)
                    + (self.a - 2.0 * self.p * (2.0 * z).cos()) * self.eval(z);
                lhs.abs()
            })
            .fold(0.0, f64::max)
    }

    /// `ode_residual` divided by max |ce| over the same samples.
    pub fn relative_ode_residual(&self, samples: &[f64]) -> f64 {
        let peak = samples
            .iter()
            .map(|&z| self.eval(z).abs())
            .fold(0.0, f64::max);
        self.ode_residual(samples) / peak
    }

    /// `2 A_0² + Σ_{k>=1} A_2k²`, equal to 1 under the π normalization.
    pub fn weighted_norm(&self) -> f64 {
        let rest: f64 = self.coeffs[1..].iter().map(|c| c * c).sum();
        2.0 * self.coeffs[0] * self.coeffs[0] + rest
    }
}

/// Clenshaw summation of `Σ_k w(k, c_k) cos(k φ)`.
fn cosine_series(coeffs: &[f64], phi: f64, weight: impl Fn(usize, f64) -> f64) -> f64 {
    let two_cos = 2.0 * phi.cos();
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for k in (1..coeffs.len()).rev() {
        let b0 = weight(k, coeffs[k]) + two_cos * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    weight(0, coeffs[0]) + 0.5 * two_cos * b1 - b2
}

/// Small-`p` series for `a_2m(p)`, truncated after the p⁶ term.
///
/// The first four orders use their individual expansions; beyond that the
/// general even-order formula applies.
pub fn char_value_series(m: u32, p: f64) -> f64 {
    let p2 = p * p;
    let p4 = p2 * p2;
    let p6 = p4 * p2;
    match m {
        0 => -0.5 * p2 + 7.0 / 128.0 * p4 - 29.0 / 2304.0 * p6,
        1 => 4.0 + 5.0 / 12.0 * p2 - 763.0 / 13824.0 * p4 + 1_002_401.0 / 79_626_240.0 * p6,
        2 => 16.0 + p2 / 30.0 + 433.0 / 864_000.0 * p4 - 5701.0 / 2_721_600_000.0 * p6,
        3 => 36.0 + p2 / 70.0 + 187.0 / 43_904_000.0 * p4 + 6_743_617.0 / 92_935_987_200_000.0 * p6,
        _ => {
            let m = f64::from(m);
            let m2 = m * m;
            let r2 = 4.0 * m2;
            let c2 = 1.0 / (2.0 * (r2 - 1.0));
            let c4 = (20.0 * m2 + 7.0) / (32.0 * (r2 - 1.0).powi(3) * (r2 - 4.0));
            let c6 = (144.0 * m2 * m2 + 232.0 * m2 + 29.0)
                / (64.0 * (r2 - 1.0).powi(5) * (r2 - 4.0) * (r2 - 9.0));
            r2 + c2 * p2 + c4 * p4 + c6 * p6
        }
    }
}

/// Starting truncation for the matrix route.
pub fn initial_truncation(m: u32, p: f64) -> usize {
    let by_m = 3 * m as usize + 10;
    let by_p = (2.0 * p.abs().sqrt()).ceil() as usize + 10;
    25.max(by_m).max(by_p)
}

/// The symmetrized `size`×`size` recurrence matrix for parameter `q >= 0`,
/// acting on `(√2 A_0, A_2, A_4, ...)`.
pub fn recurrence_matrix(q: f64, size: usize) -> SymTridiagonal {
    let diag = (0..size).map(|k| 4.0 * (k * k) as f64).collect();
    let mut off = vec![q; size.saturating_sub(1)];
    if let Some(first) = off.first_mut() {
        *first = SQRT_2 * q;
    }
    SymTridiagonal::new(diag, off)
}

/// `a_2m` at a fixed truncation, without adaptivity.
pub fn char_value_at_truncation(m: u32, p: f64, size: usize) -> f64 {
    assert!(size > m as usize, "truncation must exceed m");
    recurrence_matrix(p.abs(), size).eigenvalue(m as usize)
}

fn convergence_floor(tol: f64, a: f64) -> f64 {
    // Absolute agreement below a few ulps of |a| cannot be asked of a
    // double-precision eigenvalue.
    tol.max(16.0 * f64::EPSILON * a.abs())
}

/// Adaptive truncation loop; returns the converged eigenvalue and matrix.
fn converge(m: u32, q: f64, tol: f64) -> Result<(f64, SymTridiagonal)> {
    let mut size = initial_truncation(m, q);
    let mut matrix = recurrence_matrix(q, size);
    let mut prev = matrix.eigenvalue(m as usize);
    loop {
        let next_size = size * 2;
        if next_size > MAX_TRUNCATION {
            let last = recurrence_matrix(q, MAX_TRUNCATION).eigenvalue(m as usize);
            return Err(Error::NoConvergence {
                truncation: MAX_TRUNCATION,
                previous: prev,
                last,
            });
        }
        let next_matrix = recurrence_matrix(q, next_size);
        let next = next_matrix.eigenvalue(m as usize);
        let settled = (next - prev).abs() < convergence_floor(tol, next);
        size = next_size;
        matrix = next_matrix;
        prev = next;
        if settled {
            return Ok((prev, matrix));
        }
    }
}

/// Characteristic value only, by the matrix route.
pub fn char_value(m: u32, p: f64, tol: f64) -> Result<f64> {
    check_args(p, tol)?;
    if p == 0.0 {
        return Ok(4.0 * f64::from(m) * f64::from(m));
    }
    converge(m, p.abs(), tol).map(|(a, _)| a)
}

fn check_args(p: f64, tol: f64) -> Result<()> {
    if !p.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "Mathieu parameter {p} is not finite"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    Ok(())
}

/// Characteristic value and Fourier coefficients of `ce_2m(z; p)` by the
/// truncated-matrix route.
pub fn char_value_matrix(m: u32, p: f64, tol: f64) -> Result<MathieuSolution> {
    check_args(p, tol)?;
    let mi = m as usize;
    if p == 0.0 {
        let size = initial_truncation(m, p);
        let mut coeffs = vec![0.0; size];
        coeffs[mi] = if m == 0 { 1.0 / SQRT_2 } else { 1.0 };
        return Ok(MathieuSolution {
            m,
            p,
            a: 4.0 * f64::from(m) * f64::from(m),
            coeffs,
            truncation: size,
        });
    }

    let (a, matrix) = converge(m, p.abs(), tol)?;
    let mut coeffs = matrix.eigenvector(a);
    coeffs[0] /= SQRT_2;

    // (-1)^m ce(π/2; |p|) > 0
    let at_half_pi: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 0 { *c } else { -*c })
        .sum();
    let flip = (at_half_pi < 0.0) != (m % 2 == 1);
    if flip {
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    if p < 0.0 {
        for (k, c) in coeffs.iter_mut().enumerate() {
            if (k + mi) % 2 == 1 {
                *c = -*c;
            }
        }
    }
    Ok(MathieuSolution {
        m,
        p,
        a,
        coeffs,
        truncation: matrix.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    fn uniform(n: usize) -> Vec<f64> {
        (0..n).map(|i| PI * i as f64 / n as f64).collect()
    }

    #[test]
    fn series_examples() {
        assert_eq!(char_value_series(0, 0.0), 0.0);
        let want = 4.0 + 5.0 / 12.0 * 0.01 - 763.0 / 13824.0 * 1e-4 + 1002401.0 / 79626240.0 * 1e-6;
        assert!((char_value_series(1, 0.1) - want).abs() < 1e-15);
        assert!((char_value_series(1, 0.1) - 4.0041612).abs() < 1e-7);
        assert!((char_value_series(0, 0.5) + 0.1217787).abs() < 1e-7);
        assert!((char_value_series(5, 0.2) - 100.000202).abs() < 1e-6);
    }

    #[test]
    fn general_series_p6_coefficient() {
        // Exact values from an independent Mathieu implementation.
        for (m, exact) in [(4, 64.00793718925468), (5, 100.00505067515947)] {
            let s = char_value_series(m, 1.0);
            assert!((s - exact).abs() < 1e-11, "m={m}: {s} vs {exact}");
            let a = char_value(m, 1.0, TOL).unwrap();
            assert!((s - a).abs() < 1e-11);
        }
    }

    #[test]
    fn matrix_golden_values() {
        // Independent reference values for a_0(1), a_2(1), a_0(20), a_4(5).
        let cases = [
            (0, 1.0, -0.45513860410741364),
            (1, 1.0, 4.371300982735086),
            (0, 20.0, -31.313390070336514),
            (2, 5.0, 17.096581684366047),
        ];
        for (m, p, want) in cases {
            let sol = char_value_matrix(m, p, TOL).unwrap();
            assert!((sol.a() - want).abs() < 1e-10, "m={m} p={p}: {}", sol.a());
            // Doubled truncation as oracle.
            let doubled = char_value_at_truncation(m, p, 2 * sol.truncation());
            assert!((doubled - sol.a()).abs() < TOL);
        }
    }

    #[test]
    fn zero_parameter_is_decoupled() {
        let sol = char_value_matrix(0, 0.0, TOL).unwrap();
        assert_eq!(sol.a(), 0.0);
        assert!(sol.coeffs()[1..].iter().all(|&c| c == 0.0));
        for z in [0.0, 0.4, 2.0] {
            assert!((sol.eval(z) - 1.0 / SQRT_2).abs() < 1e-15);
        }
        let ce2 = char_value_matrix(1, 0.0, TOL).unwrap();
        assert!((ce2.eval(0.0) - 1.0).abs() < 1e-15);
        assert!(ce2.eval(PI / 4.0).abs() < 1e-15);
        for m in 0..=10 {
            let a = char_value_matrix(m, 0.0, TOL).unwrap().a();
            assert!((a - f64::from(4 * m * m)).abs() < 1e-12);
        }
    }

    #[test]
    fn residuals() {
        let z = uniform(64);
        let zero = char_value_matrix(1, 0.0, TOL).unwrap();
        assert!(zero.ode_residual(&z) < 1e-13);
        let s = char_value_matrix(2, 5.0, TOL).unwrap();
        assert!(s.relative_ode_residual(&z) <= 1e-8);
        let s = char_value_matrix(0, 20.0, TOL).unwrap();
        assert!(s.relative_ode_residual(&z) <= 1e-8);
        let s = char_value_matrix(3, -7.0, TOL).unwrap();
        assert!(s.relative_ode_residual(&z) <= 1e-8);
    }

    #[test]
    fn normalization_and_sign_convention() {
        for &(m, p) in &[(0, 3.0), (1, -2.0), (2, 40.0), (4, -0.7)] {
            let sol = char_value_matrix(m, p, TOL).unwrap();
            assert!((sol.weighted_norm() - 1.0).abs() < 1e-12);
            if p > 0.0 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!(sign * sol.eval(PI / 2.0) > 0.0);
            } else {
                assert!(sol.eval(0.0) > 0.0);
            }
        }
    }

    #[test]
    fn negative_parameter_reflects_solution() {
        let pos = char_value_matrix(2, 3.5, TOL).unwrap();
        let neg = char_value_matrix(2, -3.5, TOL).unwrap();
        assert_eq!(pos.a(), neg.a());
        for z in [0.1, 0.7, 1.3] {
            assert!((neg.eval(z) - pos.eval(PI / 2.0 - z)).abs() < 1e-13);
        }
    }

    #[test]
    fn continuity_through_zero_parameter() {
        for m in 0..4 {
            let z = 0.3;
            let at_zero = char_value_matrix(m, 0.0, TOL).unwrap().eval(z);
            let plus = char_value_matrix(m, 1e-6, TOL).unwrap().eval(z);
            let minus = char_value_matrix(m, -1e-6, TOL).unwrap().eval(z);
            assert!((plus - at_zero).abs() < 1e-5);
            assert!((minus - at_zero).abs() < 1e-5);
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(matches!(
            char_value_matrix(0, f64::NAN, TOL),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            char_value_matrix(0, 1.0, 0.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn series_remainder_is_eighth_order() {
        // Leading omitted term for m = 0, 1 is ±68687/18874368 p⁸ ≈ 3.64e-3 p⁸.
        for m in 0..=3 {
            for p in [0.1, 0.2, 0.3] {
                let s = char_value_series(m, p);
                let a = char_value(m, p, TOL).unwrap();
                assert!(
                    (s - a).abs() <= 4e-3 * p.powi(8) + 1e-14,
                    "m={m} p={p}: {s} vs {a}"
                );
            }
        }
    }
}
