//! Brute-force checks that share no code path with the closed-form levels.
//!
//! * [`radial_eigenvalue_shoot`] integrates the radial equation outward with
//!   Numerov's method and bisects on the energy by counting nodes.
//! * [`norm_quadrature`] integrates `|ψ|² r` over the plane numerically.
//! * [`convergence_report`] tracks a characteristic value as the Mathieu
//!   matrix truncation grows.
//! * [`radial_residual`] substitutes a radial function into the radial ODE
//!   using finite differences.
//!
//! None of these call the level formula.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::mathieu;
use serde::Serialize;

use crate::spectrum::{self, BoundState, Method, Wavefunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    /// Relative width of the final energy bracket.
    pub match_tol: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            r_min: 1e-6,
            r_max: 400.0,
            steps: 40_000,
            match_tol: 1e-10,
        }
    }
}

impl ShootingConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_max > self.r_min) {
            return Err(Error::InvalidArgument(format!(
                "need 0 < r_min < r_max, got {} and {}",
                self.r_min, self.r_max
            )));
        }
        if self.steps < 1000 {
            return Err(Error::InvalidArgument(format!(
                "need at least 1000 steps, got {}",
                self.steps
            )));
        }
        if self.match_tol.is_nan() || self.match_tol <= 0.0 {
            return Err(Error::InvalidArgument("match_tol must be positive".into()));
        }
        Ok(())
    }

    /// Same domain with twice as many steps.
    pub fn refined(&self) -> Self {
        Self {
            steps: self.steps * 2,
            ..*self
        }
    }
}

/// Outward Numerov integration of the radial equation at trial `energy`.
///
/// With `r = e^x` and `R = √r u`, the radial equation becomes
/// `u'' + (E r² + 2r + E_θ) u = 0` on a uniform grid in `x`, which removes the
/// 1/r² singularity. The first two points come from the regular Frobenius
/// expansion `R = r^λ (1 - r/λ + c₂ r² + ...)`.
///
/// Calls `visit(r, u)` at every grid point; `u` is rescaled on the fly, so
/// only its sign pattern is meaningful across a rescale.
fn numerov_sweep(energy: f64, e_theta: f64, cfg: &ShootingConfig, mut visit: impl FnMut(f64, f64)) {
    let kappa = (-e_theta).max(0.0).sqrt();
    let lambda = kappa + 0.5;
    let c1 = -1.0 / lambda;
    let c2 = (2.0 / lambda - energy) / (4.0 * lambda + 2.0);
    let frobenius = |r: f64| r.powf(kappa) * (1.0 + c1 * r + c2 * r * r);

    let x0 = cfg.r_min.ln();
    let h = (cfg.r_max.ln() - x0) / cfg.steps as f64;
    let h2 = h * h / 12.0;
    let weight = |x: f64| {
        let r = x.exp();
        1.0 + h2 * (energy * r * r + 2.0 * r + e_theta)
    };

    let mut r_cur = (x0 + h).exp();
    let mut u_prev = frobenius(cfg.r_min);
    let mut u_cur = frobenius(r_cur);
    let mut f_prev = weight(x0);
    let mut f_cur = weight(x0 + h);
    visit(cfg.r_min, u_prev);
    visit(r_cur, u_cur);
    for i in 2..=cfg.steps {
        let x = x0 + h * i as f64;
        let f_next = weight(x);
        let u_next = ((12.0 - 10.0 * f_cur) * u_cur - f_prev * u_prev) / f_next;
        r_cur = x.exp();
        u_prev = u_cur;
        u_cur = u_next;
        f_prev = f_cur;
        f_cur = f_next;
        if u_cur.abs() > 1e200 {
            u_prev *= 1e-200;
            u_cur *= 1e-200;
        }
        visit(r_cur, u_cur);
    }
}

/// Sign changes of the outward solution at trial `energy`.
pub fn count_nodes(energy: f64, e_theta: f64, cfg: &ShootingConfig) -> usize {
    let mut nodes = 0;
    let mut last_sign = 0.0f64;
    numerov_sweep(energy, e_theta, cfg, |_, u| {
        if u != 0.0 {
            let s = u.signum();
            if last_sign != 0.0 && s != last_sign {
                nodes += 1;
            }
            last_sign = s;
        }
    });
    nodes
}

/// Samples `(r, R(r))` of the outward solution, scaled to unit peak.
pub fn shooting_profile(energy: f64, e_theta: f64, cfg: &ShootingConfig) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(cfg.steps + 1);
    numerov_sweep(energy, e_theta, cfg, |r, u| out.push((r, r.sqrt() * u)));
    let peak = out.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    if peak > 0.0 {
        out.iter_mut().for_each(|p| p.1 /= peak);
    }
    out
}

/// Radial eigenvalue with `node_count` interior nodes for angular
/// eigenvalue `e_theta`, by node-counting bisection on the energy.
pub fn radial_eigenvalue_shoot(e_theta: f64, node_count: u32, cfg: &ShootingConfig) -> Result<f64> {
    cfg.validate()?;
    if e_theta > 0.0 {
        return Err(Error::InvalidArgument(format!(
            "E_theta = {e_theta} > 0 has no bound states"
        )));
    }
    let n = node_count as usize;

    let mut lo = -1.0;
    while count_nodes(lo, e_theta, cfg) > n {
        lo *= 2.0;
        if lo < -1e6 {
            return Err(Error::Shooting("no lower energy bracket".into()));
        }
    }
    let mut hi = -1e-4;
    if count_nodes(hi, e_theta, cfg) <= n {
        return Err(Error::Shooting(format!(
            "fewer than {} nodes below E = {hi}; enlarge r_max",
            n + 1
        )));
    }
    for _ in 0..200 {
        if hi - lo <= cfg.match_tol * lo.abs().min(hi.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if count_nodes(mid, e_theta, cfg) > n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub error: f64,
}

impl std::ops::Add for QuadratureEstimate {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> QuadratureEstimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = KRONROD_WEIGHTS[7] * f(center);
    let mut gauss = GAUSS_WEIGHTS[3] * f(center);
    for i in 0..7 {
        let dx = half * GK_NODES[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += KRONROD_WEIGHTS[i] * pair;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    QuadratureEstimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Adaptive 7/15-point Gauss-Kronrod quadrature on `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> QuadratureEstimate {
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        tol: f64,
        whole: QuadratureEstimate,
        depth: u32,
    ) -> QuadratureEstimate {
        if whole.error <= tol || depth >= 40 {
            return whole;
        }
        let mid = 0.5 * (a + b);
        let left = gk15(f, a, mid);
        let right = gk15(f, mid, b);
        recurse(f, a, mid, 0.5 * tol, left, depth + 1)
            + recurse(f, mid, b, 0.5 * tol, right, depth + 1)
    }
    let whole = gk15(&f, a, b);
    recurse(&f, a, b, tol, whole, 0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormGrid {
    /// Width of the first radial panel; later panels double.
    pub panel: f64,
    /// Trapezoid points on [0, 2π).
    pub theta_points: usize,
    /// Absolute tolerance per radial panel.
    pub tol: f64,
}

impl Default for NormGrid {
    fn default() -> Self {
        Self {
            panel: 4.0,
            theta_points: 256,
            tol: 1e-13,
        }
    }
}

/// `∫₀^∞ ∫₀^{2π} ψ(r, θ)² r dθ dr`.
///
/// The angular integral uses the periodic trapezoid rule; the radial one
/// runs adaptive Gauss-Kronrod over geometrically growing panels until the
/// panel contributions have peaked and become negligible.
pub fn norm_quadrature(psi: impl Fn(f64, f64) -> f64, grid: &NormGrid) -> QuadratureEstimate {
    let m = grid.theta_points.max(4);
    let dtheta = 2.0 * PI / m as f64;
    let ring = |r: f64| {
        let s: f64 = (0..m)
            .map(|j| {
                let v = psi(r, j as f64 * dtheta);
                v * v
            })
            .sum();
        s * dtheta * r
    };

    let mut total = QuadratureEstimate {
        value: 0.0,
        error: 0.0,
    };
    let mut a = 0.0;
    let mut width = grid.panel;
    let mut previous = f64::INFINITY;
    for _ in 0..60 {
        let piece = integrate(ring, a, a + width, grid.tol);
        total = total + piece;
        let small = piece.value.abs() <= 1e-16 * total.value.abs().max(f64::MIN_POSITIVE);
        if (small && piece.value.abs() <= previous) || (total.value == 0.0 && a > 1e3) {
            break;
        }
        previous = piece.value.abs();
        a += width;
        width *= 2.0;
    }
    total
}

/// Characteristic value `a_2m(p)` at each truncation in `sizes`.
pub fn convergence_report(m: u32, p: f64, sizes: &[usize]) -> Vec<(usize, f64)> {
    sizes
        .iter()
        .map(|&k| (k, mathieu::char_value_at_truncation(m, p, k)))
        .collect()
}

/// Relative residual of `R'' + [E + 2/r + (E_θ + 1/4)/r²] R = 0` for the
/// state's unnormalized radial function, with `R''` from a seven-point
/// central difference of step `h`. Normalized by the largest size of the
/// two balancing terms over the samples.
pub fn radial_residual(state: &BoundState, radii: &[f64], h: f64) -> f64 {
    let f = |r: f64| state.radial(r);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &r in radii {
        let d2 = (2.0 * f(r - 3.0 * h) - 27.0 * f(r - 2.0 * h) + 270.0 * f(r - h) - 490.0 * f(r)
            + 270.0 * f(r + h)
            - 27.0 * f(r + 2.0 * h)
            + 2.0 * f(r + 3.0 * h))
            / (180.0 * h * h);
        let k2 = state.energy + 2.0 / r + (state.e_theta + 0.25) / (r * r);
        let potential_term = k2 * f(r);
        worst = worst.max((d2 + potential_term).abs());
        scale = scale.max(d2.abs()).max(potential_term.abs());
    }
    worst / scale
}

/// One `(n, m, D)` point of the reference grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridCase {
    pub n: u32,
    pub m: u32,
    pub dipole: f64,
}

/// The 27-point grid `m ∈ {1, 2, 3}`, `n ∈ {m, m+1, m+2}`,
/// `D ∈ {0, D_crit/2, 0.9 D_crit}`; `quick` keeps only `m = 1`.
pub fn reference_grid(quick: bool, tol: f64) -> Result<Vec<GridCase>> {
    let ms: &[u32] = if quick { &[1] } else { &[1, 2, 3] };
    let mut cases = Vec::new();
    for &m in ms {
        let dc = spectrum::critical_dipole(m, tol)?;
        for n in m..=m + 2 {
            for dipole in [0.0, 0.5 * dc, 0.9 * dc] {
                cases.push(GridCase { n, m, dipole });
            }
        }
    }
    Ok(cases)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: GridCase,
    pub closed_form: f64,
    pub shooting: f64,
    /// Shooting with the step count doubled.
    pub shooting_refined: f64,
    /// |shooting - closed_form| / |closed_form|
    pub energy_rel_diff: f64,
    pub norm: f64,
}

/// Checks one grid point against both oracles. `energy_fault` scales the
/// closed-form energy by `1 + energy_fault` before comparing (a sensitivity
/// hook; 0 in normal use).
pub fn check_case(
    case: GridCase,
    cfg: &ShootingConfig,
    grid: &NormGrid,
    tol: f64,
    energy_fault: f64,
) -> Result<CaseReport> {
    let wf = Wavefunction::new(case.n, case.m as i32, case.dipole, Method::Matrix, tol)?;
    let state = wf.state();
    let closed_form = state.energy * (1.0 + energy_fault);
    let node_count = case.n - case.m;
    let shooting = radial_eigenvalue_shoot(state.e_theta, node_count, cfg)?;
    let shooting_refined = radial_eigenvalue_shoot(state.e_theta, node_count, &cfg.refined())?;
    let norm = norm_quadrature(|r, t| wf.eval(r, t), grid).value;
    Ok(CaseReport {
        case,
        closed_form,
        shooting,
        shooting_refined,
        energy_rel_diff: ((shooting - closed_form) / closed_form).abs(),
        norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{energy, DEFAULT_TOL};

    #[test]
    fn shooting_reproduces_coulomb_levels() {
        let cfg = ShootingConfig::default();
        let e = radial_eigenvalue_shoot(-1.0, 0, &cfg).unwrap();
        assert!((e + 4.0 / 9.0).abs() < 1e-9 * 4.0 / 9.0, "{e}");
        let e = radial_eigenvalue_shoot(-4.0, 1, &cfg).unwrap();
        assert!((e + 4.0 / 49.0).abs() < 1e-9 * 4.0 / 49.0, "{e}");
    }

    #[test]
    fn shooting_profile_has_requested_nodes() {
        let cfg = ShootingConfig::default();
        let e = radial_eigenvalue_shoot(-2.5, 2, &cfg).unwrap();
        let below = count_nodes(e * (1.0 + 1e-6), -2.5, &cfg);
        assert_eq!(below, 2);
        let above = count_nodes(e * (1.0 - 1e-6), -2.5, &cfg);
        assert_eq!(above, 3);
        // Inside the well the profile is insensitive to the last digits of e.
        let profile = shooting_profile(e, -2.5, &cfg);
        let near = shooting_profile(e * (1.0 + 1e-9), -2.5, &cfg);
        let (r, v) = profile[cfg.steps / 2];
        assert!(r < 1.0 && (v - near[cfg.steps / 2].1).abs() < 1e-6);
    }

    #[test]
    fn shooting_rejects_bad_input() {
        let mut cfg = ShootingConfig::default();
        assert!(radial_eigenvalue_shoot(0.2, 0, &cfg).is_err());
        cfg.steps = 10;
        assert!(radial_eigenvalue_shoot(-1.0, 0, &cfg).is_err());
    }

    #[test]
    fn gauss_kronrod_polynomials_and_exponentials() {
        let q = integrate(|x| x.powi(5) - 3.0 * x, 0.0, 2.0, 1e-14);
        assert!((q.value - (64.0 / 6.0 - 6.0)).abs() < 1e-13);
        let q = integrate(|x| (-x).exp(), 0.0, 50.0, 1e-14);
        assert!((q.value - (1.0 - (-50f64).exp())).abs() < 1e-13);
        let q = integrate(|x| x.sqrt(), 0.0, 1.0, 1e-12);
        assert!((q.value - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn norm_of_coulomb_pair() {
        let wf = Wavefunction::new(1, 1, 0.0, Method::Auto, DEFAULT_TOL).unwrap();
        let q = norm_quadrature(|r, t| wf.eval(r, t), &NormGrid::default());
        assert!((q.value - 1.0).abs() < 1e-10, "{}", q.value);
        let n = wf.state().norm;
        let raw = norm_quadrature(|r, t| wf.eval(r, t) / n, &NormGrid::default());
        assert!((raw.value - 1.0 / (n * n)).abs() < 1e-9 / (n * n));
        let zero = norm_quadrature(|_, _| 0.0, &NormGrid::default());
        assert_eq!(zero.value, 0.0);
    }

    #[test]
    fn convergence_trivial_and_self_consistent() {
        let rep = convergence_report(0, 0.0, &[25, 50]);
        assert!(rep.iter().all(|&(_, a)| a.abs() < 1e-12));
        let rep = convergence_report(1, 21.3, &[25, 50, 100, 200, 400]);
        let last = rep.last().unwrap().1;
        assert!((rep[3].1 - last).abs() < 1e-12);
    }

    #[test]
    fn radial_residual_is_small() {
        let s = energy(3, 1, 2.0, Method::Matrix).unwrap();
        let radii: Vec<f64> = (0..50).map(|i| 0.1 + 0.4 * i as f64).collect();
        assert!(radial_residual(&s, &radii, 1e-3) < 1e-6);
        // A wrong energy shows up.
        let mut off = s;
        off.energy *= 1.001;
        assert!(radial_residual(&off, &radii, 1e-3) > 1e-6);
    }
}
