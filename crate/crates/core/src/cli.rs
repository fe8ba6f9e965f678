//! Command-line front end and the dataset builders behind it.
//!
//! Every subcommand is a thin wrapper over a builder that returns a
//! [`Table`], so the same data is reachable from the library. Sweeps are
//! evaluated in parallel and emitted in input order.
//!
//! Exit codes: 0 ok, 1 verification or convergence failure, 2 usage error,
//! 3 domain error (no bound state).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mathieu;
use crate::multipole::{self, ChargeCluster};
use crate::oracle::{self, NormGrid, ShootingConfig};
use crate::spectrum::{self, Method};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NoBoundState { .. } => EXIT_DOMAIN,
        Error::InvalidArgument(_)
        | Error::InvalidQuantumNumbers { .. }
        | Error::EmptyCluster
        | Error::SingularPoint { .. } => EXIT_USAGE,
        Error::NoConvergence { .. } | Error::BracketNotFound(_) | Error::Shooting(_) => {
            EXIT_FAILURE
        }
    }
}

/// Inclusive, evenly spaced grid `min..=max` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 steps, got {steps}"
            )));
        }
        if !(min.is_finite() && max.is_finite() && max > min) {
            return Err(Error::InvalidArgument(format!(
                "need max > min, got [{min}, {max}]"
            )));
        }
        Ok(Self { min, max, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / last
                }
            })
            .collect()
    }
}

/// Parameter sweep driving the table and figure datasets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub m: u32,
    pub n_list: Vec<u32>,
    pub range: Range,
    pub method: Method,
    pub tol: f64,
}

/// A rectangular dataset; `None` cells are written empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.map(format_number).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    /// Values of one column, by name.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small
/// or very large magnitudes. Negative zero prints as `0`.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn significant(v: f64, digits: i32) -> String {
    if v == 0.0 || !v.is_finite() {
        return format_number(v);
    }
    let decimals = (digits - 1 - v.abs().log10().floor() as i32).max(0) as usize;
    format!("{v:.decimals$}")
}

/// `m, D_crit` for `m = 0..=m_max`.
pub fn critical_table(m_max: u32, tol: f64) -> Result<Table> {
    let rows = (0..=m_max)
        .into_par_iter()
        .map(|m| {
            Ok(vec![
                Some(f64::from(m)),
                Some(spectrum::critical_dipole(m, tol)?),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        columns: vec!["m".into(), "D_crit".into()],
        rows,
    })
}

/// `p, a_0, a_2, ...` by the matrix route for `m = 0..=m_max`.
pub fn charvals_table(range: Range, m_max: u32, tol: f64) -> Result<Table> {
    let mut columns = vec!["p".to_string()];
    columns.extend((0..=m_max).map(|m| format!("a_{}", 2 * m)));
    let rows = range
        .points()
        .into_par_iter()
        .map(|p| {
            let mut row = vec![Some(p)];
            for m in 0..=m_max {
                row.push(Some(mathieu::char_value(m, p, tol)?));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { columns, rows })
}

/// `D, E_n1, E_n2, ...` for fixed `m`; cells past the critical dipole are
/// empty.
pub fn energies_table(spec: &SweepSpec) -> Result<Table> {
    if spec.n_list.is_empty() {
        return Err(Error::InvalidArgument("empty n list".into()));
    }
    if let Some(&n) = spec.n_list.iter().find(|&&n| n < spec.m) {
        return Err(Error::InvalidQuantumNumbers {
            n,
            m: i64::from(spec.m),
        });
    }
    if spec.range.min < 0.0 {
        return Err(Error::InvalidArgument(
            "dipole range must start at D >= 0".into(),
        ));
    }
    if spec.m == 0 && spec.range.max > 0.0 {
        let e_theta =
            spectrum::angular_eigenvalue_tol(0, spec.range.max, spec.method, spec.tol)?.e_theta;
        return Err(Error::NoBoundState {
            m: 0,
            dipole: spec.range.max,
            e_theta,
        });
    }
    let mut columns = vec!["D".to_string()];
    columns.extend(spec.n_list.iter().map(|n| format!("E_{n}")));
    let rows = spec
        .range
        .points()
        .into_par_iter()
        .map(|d| {
            let mode = spectrum::angular_eigenvalue_tol(spec.m, d, spec.method, spec.tol)?;
            let mut row = vec![Some(d)];
            for &n in &spec.n_list {
                match spectrum::BoundState::from_angular(n, &mode) {
                    Ok(state) => row.push(Some(state.energy)),
                    Err(Error::NoBoundState { .. }) => row.push(None),
                    Err(e) => return Err(e),
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { columns, rows })
}

/// `r, theta, psi` on `r ∈ [0, r_max]` (inclusive, `r_steps` points) by
/// `θ ∈ [0, 2π)` (`theta_steps` points), row-major in `r`.
#[allow(clippy::too_many_arguments)]
pub fn wavefunction_table(
    n: u32,
    m: i32,
    d: f64,
    r_max: f64,
    r_steps: usize,
    theta_steps: usize,
    method: Method,
    tol: f64,
) -> Result<Table> {
    let radii = Range::new(0.0, r_max, r_steps)?.points();
    if theta_steps < 1 {
        return Err(Error::InvalidArgument(
            "need at least one theta step".into(),
        ));
    }
    let wf = spectrum::Wavefunction::new(n, m, d, method, tol)?;
    let dtheta = 2.0 * std::f64::consts::PI / theta_steps as f64;
    let rows = radii
        .par_iter()
        .flat_map_iter(|&r| {
            let wf = &wf;
            (0..theta_steps).map(move |j| {
                let theta = j as f64 * dtheta;
                vec![Some(r), Some(theta), Some(wf.eval(r, theta))]
            })
        })
        .collect();
    Ok(Table {
        columns: vec!["r".into(), "theta".into(), "psi".into()],
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub check: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

/// Runs the oracle grid plus Mathieu convergence checks. `energy_fault`
/// perturbs the closed-form energies (relative) to prove the checks bite.
pub fn verify_rows(quick: bool, energy_fault: f64) -> Result<Vec<VerifyRow>> {
    const ENERGY_LIMIT: f64 = 1e-6;
    const NORM_LIMIT: f64 = 1e-6;
    let cfg = ShootingConfig::default();
    let grid = NormGrid::default();
    let tol = spectrum::DEFAULT_TOL;
    let cases = oracle::reference_grid(quick, 1e-10)?;
    let reports = cases
        .par_iter()
        .map(|&c| oracle::check_case(c, &cfg, &grid, tol, energy_fault))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    for r in &reports {
        let label = format!(
            "n={} m={} D={}",
            r.case.n,
            r.case.m,
            significant(r.case.dipole, 6)
        );
        rows.push(VerifyRow {
            check: format!("shooting vs closed form [{label}]"),
            value: r.energy_rel_diff,
            limit: ENERGY_LIMIT,
            pass: r.energy_rel_diff <= ENERGY_LIMIT,
        });
        let halving = ((r.shooting - r.shooting_refined) / r.shooting).abs();
        let limit = 10.0 * cfg.match_tol;
        rows.push(VerifyRow {
            check: format!("shooting step halving [{label}]"),
            value: halving,
            limit,
            pass: halving <= limit,
        });
        rows.push(VerifyRow {
            check: format!("quadrature norm [{label}]"),
            value: (r.norm - 1.0).abs(),
            limit: NORM_LIMIT,
            pass: (r.norm - 1.0).abs() <= NORM_LIMIT,
        });
    }

    let mut conv = vec![(1u32, 21.3f64)];
    if !quick {
        conv.push((7, 722.6));
    }
    for (m, p) in conv {
        let sizes: Vec<usize> = (0..5).map(|i| 25usize << i).collect();
        let report = oracle::convergence_report(m, p, &sizes);
        let last_step = (report[4].1 - report[3].1).abs();
        let limit = 1e-12f64.max(16.0 * f64::EPSILON * report[4].1.abs());
        rows.push(VerifyRow {
            check: format!("Mathieu truncation m={m} p={p} K=200->400"),
            value: last_step,
            limit,
            pass: last_step <= limit,
        });
    }
    Ok(rows)
}

pub fn render_verify(rows: &[VerifyRow]) -> String {
    let width = rows.iter().map(|r| r.check.len()).max().unwrap_or(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>10}  {:>10}  result",
        "check", "value", "limit"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<width$}  {:>10.3e}  {:>10.3e}  {}",
            r.check,
            r.value,
            r.limit,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    let _ = writeln!(out, "{} checks, {} failed", rows.len(), failed);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Series,
    Matrix,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Series => Method::Series,
            MethodArg::Matrix => Method::Matrix,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dipole2d",
    version,
    about = "2D bound states in a monopole + dipole potential"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Absolute tolerance for characteristic values and critical dipoles.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output file (defaults to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Critical dipole moments D_crit for m = 0..=m_max.
    Critical {
        #[arg(long, default_value_t = 7)]
        m_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Characteristic values a_0, a_2, ... over a p grid.
    Charvals {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        p_min: f64,
        #[arg(long, default_value_t = 40.0, allow_negative_numbers = true)]
        p_max: f64,
        #[arg(long, default_value_t = 401)]
        p_steps: usize,
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Energy levels E_{n,m}(D) for fixed m.
    Energies {
        #[arg(long)]
        m: u32,
        /// Comma-separated principal quantum numbers (default m..=m+4).
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long, default_value_t = 0.0)]
        d_min: f64,
        /// Defaults to D_crit for this m.
        #[arg(long)]
        d_max: Option<f64>,
        #[arg(long, default_value_t = 200)]
        d_steps: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Normalized wavefunction on an (r, theta) grid.
    Wavefunction {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        m: i32,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 20.0)]
        r_max: f64,
        #[arg(long, default_value_t = 101)]
        r_steps: usize,
        #[arg(long, default_value_t = 64)]
        theta_steps: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Reduce a charge-cluster JSON file to (Q, D, axis).
    Reduce {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the oracle verification grid.
    Verify {
        /// m = 1 subset only.
        #[arg(long)]
        quick: bool,
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(table: &Table, common: &Common, stdout: &mut dyn Write) -> Result<i32> {
    let text = if common.json {
        table.to_json()
    } else {
        table.to_csv()
    };
    write_text(&text, common.out.as_ref(), stdout)
}

fn write_text(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("write failed: {e}"));
    match out {
        Some(path) => std::fs::write(path, text).map_err(io)?,
        None => stdout.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Critical { m_max, common } => {
            emit(&critical_table(m_max, common.tol)?, &common, stdout)
        }
        Command::Charvals {
            p_min,
            p_max,
            p_steps,
            m_max,
            common,
        } => {
            let range = Range::new(p_min, p_max, p_steps)?;
            emit(&charvals_table(range, m_max, common.tol)?, &common, stdout)
        }
        Command::Energies {
            m,
            n,
            d_min,
            d_max,
            d_steps,
            method,
            common,
        } => {
            let n_list = if n.is_empty() {
                (m..=m + 4).collect()
            } else {
                n
            };
            let d_max = match d_max {
                Some(d) => d,
                None if m == 0 => {
                    return Err(Error::InvalidArgument(
                        "m = 0 has D_crit = 0, so --d-max has no default".into(),
                    ))
                }
                None => spectrum::critical_dipole(m, common.tol)?,
            };
            let spec = SweepSpec {
                m,
                n_list,
                range: Range::new(d_min, d_max, d_steps)?,
                method: method.into(),
                tol: common.tol,
            };
            emit(&energies_table(&spec)?, &common, stdout)
        }
        Command::Wavefunction {
            n,
            m,
            d,
            r_max,
            r_steps,
            theta_steps,
            method,
            common,
        } => {
            let table = wavefunction_table(
                n,
                m,
                d,
                r_max,
                r_steps,
                theta_steps,
                method.into(),
                common.tol,
            )?;
            emit(&table, &common, stdout)
        }
        Command::Reduce { path, json } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            let cluster = ChargeCluster::from_json(&text)?;
            let red = multipole::reduce(&cluster);
            let text = if json {
                let mut s = serde_json::to_string_pretty(&red).expect("reduction serializes");
                s.push('\n');
                s
            } else {
                format!(
                    "Q = {}\nD = {}\naxis = ({}, {})\n",
                    significant(red.total_charge, 6),
                    significant(red.dipole, 6),
                    significant(red.axis[0], 6),
                    significant(red.axis[1], 6)
                )
            };
            write_text(&text, None, stdout)
        }
        Command::Verify {
            quick,
            inject_fault,
            json,
        } => {
            let fault = if inject_fault { 1e-3 } else { 0.0 };
            let rows = verify_rows(quick, fault)?;
            let text = if json {
                let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
                s.push('\n');
                s
            } else {
                render_verify(&rows)
            };
            write_text(&text, None, stdout)?;
            Ok(if rows.iter().all(|r| r.pass) {
                EXIT_OK
            } else {
                EXIT_FAILURE
            })
        }
    }
}
