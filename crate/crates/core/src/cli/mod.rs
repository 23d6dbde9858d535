//! Command-line front end.
//!
//! ```text
//! spin-wigner volume  --state s.txt --grid "x1:-4:4:41,x2:-4:4:41,x3:-4:4:41" --out w.csv
//! spin-wigner sphere  --state s.txt --method both --out ws.csv
//! spin-wigner plane4d --state s.txt --grid "q1:-3:3:61,p1:-3:3:61,q2=0.5" --out slice.csv
//! spin-wigner check   --state s.txt
//! ```
//!
//! Data files are comma-separated with a `#`-prefixed header. The run report
//! (JSON) goes to stdout, or to stderr when the data itself is written to
//! stdout. Exit status: 0 ok, 1 invalid input, 2 numerical failure or failed
//! check, 3 capacity exceeded.

pub mod grid;
pub mod state_spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::moyal::{wigner_4d_complex, IMAGINARY_TOLERANCE};
use crate::reduced_space::S2_COMMUTATOR_TOLERANCE;
use crate::sphere::{
    sphere_integral_unchecked, ws_analytic_complex, ws_numeric_unchecked, RadialQuadrature, SphereResolution,
};
use crate::{
    check_fiber_invariance, construct_omega, decompose_angular_basis, hopf_section, Error, LmDensity,
    OscillatorDensity, PhasePoint3, PhasePoint4, Result, SphPoint, C64,
};

pub use grid::{AxisRange, GridKind, GridSpec, MAX_GRID_POINTS};
pub use state_spec::{Operand, StateSpec};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Elements below this size leave an operator Hermitian for output purposes.
const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Represented traces below this are treated as zero.
const TRACE_FLOOR: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(
    name = "spin-wigner",
    version,
    about = "Continuous Wigner functions of spin-half ensembles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// State specification file.
    #[arg(long)]
    pub state: PathBuf,
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Override a tolerance, e.g. `--tolerance normalization=1e-6`.
    /// Names: commutator, normalization, fiber, trace.
    #[arg(long = "tolerance", value_name = "NAME=VALUE")]
    pub tolerances: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced function on an (x1, x2, x3) grid.
    Volume {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spherical function on a (theta, phi) grid.
    Sphere {
        #[command(flatten)]
        common: Common,
        /// Defaults to a 32 x 64 grid over the whole sphere.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Analytic)]
        method: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-dimensional slice of the 4D function; works for any operator.
    Plane4d {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalisation, represented trace, S² commutation and fibre checks.
    Check {
        #[command(flatten)]
        common: Common,
        /// Random points used by the fibre-invariance check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Numeric,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Largest `|[ρ, S²]|` accepted as commuting.
    pub commutator: f64,
    /// Allowed gap between the sphere integral and the represented trace.
    pub normalization: f64,
    /// Allowed relative change of `W` along a Hopf fibre.
    pub fiber: f64,
    /// Slack on `0 ≤ represented trace ≤ 1` for densities.
    pub trace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            commutator: S2_COMMUTATOR_TOLERANCE,
            normalization: 1e-8,
            fiber: 1e-8,
            trace: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn with_overrides(overrides: &[String]) -> Result<Self> {
        let mut t = Tolerances::default();
        for o in overrides {
            let (name, value) = o
                .split_once('=')
                .ok_or_else(|| Error::Validation(format!("tolerance override '{o}' must be name=value")))?;
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Validation(format!("tolerance '{value}' is not a number")))?;
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Validation(format!(
                    "tolerance {name} must be positive and finite"
                )));
            }
            match name.trim() {
                "commutator" => t.commutator = v,
                "normalization" => t.normalization = v,
                "fiber" => t.fiber = v,
                "trace" => t.trace = v,
                other => return Err(Error::Validation(format!("unknown tolerance '{other}'"))),
            }
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, Default)]
pub struct EvalOptions {
    pub tolerances: Tolerances,
    pub threads: Option<usize>,
}

/// Summary of a run, printed as JSON.
#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub command: String,
    pub state: String,
    pub represented_trace: f64,
    pub commutes_with_s2: bool,
    pub s2_residual: f64,
    /// Sphere integral of `𝕎_S`; `None` when it is undefined or skipped.
    pub normalization_check: Option<f64>,
    pub fiber_deviation: Option<f64>,
    pub method: Option<Method>,
    pub analytic_fallback: bool,
    pub max_discrepancy: Option<f64>,
    pub points: usize,
    pub notices: Vec<String>,
    pub passed: bool,
    pub timing_ms: f64,
}

/// Rows ready to be written, preceded by `#` header lines.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub columns: Vec<String>,
    /// Leading columns written as coordinates, the rest as values.
    pub coordinate_columns: usize,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// Deterministic text: coordinates in shortest round-trip form, values
    /// in shortest round-trip scientific notation.
    pub fn write_to(&self, w: &mut dyn Write) -> std::io::Result<()> {
        for h in &self.header {
            writeln!(w, "# {h}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                if i < self.coordinate_columns {
                    line.push_str(&format!("{v}"));
                } else {
                    line.push_str(&format!("{v:e}"));
                }
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

/// A table and the report describing it.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub table: Option<Table>,
    pub report: EvalReport,
}

/// A state specification taken all the way to its pushed oscillator operator.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub spec: StateSpec,
    pub operand: Operand,
    pub density: OscillatorDensity,
}

impl Prepared {
    pub fn from_spec(spec: StateSpec) -> Result<Self> {
        let operand = spec.build()?;
        let basis = decompose_angular_basis(operand.n())?;
        let omega = construct_omega(&basis)?;
        let density = operand.push(&omega)?;
        Ok(Prepared { spec, operand, density })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_spec(StateSpec::parse(&text)?)
    }

    fn hermitian(&self) -> bool {
        self.density.hermitian_residual() <= HERMITIAN_TOLERANCE
    }
}

fn base_report(command: &str, prepared: &Prepared, tol: &Tolerances) -> EvalReport {
    EvalReport {
        command: command.into(),
        state: prepared.spec.to_string(),
        represented_trace: prepared.density.represented_trace(),
        commutes_with_s2: prepared.density.commutes_with_s2(tol.commutator),
        s2_residual: prepared.density.s2_residual(),
        normalization_check: None,
        fiber_deviation: None,
        method: None,
        analytic_fallback: false,
        max_discrepancy: None,
        points: 0,
        notices: Vec::new(),
        passed: true,
        timing_ms: 0.0,
    }
}

/// Fills `normalization_check`, or explains why it was skipped.
fn attach_normalization(report: &mut EvalReport, prepared: &Prepared) -> Result<()> {
    if !report.commutes_with_s2 {
        report
            .notices
            .push("normalization skipped: the operator does not commute with S^2, so no sphere function exists".into());
        return Ok(());
    }
    if report.represented_trace.abs() <= TRACE_FLOOR && prepared.density.trace().norm() <= TRACE_FLOOR {
        report.notices.push(
            "normalization skipped: represented trace is 0; the state lies entirely in discarded k-shells".into(),
        );
        return Ok(());
    }
    let integral = sphere_integral_unchecked(&prepared.density, SphereResolution::default())?;
    report.normalization_check = Some(integral.re);
    Ok(())
}

fn build_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Error::Validation("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    builder
        .build()
        .map_err(|e| Error::Validation(format!("cannot start worker threads: {e}")))
}

/// Evaluates `f` at every point in parallel, keeping the input order.
fn evaluate<T, F>(points: &[T], threads: Option<usize>, f: F) -> Result<Vec<C64>>
where
    T: Sync,
    F: Fn(&T) -> C64 + Sync + Send,
{
    let pool = build_pool(threads)?;
    let values: Vec<C64> = pool.install(|| points.par_iter().map(&f).collect());
    if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Numeric(format!("non-finite value at grid point {i}")));
    }
    Ok(values)
}

/// Value columns for one series: the real part, plus the imaginary part for
/// non-Hermitian operators. Hermitian operators must come out real.
fn push_value(row: &mut Vec<f64>, v: C64, hermitian: bool) -> Result<()> {
    if hermitian {
        if v.im.abs() > IMAGINARY_TOLERANCE {
            return Err(Error::Numeric(format!(
                "imaginary residual {:.3e} for a Hermitian operator",
                v.im
            )));
        }
        row.push(v.re);
    } else {
        row.push(v.re);
        row.push(v.im);
    }
    Ok(())
}

fn value_columns(name: &str, hermitian: bool) -> Vec<String> {
    if hermitian {
        vec![name.to_string()]
    } else {
        vec![name.to_string(), format!("{name}_imag")]
    }
}

fn header(command: &str, prepared: &Prepared, grid: &GridSpec) -> Vec<String> {
    vec![
        format!("spin-wigner {VERSION}"),
        format!("command: {command}"),
        format!("state: {}", prepared.spec),
        format!("grid: {grid}"),
    ]
}

fn require_commuting(report: &EvalReport, prepared: &Prepared) -> Result<()> {
    if !report.commutes_with_s2 {
        return Err(Error::NotS2Commuting {
            residual: prepared.density.s2_residual(),
        });
    }
    Ok(())
}

/// `𝕎(x₁, x₂, x₃)` on a volume grid.
pub fn cmd_eval_volume(prepared: &Prepared, grid: &GridSpec, opts: &EvalOptions) -> Result<Evaluation> {
    let start = Instant::now();
    if grid.kind != GridKind::Volume {
        return Err(Error::Validation("volume evaluation needs a volume grid".into()));
    }
    let mut report = base_report("volume", prepared, &opts.tolerances);
    require_commuting(&report, prepared)?;
    let points = grid.points();
    let values = evaluate(&points, opts.threads, |p| {
        wigner_4d_complex(&prepared.density, hopf_section(PhasePoint3::new(p[0], p[1], p[2])))
    })?;
    let hermitian = prepared.hermitian();
    let mut columns: Vec<String> = grid.axes.iter().map(|a| a.name.clone()).collect();
    columns.extend(value_columns("value", hermitian));
    let mut rows = Vec::with_capacity(points.len());
    for (p, v) in points.iter().zip(values) {
        let mut row = p.clone();
        push_value(&mut row, v, hermitian)?;
        rows.push(row);
    }
    attach_normalization(&mut report, prepared)?;
    report.points = rows.len();
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let table = Table {
        header: header("volume", prepared, grid),
        columns,
        coordinate_columns: 3,
        rows,
    };
    Ok(Evaluation {
        table: Some(table),
        report,
    })
}

/// `𝕎_S(θ, φ)` on a sphere grid.
pub fn cmd_eval_sphere(prepared: &Prepared, grid: &GridSpec, method: Method, opts: &EvalOptions) -> Result<Evaluation> {
    let start = Instant::now();
    if grid.kind != GridKind::Sphere {
        return Err(Error::Validation("sphere evaluation needs a sphere grid".into()));
    }
    let mut report = base_report("sphere", prepared, &opts.tolerances);
    report.method = Some(method);
    require_commuting(&report, prepared)?;
    let points = grid
        .points()
        .iter()
        .map(|p| SphPoint::new(p[0], p[1]).map(|s| (p.clone(), s)))
        .collect::<Result<Vec<_>>>()?;
    let lm = LmDensity::from_oscillator(&prepared.density);
    let cross = lm.significant_cross_terms();
    let radial = RadialQuadrature::for_spins(prepared.density.n())?;
    let want_analytic = method != Method::Numeric;
    if want_analytic && !cross.is_empty() {
        report.analytic_fallback = true;
        report.notices.push(format!(
            "closed form does not cover {} cross-shell coherence term(s); values use radial quadrature",
            cross.len()
        ));
    }
    let use_analytic = want_analytic && cross.is_empty();
    let numeric = |s: &SphPoint| ws_numeric_unchecked(&prepared.density, *s, &radial);
    let primary = if use_analytic {
        evaluate(&points, opts.threads, |(_, s)| {
            ws_analytic_complex(&lm, *s).expect("cross-shell terms were checked")
        })?
    } else {
        evaluate(&points, opts.threads, |(_, s)| numeric(s))?
    };
    let secondary = if method == Method::Both {
        Some(evaluate(&points, opts.threads, |(_, s)| numeric(s))?)
    } else {
        None
    };

    let hermitian = prepared.hermitian();
    let mut columns = vec!["theta".to_string(), "phi".to_string()];
    columns.extend(value_columns("value", hermitian));
    if secondary.is_some() {
        columns.extend(value_columns("value_numeric", hermitian));
        columns.push("abs_diff".into());
    }
    let mut rows = Vec::with_capacity(points.len());
    let mut worst = 0.0_f64;
    for (i, (p, _)) in points.iter().enumerate() {
        let mut row = p.clone();
        push_value(&mut row, primary[i], hermitian)?;
        if let Some(sec) = &secondary {
            push_value(&mut row, sec[i], hermitian)?;
            let d = (primary[i] - sec[i]).norm();
            worst = worst.max(d);
            row.push(d);
        }
        rows.push(row);
    }
    if secondary.is_some() {
        report.max_discrepancy = Some(worst);
    }
    attach_normalization(&mut report, prepared)?;
    report.points = rows.len();
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut head = header("sphere", prepared, grid);
    head.push(format!("method: {}", method_name(method, report.analytic_fallback)));
    head.push(format!("radial-nodes: {}", radial.len()));
    let table = Table {
        header: head,
        columns,
        coordinate_columns: 2,
        rows,
    };
    Ok(Evaluation {
        table: Some(table),
        report,
    })
}

fn method_name(method: Method, fallback: bool) -> &'static str {
    match (method, fallback) {
        (Method::Analytic, false) => "analytic",
        (Method::Analytic, true) => "analytic (fell back to numeric)",
        (Method::Numeric, _) => "numeric",
        (Method::Both, false) => "both",
        (Method::Both, true) => "both (analytic fell back to numeric)",
    }
}

/// `W(q₁, p₁, q₂, p₂)` on a plane, the other two coordinates fixed.
pub fn cmd_eval_plane4d(prepared: &Prepared, grid: &GridSpec, opts: &EvalOptions) -> Result<Evaluation> {
    let start = Instant::now();
    if grid.kind != GridKind::Plane4d {
        return Err(Error::Validation("plane4d evaluation needs a plane4d grid".into()));
    }
    let mut report = base_report("plane4d", prepared, &opts.tolerances);
    let names = ["q1", "p1", "q2", "p2"];
    let slot = |n: &str| names.iter().position(|x| *x == n).expect("grid axes are validated");
    let mut template = [0.0; 4];
    for (n, v) in &grid.fixed {
        template[slot(n)] = *v;
    }
    let ranged: Vec<usize> = grid.axes.iter().map(|a| slot(&a.name)).collect();
    let points: Vec<PhasePoint4> = grid
        .points()
        .iter()
        .map(|p| {
            let mut c = template;
            for (k, &s) in ranged.iter().enumerate() {
                c[s] = p[k];
            }
            PhasePoint4::new(c[0], c[1], c[2], c[3])
        })
        .collect();
    let values = evaluate(&points, opts.threads, |pt| wigner_4d_complex(&prepared.density, *pt))?;
    let hermitian = prepared.hermitian();
    let mut columns: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    columns.extend(value_columns("value", hermitian));
    let mut rows = Vec::with_capacity(points.len());
    for (pt, v) in points.iter().zip(values) {
        let mut row = vec![pt.q1, pt.p1, pt.q2, pt.p2];
        push_value(&mut row, v, hermitian)?;
        rows.push(row);
    }
    if !report.commutes_with_s2 {
        report
            .notices
            .push("operator does not commute with S^2; only the 4D function is defined".into());
    }
    attach_normalization(&mut report, prepared)?;
    report.points = rows.len();
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let table = Table {
        header: header("plane4d", prepared, grid),
        columns,
        coordinate_columns: 4,
        rows,
    };
    Ok(Evaluation {
        table: Some(table),
        report,
    })
}

/// Consistency checks. `report.passed` is false when a check that applies
/// falls outside its tolerance.
pub fn cmd_check(prepared: &Prepared, samples: usize, opts: &EvalOptions) -> Result<EvalReport> {
    let start = Instant::now();
    let tol = &opts.tolerances;
    let mut report = base_report("check", prepared, tol);
    let rt = report.represented_trace;

    if prepared.operand.is_density() {
        if rt < -tol.trace || rt > 1.0 + tol.trace {
            report.passed = false;
            report.notices.push(format!("represented trace {rt} outside [0, 1]"));
        } else if rt < 1.0 - tol.trace {
            report.notices.push(format!(
                "only {rt} of the trace is represented; the rest lies in discarded k-shells"
            ));
        }
    }

    attach_normalization(&mut report, prepared)?;
    if let Some(norm) = report.normalization_check {
        let target = prepared.density.trace();
        let gap = (C64::new(norm, 0.0) - target)
            .norm()
            .min((C64::new(norm, 0.0) - target.re).norm());
        if gap > tol.normalization {
            report.passed = false;
            report.notices.push(format!(
                "sphere integral {norm} differs from the represented trace {} by {gap:.3e}",
                target.re
            ));
        }
    }

    let deviation = check_fiber_invariance(&prepared.density, samples);
    report.fiber_deviation = Some(deviation);
    if report.commutes_with_s2 {
        if deviation > tol.fiber {
            report.passed = false;
            report
                .notices
                .push(format!("W varies along Hopf fibres by {deviation:.3e}"));
        }
    } else {
        report.notices.push(format!(
            "operator does not commute with S^2 (residual {:.3e}); W varies along Hopf fibres by {deviation:.3e}",
            report.s2_residual
        ));
    }
    report.points = samples;
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn emit(eval: &Evaluation, out: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let json = serde_json::to_string_pretty(&eval.report).map_err(|e| Error::Numeric(e.to_string()))?;
    match (&eval.table, out) {
        (Some(table), Some(path)) => {
            let mut buf = Vec::new();
            table.write_to(&mut buf)?;
            std::fs::write(path, buf)?;
            writeln!(stdout, "{json}")?;
        }
        (Some(table), None) => {
            table.write_to(stdout)?;
            writeln!(stderr, "{json}")?;
        }
        (None, _) => writeln!(stdout, "{json}")?,
    }
    Ok(())
}

type Runner = dyn FnOnce(&Prepared, &EvalOptions) -> Result<(Evaluation, Option<PathBuf>)>;

/// Runs one command. Returns the report; check failures are reported
/// through `passed` rather than as an error.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<EvalReport> {
    let (common, run_one): (Common, Box<Runner>) = match cli.command {
        Command::Volume { common, grid, out } => (
            common,
            Box::new(move |p, o| {
                let g = GridSpec::parse(GridKind::Volume, &grid)?;
                Ok((cmd_eval_volume(p, &g, o)?, out))
            }),
        ),
        Command::Sphere {
            common,
            grid,
            method,
            out,
        } => (
            common,
            Box::new(move |p, o| {
                let g = match grid {
                    Some(text) => GridSpec::parse(GridKind::Sphere, &text)?,
                    None => GridSpec::full_sphere(32, 64)?,
                };
                Ok((cmd_eval_sphere(p, &g, method, o)?, out))
            }),
        ),
        Command::Plane4d { common, grid, out } => (
            common,
            Box::new(move |p, o| {
                let g = GridSpec::parse(GridKind::Plane4d, &grid)?;
                Ok((cmd_eval_plane4d(p, &g, o)?, out))
            }),
        ),
        Command::Check { common, samples } => (
            common,
            Box::new(move |p, o| {
                let report = cmd_check(p, samples, o)?;
                Ok((Evaluation { table: None, report }, None))
            }),
        ),
    };
    let opts = EvalOptions {
        tolerances: Tolerances::with_overrides(&common.tolerances)?,
        threads: common.threads,
    };
    let prepared = Prepared::from_file(&common.state)?;
    let (eval, out) = run_one(&prepared, &opts)?;
    emit(&eval, out.as_deref(), stdout, stderr)?;
    Ok(eval.report)
}

/// Parses `args` and runs, mapping the outcome to an exit status.
pub fn run_from_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 1;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match run(cli, stdout, stderr) {
        Ok(report) if report.passed => 0,
        Ok(_) => 2,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run_from_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code)
}
