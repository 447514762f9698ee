//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::figures::{figure_curves, CurveKind};
use crate::analysis::sweep::{oracle_check, DEFAULT_ORACLE_FRACTION};
use crate::analysis::{
    optimize, run_sweep, Grid, MetricSelection, OptimaReport, OptimizeFor, Point, QRule, SweepParam,
    SweepRow, SweepSpec, DEFAULT_STRENGTH_POINTS, STRENGTH_MAX,
};
use crate::error::Error;
use crate::metrics::{evaluate, Scenario};
use crate::output::{format_number, write_optima, write_sweep, SWEEP_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "unruh-teleport",
    version,
    about = "Teleportation through an Unruh channel with partial measurement protection",
    allow_negative_numbers = true
)]
pub struct Cli {
    /// Read vartheta, r, theta and phi (and angle grids) in degrees.
    #[arg(long, global = true)]
    pub deg: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every metric at one parameter point.
    Point(PointArgs),
    /// Sweep one parameter over a grid and emit CSV.
    Sweep(SweepArgs),
    /// Write the CSV files behind one figure.
    Figure(FigureArgs),
    /// Compare the analytic optimal p or q with a grid scan.
    Optimal(OptimalArgs),
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub vartheta: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, default_value = "single")]
    pub scenario: Scenario,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Print a CSV header and row instead of labeled text.
    #[arg(long)]
    pub csv: bool,
    /// Also write the CSV row to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cross-check the closed forms against the simulated pipeline.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "single")]
    pub scenario: Scenario,
    /// Parameter to sweep: vartheta, p, q, r, theta or phi.
    #[arg(long = "sweep")]
    pub swept: SweepParam,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Tie q to q_s(p, r) at every point.
    #[arg(long)]
    pub q_special: bool,
    /// Comma-separated metric columns to fill, or `all`.
    #[arg(long, default_value = "all")]
    pub metrics: MetricSelection,
    #[arg(long, default_value_t = DEFAULT_ORACLE_FRACTION)]
    pub oracle_fraction: f64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Figure number, 3 to 13.
    pub id: u32,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ORACLE_FRACTION)]
    pub oracle_fraction: f64,
}

#[derive(Debug, Args)]
pub struct OptimalArgs {
    #[arg(long = "for")]
    pub target: OptimizeFor,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Defaults to pi/2.
    #[arg(long)]
    pub vartheta: Option<f64>,
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = DEFAULT_STRENGTH_POINTS)]
    pub points: usize,
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Model(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Model(Error::OracleMismatch { .. }) => EXIT_ORACLE,
            CliError::Model(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn angle(v: f64, deg: bool) -> f64 {
    if deg {
        v.to_radians()
    } else {
        v
    }
}

fn required(name: &str, v: Option<f64>) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Usage(format!("missing required parameter --{name}")))
}

impl ParamArgs {
    fn value(&self, param: SweepParam) -> Option<f64> {
        match param {
            SweepParam::Vartheta => self.vartheta,
            SweepParam::P => self.p,
            SweepParam::Q => self.q,
            SweepParam::R => self.r,
            SweepParam::Theta => self.theta,
            SweepParam::Phi => self.phi,
        }
    }

    /// Builds a point, using `fill` for parameters the caller will set itself.
    fn point(&self, deg: bool, fill: &[SweepParam]) -> CliResult<Point> {
        let mut pt = Point {
            vartheta: 0.0,
            p: 0.0,
            q: 0.0,
            r: 0.0,
            theta: 0.0,
            phi: 0.0,
        };
        for param in SweepParam::ALL {
            let given = self.value(param);
            let v = if fill.contains(&param) {
                if given.is_some() {
                    return Err(CliError::Usage(format!(
                        "--{} conflicts with the sweep and cannot be given",
                        param.name()
                    )));
                }
                continue;
            } else {
                required(param.name(), given)?
            };
            let v = if param.is_angle() { angle(v, deg) } else { v };
            pt = pt.with(param, v);
        }
        Ok(pt)
    }
}

/// Parses `args` (including the program name) and executes the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Point(a) => cmd_point(a, cli.deg, stdout),
        Command::Sweep(a) => cmd_sweep(a, cli.deg, stdout),
        Command::Figure(a) => cmd_figure(a, stdout),
        Command::Optimal(a) => cmd_optimal(a, cli.deg, stdout),
    }
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))
}

pub fn cmd_point(a: &PointArgs, deg: bool, stdout: &mut dyn Write) -> CliResult<()> {
    let pt = a.params.point(deg, &[])?;
    let params = pt.channel()?;
    let input = pt.input()?;
    let metrics = evaluate(a.scenario, &params, &input)?;
    if a.oracle {
        oracle_check(a.scenario, &pt, &params, &input, &metrics)?;
    }
    let rows = [SweepRow {
        scenario: a.scenario,
        point: pt,
        metrics,
    }];
    let all = MetricSelection::all();
    if a.csv {
        write_sweep(&mut *stdout, &rows, &all)?;
    } else {
        let values = [
            pt.vartheta,
            pt.p,
            pt.q,
            pt.r,
            pt.theta,
            pt.phi,
        ]
        .map(Some)
        .into_iter()
        .chain(all.mask(&metrics));
        writeln!(stdout, "{:<12} {}", SWEEP_HEADER[0], a.scenario)?;
        for (name, v) in SWEEP_HEADER[1..].iter().zip(values) {
            let text = v.map(format_number).unwrap_or_else(|| "-".into());
            writeln!(stdout, "{name:<12} {text}")?;
        }
    }
    if let Some(path) = &a.out {
        let mut f = create(path)?;
        write_sweep(&mut f, &rows, &all)?;
        f.flush()?;
    }
    Ok(())
}

pub fn cmd_sweep(a: &SweepArgs, deg: bool, stdout: &mut dyn Write) -> CliResult<()> {
    let mut fill = vec![a.swept];
    if a.q_special {
        if a.swept == SweepParam::Q {
            return Err(CliError::Usage("--q-special cannot be combined with --sweep q".into()));
        }
        fill.push(SweepParam::Q);
    }
    let base = a.params.point(deg, &fill)?;
    let (from, to) = if a.swept.is_angle() {
        (angle(a.from, deg), angle(a.to, deg))
    } else {
        (a.from, a.to)
    };
    let spec = SweepSpec::new(a.scenario, base, a.swept, Grid::new(from, to, a.points)?)
        .with_q_rule(if a.q_special { QRule::Special } else { QRule::Fixed })
        .with_metrics(a.metrics)
        .with_oracle_fraction(a.oracle_fraction);
    let rows = run_sweep(&spec)?;
    match &a.out {
        Some(path) => {
            let mut f = create(path)?;
            write_sweep(&mut f, &rows, &spec.metrics)?;
            f.flush()?;
        }
        None => write_sweep(&mut *stdout, &rows, &spec.metrics)?,
    }
    Ok(())
}

pub fn cmd_figure(a: &FigureArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let curves = figure_curves(a.id)?;
    fs::create_dir_all(&a.out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", a.out_dir.display())))?;
    for curve in curves {
        let path = a.out_dir.join(curve.file_name(a.id));
        let mut f = create(&path)?;
        match &curve.kind {
            CurveKind::Sweep(spec) => {
                let spec = spec.clone().with_oracle_fraction(a.oracle_fraction);
                write_sweep(&mut f, &run_sweep(&spec)?, &spec.metrics)?;
            }
            CurveKind::Optima(opt) => write_optima(&mut f, &opt.run()?)?,
        }
        f.flush()?;
        writeln!(stdout, "{}", path.display())?;
    }
    Ok(())
}

pub fn cmd_optimal(a: &OptimalArgs, deg: bool, stdout: &mut dyn Write) -> CliResult<()> {
    let fixed = match a.target {
        OptimizeFor::P => {
            if a.p.is_some() {
                return Err(CliError::Usage("--p conflicts with --for p".into()));
            }
            required("q", a.q)?
        }
        OptimizeFor::Q => {
            if a.q.is_some() {
                return Err(CliError::Usage("--q conflicts with --for q".into()));
            }
            required("p", a.p)?
        }
    };
    let vartheta = a.vartheta.map_or(std::f64::consts::FRAC_PI_2, |v| angle(v, deg));
    let r = angle(a.r, deg);
    let report = optimize(a.target, fixed, vartheta, r, Grid::new(0.0, STRENGTH_MAX, a.points)?)?;
    if a.csv {
        write_optima(&mut *stdout, &[report])?;
    } else {
        print_report(&report, stdout)?;
    }
    if let Some(path) = &a.out {
        let mut f = create(path)?;
        write_optima(&mut f, &[report])?;
        f.flush()?;
    }
    Ok(())
}

fn print_report(rep: &OptimaReport, w: &mut dyn Write) -> io::Result<()> {
    let (name, fixed_name) = match rep.target {
        OptimizeFor::P => ("p_opt", "q"),
        OptimizeFor::Q => ("q_opt", "p"),
    };
    writeln!(w, "{:<12} {}", "vartheta", format_number(rep.vartheta))?;
    writeln!(w, "{:<12} {}", fixed_name, format_number(rep.fixed))?;
    writeln!(w, "{:<12} {}", "r", format_number(rep.r))?;
    writeln!(w, "{:<12} {}", name, format_number(rep.analytic.value))?;
    writeln!(w, "{:<12} {}", "in_range", rep.analytic.in_range)?;
    writeln!(w, "{:<12} {}", "q_s", format_number(rep.q_s))?;
    writeln!(w, "{:<12} {}", "grid_argmax", format_number(rep.grid_argmax))?;
    writeln!(w, "{:<12} {}", "grid_max", format_number(rep.grid_max))?;
    writeln!(w, "{:<12} {}", "grid_step", format_number(rep.grid_spacing))?;
    writeln!(w, "{:<12} {}", "gap", format_number(rep.gap))?;
    Ok(())
}
