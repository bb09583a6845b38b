//! Command-line front end: `solve | sweep | field | validate`.
//!
//! Exit codes: 0 success, 1 validation failure, 2 configuration or I/O
//! error.

pub mod config;
pub mod field;
pub mod sweep;
pub mod validate;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channel::{Placement, RadioParams};
use crate::closed_form::{self, SolveReport};
use crate::geometry::Room;
use crate::solver::{self, NumericResult, SolverConfig, SolverError};

pub use config::{ConfigError, OutputFormat, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("validation failed: {0}")]
    ValidationFailure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ValidationFailure(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "wpt-placement",
    version,
    about = "Optimal transmit-antenna placement for near-field WPT"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form optimum for one room (numeric for N_t != 2).
    Solve {
        #[command(flatten)]
        common: CommonArgs,
        /// Also run the grid oracle and QT solver and report deviations.
        #[arg(long)]
        validate: bool,
    },
    /// Dimensionless closed-form curves over L_y/L_x for several L_z'/L_x.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1.0)]
        ry_max: f64,
        #[arg(long, default_value_t = 400)]
        ry_steps: usize,
        /// L_z'/L_x series; defaults to 0, √5/8, √5/4, 3√5/8, √5/2.
        #[arg(long, value_delimiter = ',')]
        rz: Option<Vec<f64>>,
    },
    /// Received power over a room grid.
    Field {
        #[command(flatten)]
        common: CommonArgs,
        /// Grid points along x,y,z.
        #[arg(long, value_delimiter = ',', default_value = "21,21,21")]
        grid: Vec<usize>,
    },
    /// Closed form vs grid oracle vs QT over a geometry sweep.
    Validate {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Flat TOML config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub lx: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub ly: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z0: Option<f64>,
    /// Total transmit power P in watts.
    #[arg(long, allow_hyphen_values = true)]
    pub power: Option<f64>,
    /// Channel power gain c at 1 m.
    #[arg(long, allow_hyphen_values = true)]
    pub ref_gain: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub wavelength: Option<f64>,
    #[arg(long)]
    pub nt: Option<usize>,
    /// Use the pair (a1, -a1) instead of the optimum.
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

impl CommonArgs {
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(base.merge(RunConfig {
            lx: self.lx,
            ly: self.ly,
            lz: self.lz,
            z0: self.z0,
            power: self.power,
            ref_gain: self.ref_gain,
            wavelength: self.wavelength,
            nt: self.nt,
            a1: self.a1,
            out: self.out.clone(),
            format: self.format,
            ..RunConfig::default()
        }))
    }
}

/// Numeric solution summary for the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericSummary {
    pub solver: String,
    pub positions: Placement,
    pub objective: f64,
    pub gamma_watts: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl NumericSummary {
    fn new(solver: &str, r: &NumericResult, params: &RadioParams) -> Self {
        NumericSummary {
            solver: solver.to_string(),
            positions: r.positions.clone(),
            objective: r.objective,
            gamma_watts: params.power_scale() * r.objective,
            iterations: r.iterations,
            converged: r.converged,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveValidation {
    pub oracle_a1: f64,
    pub qt_a1: f64,
    pub oracle_da1_over_lx: f64,
    pub qt_da1_over_lx: f64,
    pub objective_gap: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutput {
    pub n_t: usize,
    pub room: Room,
    pub radio: RadioParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<SolveReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<SolveValidation>,
}

pub const SOLVE_HEADER: [&str; 8] = [
    "n_t",
    "positions",
    "regime",
    "objective",
    "gamma_watts",
    "eta",
    "rho",
    "converged",
];

impl SolveOutput {
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(w);
        wr.write_record(SOLVE_HEADER)?;
        let rho = self.room.signature().rho.to_string();
        let join = |p: &[f64]| p.iter().map(f64::to_string).collect::<Vec<_>>().join(";");
        let record = match (&self.closed_form, &self.numeric) {
            (Some(cf), _) => [
                self.n_t.to_string(),
                join(cf.placement().positions()),
                cf.regime.to_string(),
                (cf.gamma_star / self.radio.power_scale()).to_string(),
                cf.gamma_star.to_string(),
                cf.eta.to_string(),
                rho,
                "true".to_string(),
            ],
            (None, Some(n)) => [
                self.n_t.to_string(),
                join(n.positions.positions()),
                String::new(),
                n.objective.to_string(),
                n.gamma_watts.to_string(),
                String::new(),
                rho,
                n.converged.to_string(),
            ],
            (None, None) => unreachable!("solve output always carries a solution"),
        };
        wr.write_record(record)?;
        wr.flush()?;
        Ok(())
    }
}

pub fn run_solve(cfg: &RunConfig, validate: bool) -> Result<SolveOutput, CliError> {
    let room = cfg.room()?;
    let radio = cfg.radio()?;
    let n_t = cfg.n_t()?;
    let solver_cfg = cfg.solver()?;
    let mut out = SolveOutput {
        n_t,
        room,
        radio,
        closed_form: None,
        numeric: None,
        validation: None,
    };
    match n_t {
        2 => {
            let report = closed_form::solve(&room, &radio);
            if validate {
                let qt = solver::qt_solve(&room, 2, &solver_cfg)?;
                let case =
                    validate::check_room(&room, &solver_cfg, validate::ClosedFormModel::default())?;
                out.validation = Some(SolveValidation {
                    oracle_a1: case.a1_oracle,
                    qt_a1: case.a1_qt,
                    oracle_da1_over_lx: case.oracle_da1_over_lx,
                    qt_da1_over_lx: case.qt_da1_over_lx,
                    objective_gap: case.objective_gap,
                    passed: case.passed,
                });
                out.numeric = Some(NumericSummary::new("qt", &qt, &radio));
            }
            out.closed_form = Some(report);
        }
        1 => {
            let r = solver::oracle_grid_solve(&room, 1, &solver_cfg)?;
            out.numeric = Some(NumericSummary::new("oracle", &r, &radio));
        }
        n => {
            let r = solver::qt_solve(&room, n, &solver_cfg)?;
            out.numeric = Some(NumericSummary::new("qt", &r, &radio));
        }
    }
    Ok(out)
}

pub fn run_sweep(
    rz: Option<&[f64]>,
    ry_max: f64,
    ry_steps: usize,
) -> Result<sweep::SweepTable, CliError> {
    if !(ry_max.is_finite() && ry_max > 0.0) {
        return Err(ConfigError::invalid("ry-max", format!("must be > 0, got {ry_max}")).into());
    }
    if ry_steps == 0 {
        return Err(ConfigError::invalid("ry-steps", "must be >= 1").into());
    }
    let default_rz = sweep::reference_rz_series();
    let rz = rz.unwrap_or(&default_rz);
    sweep::SweepTable::compute(&sweep::SweepSpec { ry_max, ry_steps }, rz)
        .map_err(|e| ConfigError::invalid("rz", e).into())
}

/// Placement for field maps: `(a1, -a1)` when `a1` is given, otherwise the
/// closed-form optimum (two antennas) or the numeric one.
pub fn field_placement(cfg: &RunConfig, room: &Room) -> Result<Placement, CliError> {
    if let Some(a1) = cfg.a1 {
        return Placement::symmetric_pair(room, a1)
            .map_err(|e| ConfigError::invalid("a1", e).into());
    }
    let n_t = cfg.n_t()?;
    Ok(match n_t {
        1 => Placement::new(room, vec![0.0]).expect("centre is inside the room"),
        2 => closed_form::solve(room, &cfg.radio()?).placement(),
        n => solver::qt_solve(room, n, &cfg.solver()?)?.positions,
    })
}

pub fn run_field(cfg: &RunConfig, grid: &[usize]) -> Result<field::FieldMap, CliError> {
    let room = cfg.room()?;
    let radio = cfg.radio()?;
    let grid: [usize; 3] = grid
        .try_into()
        .map_err(|_| ConfigError::invalid("grid", format!("expected nx,ny,nz, got {grid:?}")))?;
    if grid.iter().any(|&n| n < 2) {
        return Err(ConfigError::invalid("grid", "need >= 2 points per axis").into());
    }
    let placement = field_placement(cfg, &room)?;
    Ok(field::FieldMap::compute(&room, &placement, &radio, grid))
}

pub fn run_validate(solver_cfg: &SolverConfig) -> Result<validate::ValidationReport, CliError> {
    Ok(validate::validate(
        &validate::default_rooms(),
        solver_cfg,
        validate::ClosedFormModel::default(),
    )?)
}

/// `ValidationFailure` echoing the first failing geometry, if any.
pub fn report_outcome(report: &validate::ValidationReport) -> Result<(), CliError> {
    match report.failures().next() {
        Some(bad) => Err(CliError::ValidationFailure(format!(
            "L_x={} L_y={} L_z={} z0={} (rho={}): a1 closed={} oracle={} qt={}",
            bad.lx, bad.ly, bad.lz, bad.z0, bad.rho, bad.a1_closed, bad.a1_oracle, bad.a1_qt
        ))),
        None => Ok(()),
    }
}

fn open_out(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn io_err(path: Option<&Path>) -> impl Fn(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("<stdout>")),
        source,
    }
}

fn csv_err(path: Option<&Path>) -> impl Fn(csv::Error) -> CliError + '_ {
    move |e| io_err(path)(io::Error::other(e))
}

/// Writes `emit` to `--out` or stdout.
fn emit_to<F>(path: Option<&Path>, emit: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match path {
        Some(p) => {
            let mut w = open_out(p)?;
            emit(&mut w)?;
            w.flush().map_err(io_err(path))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(&mut lock)?;
            lock.flush().map_err(io_err(path))
        }
    }
}

fn write_json<T: Serialize>(
    w: &mut dyn Write,
    value: &T,
    path: Option<&Path>,
) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(|e| io_err(path)(e.into()))?;
    writeln!(w).map_err(io_err(path))
}

/// Runs one parsed command.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { common, validate } => {
            let cfg = common.resolve()?;
            let out = run_solve(&cfg, validate)?;
            let path = cfg.out.as_deref();
            match cfg.format(OutputFormat::Json) {
                OutputFormat::Json => emit_to(path, |w| write_json(w, &out, path))?,
                OutputFormat::Csv => emit_to(path, |w| out.write_csv(w).map_err(csv_err(path)))?,
            }
            if let Some(v) = &out.validation {
                eprintln!(
                    "oracle |da1|/Lx={:.3e} qt |da1|/Lx={:.3e} objective gap={:.3e} => {}",
                    v.oracle_da1_over_lx,
                    v.qt_da1_over_lx,
                    v.objective_gap,
                    if v.passed { "PASS" } else { "FAIL" }
                );
                if !v.passed {
                    return Err(CliError::ValidationFailure(format!(
                        "closed form and numeric solvers disagree for {:?}",
                        out.room
                    )));
                }
            }
            Ok(())
        }
        Command::Sweep {
            common,
            ry_max,
            ry_steps,
            rz,
        } => {
            let cfg = common.resolve()?;
            let table = run_sweep(rz.as_deref(), ry_max, ry_steps)?;
            let path = cfg.out.as_deref();
            match cfg.format(OutputFormat::Csv) {
                OutputFormat::Csv => emit_to(path, |w| table.write_csv(w).map_err(csv_err(path))),
                OutputFormat::Json => emit_to(path, |w| write_json(w, &table, path)),
            }
        }
        Command::Field { common, grid } => {
            let cfg = common.resolve()?;
            let map = run_field(&cfg, &grid)?;
            let path = cfg.out.as_deref();
            match cfg.format(OutputFormat::Csv) {
                OutputFormat::Csv => emit_to(path, |w| map.write_csv(w).map_err(io_err(path)))?,
                OutputFormat::Json => emit_to(path, |w| write_json(w, &map, path))?,
            }
            if path.is_some() {
                println!("{}", map.summary_line());
            }
            Ok(())
        }
        Command::Validate { common } => {
            let cfg = common.resolve()?;
            let report = run_validate(&cfg.solver()?)?;
            let path = cfg.out.as_deref();
            if path.is_some() {
                emit_to(path, |w| write_json(w, &report, path))?;
            }
            println!("{}", report.summary());
            report_outcome(&report)
        }
    }
}

/// Parses `args` and runs, mapping errors to exit codes.
pub fn run_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn main() -> ExitCode {
    run_from(std::env::args_os())
}
