use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use surgery_triangle_core::cycles::{solve_coefficients, verify_main_theorem, CoeffOption, VerificationReport};
use surgery_triangle_core::diagram::{DiagramError, SlopeParams};
use surgery_triangle_core::knotfloer::{builtin_knot, specialize, KnotComplex, KnotError};
use surgery_triangle_core::homalg::homology;

use crate::knotfile::{read_knot, KnotFileError};
use crate::report::{HfkReport, KernelReport, SweepReport, VerifyReport, ZData};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "surgery-triangle", version, about = "Local certificates and HFK for genus-1 rational surgery triangles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basepoint counts, special triangles and the zig-zag.
    Zdata {
        #[command(flatten)]
        slope: Slope,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the kernels and run every check for one slope, or for a sweep.
    Verify {
        #[command(flatten)]
        slope: OptSlope,
        /// Verify every coprime (p, q) with p + q <= BOUND and every k.
        #[arg(long, value_name = "BOUND", conflicts_with_all = ["p", "q", "k"])]
        sweep: Option<usize>,
        #[arg(long, value_enum, default_value_t = OptionArg::UnitU)]
        option: OptionArg,
        #[arg(long, env = "SURGERY_TRIANGLE_JOBS")]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Kernel generators of F and F* and the derived coefficients.
    Kernel {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = OptionArg::UnitU)]
        option: OptionArg,
        #[command(flatten)]
        common: Common,
    },
    /// Graded HFK- of a knot complex twisted by E_{p,q,k}.
    Hfk {
        /// Built-in complex: unknot or rh_trefoil.
        #[arg(long, required_unless_present = "file", conflicts_with = "file")]
        knot: Option<String>,
        /// JSON knot complex document.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        slope: Slope,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep summary over p + q <= BOUND.
    Sweep {
        #[arg(long, default_value_t = 20)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = OptionArg::UnitU)]
        option: OptionArg,
        #[arg(long, env = "SURGERY_TRIANGLE_JOBS")]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
pub struct Slope {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct OptSlope {
    #[arg(long, required_unless_present = "sweep")]
    pub p: Option<usize>,
    #[arg(long, required_unless_present = "sweep")]
    pub q: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Truncation order N of F2[[U]].
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(16..=4096))]
    pub trunc: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OptionArg {
    UnitU,
    UnitW,
}

impl From<OptionArg> for CoeffOption {
    fn from(o: OptionArg) -> Self {
        match o {
            OptionArg::UnitU => CoeffOption::UnitU,
            OptionArg::UnitW => CoeffOption::UnitW,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    KnotFile(#[from] KnotFileError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("{0}")]
    Compute(String),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

/// What a run prints and returns.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn render<T: Serialize>(value: &T, text: impl FnOnce(&T) -> String, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text(value),
    }
}

fn sweep_reports(bound: usize, n: usize, option: CoeffOption, jobs: Option<usize>) -> Result<Vec<VerificationReport>, CliError> {
    let params = SlopeParams::sweep(bound);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Compute(e.to_string()))?;
    // par_iter().collect() keeps input order, which is (p+q, p, k)
    Ok(pool.install(|| params.par_iter().map(|p| verify_main_theorem(p, n, option)).collect()))
}

fn load_knot(knot: Option<&str>, file: Option<&PathBuf>) -> Result<(String, KnotComplex), CliError> {
    match (knot, file) {
        (_, Some(path)) => Ok((path.display().to_string(), read_knot(path)?)),
        (Some(name), None) => Ok((name.to_string(), builtin_knot(name)?)),
        (None, None) => Err(CliError::Compute("one of --knot or --file is required".into())),
    }
}

/// Runs a parsed command; `Ok((code, report))`.
pub fn execute(cmd: &Command) -> Result<(u8, String), CliError> {
    match cmd {
        Command::Zdata { slope, common } => {
            let params = SlopeParams::new(slope.p, slope.q, slope.k)?;
            let r = ZData::new(&params, common.trunc as usize);
            Ok((EXIT_OK, render(&r, ZData::text, common.format)))
        }
        Command::Verify { slope, sweep, option, jobs, common } => {
            let n = common.trunc as usize;
            let option = CoeffOption::from(*option);
            if let Some(bound) = sweep {
                let r = SweepReport::new(*bound, n, option, &sweep_reports(*bound, n, option, *jobs)?);
                let code = if r.passed() { EXIT_OK } else { EXIT_FAILED };
                return Ok((code, render(&r, SweepReport::text, common.format)));
            }
            let (p, q) = (slope.p.expect("required"), slope.q.expect("required"));
            let params = SlopeParams::new(p, q, slope.k.unwrap_or(0))?;
            let report = verify_main_theorem(&params, n, option);
            let r = VerifyReport::new(&report, true);
            let code = if r.passed { EXIT_OK } else { EXIT_FAILED };
            Ok((code, render(&r, VerifyReport::text, common.format)))
        }
        Command::Kernel { p, q, option, common } => {
            SlopeParams::new(*p, *q, 0)?;
            let c = solve_coefficients(*p, *q, common.trunc as usize, (*option).into())
                .map_err(|e| CliError::Compute(e.to_string()))?;
            Ok((EXIT_OK, render(&KernelReport::new(&c), KernelReport::text, common.format)))
        }
        Command::Hfk { knot, file, slope, common } => {
            let params = SlopeParams::new(slope.p, slope.q, slope.k)?;
            let (name, complex) = load_knot(knot.as_deref(), file.as_ref())?;
            let n = common.trunc as usize;
            let twisted = specialize(&complex, &params, n)?;
            let h = homology(&twisted.complex).map_err(|e| CliError::Compute(e.to_string()))?;
            let r = HfkReport::new(&name, &params, n, twisted.canonical, &h);
            Ok((EXIT_OK, render(&r, HfkReport::text, common.format)))
        }
        Command::Sweep { bound, option, jobs, common } => {
            let n = common.trunc as usize;
            let option = CoeffOption::from(*option);
            let r = SweepReport::new(*bound, n, option, &sweep_reports(*bound, n, option, *jobs)?);
            let code = if r.passed() { EXIT_OK } else { EXIT_FAILED };
            Ok((code, render(&r, SweepReport::text, common.format)))
        }
    }
}

fn out_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Zdata { common, .. }
        | Command::Verify { common, .. }
        | Command::Kernel { common, .. }
        | Command::Hfk { common, .. }
        | Command::Sweep { common, .. } => common.out.as_ref(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let msg = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: msg }
            } else {
                Outcome { code, stdout: msg, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok((code, body)) => match out_path(&cli.command) {
            Some(path) => match std::fs::write(path, &body) {
                Ok(()) => Outcome { code, ..Outcome::default() },
                Err(source) => {
                    let e = CliError::Write { path: path.display().to_string(), source };
                    Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") }
                }
            },
            None => Outcome { code, stdout: body, stderr: String::new() },
        },
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
