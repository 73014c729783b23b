//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::Prime;
use crate::blocks::{block_decomposition, pim_report, x_set, BlockError, Level, DEFAULT_DIM_CAP};
use crate::eps::EpsVec;
use crate::expr::{self, ExprError};
use crate::idempotents::{Idempotents, TupleAJ};
use crate::verify::{run_verify, VerifyConfig, VerifyError, VerifySummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// The grid run by `verify --grid`.
pub const GRID: [(u64, u32); 6] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "sl2hyper", version, about = "Exact computations in the hyperalgebra of SL2 over F_p")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// The prime.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// The Frobenius level.
    #[arg(long, global = true, default_value_t = 1,
          value_parser = clap::value_parser!(u32).range(1..=16))]
    pub r: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Total degree bound of the polynomial action; defaults to 2p^r.
    #[arg(long, global = true)]
    pub oracle_degree: Option<u32>,
    /// Largest accepted p^(2r).
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_CAP)]
    pub dim_cap: u64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// `full` adds comparisons against products of the actual elements.
    #[arg(long, global = true, value_enum, default_value_t = Level::Quick)]
    pub level: Level,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an element expression and print its canonical form.
    Eval {
        expression: String,
    },
    /// Report every block of A_r.
    Blocks,
    /// Report the projective module generated by one basis element.
    Pim {
        /// Tuple of pairs, e.g. `0:0,1:2`.
        #[arg(long)]
        pairs: String,
        /// Bit string, first position first.
        #[arg(long)]
        eps: String,
    },
    /// Run the named verification checks.
    Verify {
        /// Run only this check.
        #[arg(long)]
        check: Option<String>,
        /// Run over the standard grid instead of a single point.
        #[arg(long)]
        grid: bool,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<BlockError> for Failure {
    fn from(e: BlockError) -> Self {
        let code = match e {
            BlockError::CapExceeded { .. } => EXIT_CAP,
            BlockError::Length { .. } | BlockError::NotInBlock { .. } | BlockError::Idempotent(_) => {
                EXIT_USAGE
            }
            _ => EXIT_CHECK_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        Failure::usage(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            message: e.to_string(),
        }
    }
}

impl RunConfig {
    fn prime(&self) -> Result<Prime, Failure> {
        let q = self.p.ok_or_else(|| Failure::usage("--p is required"))?;
        Prime::new(q).map_err(Failure::usage)
    }
}

#[derive(Serialize)]
struct EvalOutput {
    p: u32,
    r: u32,
    element: String,
    level: u32,
    in_u_r: bool,
    in_a_r: bool,
    in_u0_r: bool,
}

#[derive(Serialize)]
struct VerifyOutput {
    passed: bool,
    runs: Vec<VerifySummary>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn eval(cfg: &RunConfig, expression: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = cfg.prime()?;
    let engine = Idempotents::shared(p);
    let e = expr::evaluate(expression, &engine)?;
    let report = EvalOutput {
        p: p.get(),
        r: cfg.r,
        element: e.to_string(),
        level: e.level(),
        in_u_r: e.in_u_r(cfg.r),
        in_a_r: e.in_a_r(cfg.r),
        in_u0_r: e.in_u0_r(cfg.r),
    };
    match cfg.format {
        Format::Text => {
            let yn = |b: bool| if b { "yes" } else { "no" };
            writeln!(out, "{}", report.element)?;
            writeln!(
                out,
                "level {}  U_{r}: {}  A_{r}: {}  U_{r}^0: {}",
                report.level,
                yn(report.in_u_r),
                yn(report.in_a_r),
                yn(report.in_u0_r),
                r = cfg.r
            )?;
        }
        Format::Json => write!(out, "{}", json(&report))?,
        Format::Dot => return Err(Failure::usage("eval has no dot output")),
    }
    Ok(EXIT_OK)
}

fn blocks(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = cfg.prime()?;
    let d = block_decomposition(p, cfg.r, cfg.dim_cap, cfg.level)?;
    let text = match cfg.format {
        Format::Text => d.to_text(),
        Format::Json => json(&d),
        Format::Dot => d.to_dot(p),
    };
    out.write_all(text.as_bytes())?;
    Ok(if d.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn pim(cfg: &RunConfig, pairs: &str, eps: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = cfg.prime()?;
    let tuple = TupleAJ::parse(p, pairs).map_err(Failure::usage)?;
    if tuple.r() != cfg.r {
        return Err(Failure::usage(format!(
            "--pairs has {} pairs but --r is {}",
            tuple.r(),
            cfg.r
        )));
    }
    crate::blocks::check_cap(p, cfg.r, cfg.dim_cap)?;
    let eps: EpsVec = eps.parse().map_err(Failure::usage)?;
    let engine = Idempotents::shared(p);
    let detail = pim_report(&tuple, eps, &engine, cfg.level)?;
    let text = match cfg.format {
        Format::Text => detail.to_text(),
        Format::Json => json(&detail),
        Format::Dot => detail.to_dot(&x_set(&tuple)),
    };
    out.write_all(text.as_bytes())?;
    Ok(if detail.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn verify(
    cfg: &RunConfig,
    check: Option<&str>,
    grid: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let points: Vec<(Prime, u32)> = if grid {
        GRID.iter()
            .map(|&(q, r)| (Prime::new(q).expect("grid primes"), r))
            .collect()
    } else {
        vec![(cfg.prime()?, cfg.r)]
    };
    let mut runs = Vec::with_capacity(points.len());
    for (p, r) in points {
        let vc = VerifyConfig {
            p,
            r,
            level: cfg.level,
            seed: cfg.seed,
            oracle_degree: cfg.oracle_degree,
            dim_cap: cfg.dim_cap,
            only: check.map(str::to_string),
        };
        runs.push(run_verify(&vc).map_err(|e| match e {
            VerifyError::Cap(b) => Failure::from(b),
            other => Failure::usage(other),
        })?);
    }
    let passed = runs.iter().all(|s| s.passed);
    match cfg.format {
        Format::Text => {
            for s in &runs {
                out.write_all(s.to_text().as_bytes())?;
            }
        }
        Format::Json => write!(out, "{}", json(&VerifyOutput { passed, runs }))?,
        Format::Dot => return Err(Failure::usage("verify has no dot output")),
    }
    Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Runs the command line `args` and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let cfg = &cli.config;
    let result = match &cli.command {
        Command::Eval { expression } => eval(cfg, expression, out),
        Command::Blocks => blocks(cfg, out),
        Command::Pim { pairs, eps } => pim(cfg, pairs, eps, out),
        Command::Verify { check, grid } => verify(cfg, check.as_deref(), *grid, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
