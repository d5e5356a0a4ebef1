//! `minlength`: corrections to hydrogen ns levels under a minimal-length
//! deformation, the Lamb-shift bound on the minimal length, oracle checks and
//! raw special-function values.
//!
//! Exit codes: 0 success, 1 I/O or runtime failure, 2 usage or domain error,
//! 3 a check failed.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minlength_core::hydrogen::{SLevel, MAX_N};
use minlength_core::minlength::{
    bound_denominator, discrepancy, sweep, EtaXi, LambShiftDataset, PhysicalConstants, ETA_MAX,
    ETA_MIN,
};
use minlength_core::perturbation::{
    correction_literal, correction_ns, correction_quadrature, DeformationParams,
};
use minlength_core::specfun::{bessel_y0_derivative, bessel_y_signed, struve_h};
use minlength_core::Error;

use output::{Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "minlength",
    version,
    about = "Minimal-length corrections to hydrogen ns levels"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Significant digits in numeric output.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(6..=17))]
    precision: u8,

    /// Physical constants file (keys bohr_radius_m, coulomb_unit_hz).
    #[arg(long, global = true, value_name = "FILE")]
    constants: Option<PathBuf>,

    /// Lamb-shift dataset file; the bundled dataset is used otherwise.
    #[arg(long, global = true, value_name = "FILE")]
    dataset: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// First-order shift of the ns level, term by term.
    Correction(CorrectionArgs),
    /// Upper bound on the minimal length over η ∈ [1/3, 1].
    Sweep {
        /// Number of grid points, endpoints included.
        #[arg(long, default_value_t = 1000)]
        points: usize,
    },
    /// Closed-form corrections against quadrature over a parameter grid.
    OracleCheck(OracleArgs),
    /// Evaluate a special function.
    Specfun {
        #[arg(value_enum)]
        function: SpecFunction,
        #[arg(long, allow_negative_numbers = true)]
        order: i64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
}

#[derive(Debug, Args)]
struct CorrectionArgs {
    /// Principal quantum number.
    #[arg(long)]
    n: u32,
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    xi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta_prime_t: Option<f64>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Level range `lo..hi` (inclusive) or a single level.
    #[arg(long, default_value = "1..5")]
    n: String,
    /// β̃ values, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1e-8, 1e-6])]
    beta: Vec<f64>,
    /// η values, comma separated; β̃′ = β̃(1 − η)/η.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0 / 3.0, 0.5, 1.0])]
    eta: Vec<f64>,
    /// Relative tolerance per cell.
    #[arg(long, default_value_t = 1e-4, allow_negative_numbers = true)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpecFunction {
    BesselY,
    StruveH,
    Y0Deriv,
}

enum Failure {
    Usage(String),
    Runtime(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Runtime(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Check(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Runtime(m) | Failure::Check(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Domain(_) | Error::Unsupported(_) => Failure::Usage(err.to_string()),
            _ => Failure::Runtime(err.to_string()),
        }
    }
}

struct Context {
    format: Format,
    precision: usize,
    constants: PhysicalConstants,
    dataset: Option<PathBuf>,
}

impl Context {
    fn dataset(&self) -> Result<LambShiftDataset, Failure> {
        match &self.dataset {
            Some(path) => Ok(LambShiftDataset::from_file(path)?),
            None => Ok(LambShiftDataset::bundled()),
        }
    }

    fn render(&self, table: &Table, single: bool) -> String {
        table.render(self.format, self.precision, single)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    assert!(bound_denominator(1.0) > 0.0);

    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(err) = stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
            {
                if err.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: writing output: {err}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err((text, failure)) => {
            if let Some(text) = text {
                print!("{text}");
            }
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

/// On failure, any partial report that should still be printed comes back
/// alongside the error.
fn run(cli: Cli) -> Result<String, (Option<String>, Failure)> {
    let constants = match &cli.constants {
        Some(path) => PhysicalConstants::from_file(path).map_err(|e| (None, e.into()))?,
        None => PhysicalConstants::default(),
    };
    let ctx = Context {
        format: cli.format,
        precision: cli.precision as usize,
        constants,
        dataset: cli.dataset,
    };
    match cli.command {
        Command::Correction(args) => cmd_correction(&ctx, &args).map_err(|e| (None, e)),
        Command::Sweep { points } => cmd_sweep(&ctx, points).map_err(|e| (None, e)),
        Command::OracleCheck(args) => cmd_oracle_check(&ctx, &args),
        Command::Specfun { function, order, x } => {
            cmd_specfun(&ctx, function, order, x).map_err(|e| (None, e))
        }
    }
}

fn level(n: u32) -> Result<SLevel, Failure> {
    Ok(SLevel::new(n)?)
}

fn correction_params(args: &CorrectionArgs) -> Result<DeformationParams, Failure> {
    let eta_xi = args.eta.is_some() || args.xi.is_some();
    let beta = args.beta_t.is_some() || args.beta_prime_t.is_some();
    match (eta_xi, beta) {
        (true, true) => Err(Failure::Usage(
            "give either --eta/--xi or --beta-t/--beta-prime-t, not both".into(),
        )),
        (false, false) => Err(Failure::Usage(
            "deformation parameters required: --eta and --xi, or --beta-t and --beta-prime-t"
                .into(),
        )),
        (true, false) => match (args.eta, args.xi) {
            (Some(eta), Some(xi)) => Ok(EtaXi::new(eta, xi)?.to_params()?),
            _ => Err(Failure::Usage(
                "--eta and --xi must be given together".into(),
            )),
        },
        (false, true) => match (args.beta_t, args.beta_prime_t) {
            (Some(b), Some(bp)) => Ok(DeformationParams::new(b, bp)?),
            _ => Err(Failure::Usage(
                "--beta-t and --beta-prime-t must be given together".into(),
            )),
        },
    }
}

fn cmd_correction(ctx: &Context, args: &CorrectionArgs) -> Result<String, Failure> {
    let params = correction_params(args)?;
    let level = level(args.n)?;
    let c = correction_ns(level, &params);
    let mut table = Table::new(vec![
        "n",
        "beta_t",
        "beta_prime_t",
        "p4_term",
        "anticommutator_term",
        "softcore_term",
        "log_term",
        "total",
        "total_khz",
    ]);
    table.push(vec![
        Cell::Int(args.n as i64),
        Cell::Num(params.beta_t()),
        Cell::Num(params.beta_prime_t()),
        Cell::Num(c.p4_term),
        Cell::Num(c.anticommutator_term),
        Cell::Num(c.softcore_term),
        Cell::Num(c.log_term),
        Cell::Num(c.total),
        Cell::Num(ctx.constants.ceu_to_khz(c.total)),
    ]);
    Ok(ctx.render(&table, true))
}

fn cmd_sweep(ctx: &Context, points: usize) -> Result<String, Failure> {
    let data = ctx.dataset()?;
    let budget = discrepancy(&data);
    if budget.vacuous {
        eprintln!(
            "warning: theory exceeds experiment by {} kHz; the bound is vacuous and rows use a zero budget",
            output::format_sig(-budget.value_khz, ctx.precision)
        );
    }
    let rows = sweep(&data, &ctx.constants, points)?;
    let columns = match ctx.format {
        Format::Csv => vec!["eta", "xi", "delta_x_min_m"],
        Format::Json => vec!["eta", "xi", "delta_x_min_m", "vacuous"],
    };
    let mut table = Table::new(columns);
    for row in rows {
        let mut cells = vec![
            Cell::Num(row.eta),
            Cell::Num(row.xi),
            Cell::Num(row.delta_x_min_m),
        ];
        if ctx.format == Format::Json {
            cells.push(Cell::Bool(row.vacuous));
        }
        table.push(cells);
    }
    Ok(ctx.render(&table, false))
}

fn parse_level_range(text: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Usage(format!("invalid level range '{text}', expected e.g. 1..5"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            (
                lo.trim().parse().map_err(|_| bad())?,
                hi.trim().parse().map_err(|_| bad())?,
            )
        }
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo < 1 || hi > MAX_N || lo > hi {
        return Err(Failure::Usage(format!(
            "level range {lo}..{hi} must lie within 1..{MAX_N}"
        )));
    }
    Ok((lo, hi))
}

fn relative(value: f64, reference: f64) -> f64 {
    if value == reference {
        0.0
    } else {
        ((value - reference) / reference).abs()
    }
}

fn cmd_oracle_check(ctx: &Context, args: &OracleArgs) -> Result<String, (Option<String>, Failure)> {
    let usage = |m: String| (None, Failure::Usage(m));
    if !(args.tol > 0.0) {
        return Err(usage(format!(
            "tolerance must be positive, got {}",
            args.tol
        )));
    }
    let (lo, hi) = parse_level_range(&args.n).map_err(|e| (None, e))?;
    let mut cells = Vec::new();
    for &beta in &args.beta {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(usage(format!("β̃ must be positive, got {beta}")));
        }
        for &eta in &args.eta {
            if !(ETA_MIN..=ETA_MAX).contains(&eta) {
                return Err(usage(format!("η = {eta} outside [1/3, 1]")));
            }
            let params = DeformationParams::new(beta, beta * (1.0 - eta) / eta)
                .map_err(|e| (None, e.into()))?;
            cells.push((beta, eta, params));
        }
    }

    let mut table = Table::new(vec![
        "n",
        "beta_t",
        "eta",
        "closed_form",
        "quadrature",
        "rel_dev",
        "literal",
        "literal_rel_dev",
        "pass",
    ]);
    let mut failed = 0;
    let mut total = 0;
    for &(beta, eta, params) in &cells {
        for n in lo..=hi {
            let level = level(n).map_err(|e| (None, e))?;
            let closed = correction_ns(level, &params).total;
            let quad = correction_quadrature(level, &params)
                .map_err(|e| (None, e.into()))?
                .total;
            let literal = correction_literal(level, &params);
            let dev = relative(closed, quad);
            let pass = dev <= args.tol;
            total += 1;
            if !pass {
                failed += 1;
            }
            table.push(vec![
                Cell::Int(n as i64),
                Cell::Num(beta),
                Cell::Num(eta),
                Cell::Num(closed),
                Cell::Num(quad),
                Cell::Num(dev),
                Cell::Num(literal),
                Cell::Num(relative(literal, quad)),
                Cell::Bool(pass),
            ]);
        }
    }
    let text = ctx.render(&table, false);
    if failed > 0 {
        return Err((
            Some(text),
            Failure::Check(format!(
                "{failed} of {total} cells outside relative tolerance {:e}",
                args.tol
            )),
        ));
    }
    eprintln!("all {total} cells within relative tolerance {:e}", args.tol);
    Ok(text)
}

fn cmd_specfun(
    ctx: &Context,
    function: SpecFunction,
    order: i64,
    x: f64,
) -> Result<String, Failure> {
    let unsigned = |what: &str| {
        u32::try_from(order).map_err(|_| {
            Failure::Usage(format!(
                "{what} order must be a non-negative integer, got {order}"
            ))
        })
    };
    let (name, value) = match function {
        SpecFunction::BesselY => ("bessel-y", bessel_y_signed(order, x)?),
        SpecFunction::StruveH => ("struve-h", struve_h(unsigned("Struve")?, x)?),
        SpecFunction::Y0Deriv => (
            "y0-deriv",
            bessel_y0_derivative(unsigned("derivative")?, x)?,
        ),
    };
    let mut table = Table::new(vec!["function", "order", "x", "value"]);
    table.push(vec![
        Cell::Text(name.into()),
        Cell::Int(order),
        Cell::Num(x),
        Cell::Num(value),
    ]);
    Ok(ctx.render(&table, true))
}
