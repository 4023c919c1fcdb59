use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghurwitz_cli::config::{parse_grid, parse_range};
use ghurwitz_cli::{env_threads, run, with_threads, CliError, Command, Mode, RunConfig, EXIT_INPUT};
use ghurwitz_core::spec::MatrixKind;

#[derive(Parser)]
#[command(
    name = "ghurwitz",
    version,
    about = "Structured matrices, total nonnegativity and stability checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy)]
enum Sub {
    /// Build a matrix window from series or matrix specs
    Build,
    /// Check a window for total nonnegativity up to an order
    CheckTnn,
    /// Check whether q/p is an S-function (inputs: p, then q)
    CheckS,
    /// Interlacing versus Hurwitz-type total nonnegativity suite
    Equivalence,
    /// Routh versus Hurwitz total nonnegativity suite
    QuasiStability,
    /// Zero-free sector suite for M-way splits
    Sector,
}

#[derive(ValueEnum, Clone, Copy)]
enum ModeArg {
    Exact,
    Approx,
}

#[derive(ValueEnum, Clone, Copy)]
enum KindArg {
    Toeplitz,
    HurwitzType,
    HurwitzOfF,
    Generalized,
}

#[derive(Args)]
struct Opts {
    /// Input JSON file (repeatable)
    #[arg(long, global = true)]
    input: Vec<String>,
    /// Row range a:b (inclusive)
    #[arg(long, global = true, allow_hyphen_values = true)]
    rows: Option<String>,
    /// Column range a:b (inclusive)
    #[arg(long, global = true, allow_hyphen_values = true)]
    cols: Option<String>,
    /// Largest minor order to check
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Split / generalized Hurwitz index
    #[arg(long = "M", global = true)]
    m: Option<usize>,
    /// A,B grid, e.g. "0,1/2,1,2"
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,
    /// Largest window side used when searching for a witness
    #[arg(long, global = true)]
    cap_window: Option<usize>,
    /// Number of generated instances per family
    #[arg(long, global = true)]
    count: Option<usize>,
    /// Matrix kind when the inputs are bare series
    #[arg(long, global = true, value_enum)]
    kind: Option<KindArg>,
    /// Row offset of the generalized Hurwitz matrix
    #[arg(long, global = true, allow_hyphen_values = true)]
    row_offset: Option<i64>,
    /// Terms kept from the 1/z side of infinite products
    #[arg(long, global = true)]
    exp_terms: Option<usize>,
}

fn config(command: Sub, o: &Opts) -> Result<RunConfig, CliError> {
    let command = match command {
        Sub::Build => Command::Build,
        Sub::CheckTnn => Command::CheckTnn,
        Sub::CheckS => Command::CheckS,
        Sub::Equivalence => Command::Equivalence,
        Sub::QuasiStability => Command::QuasiStability,
        Sub::Sector => Command::Sector,
    };
    let mut c = RunConfig::new(command);
    c.inputs = o.input.clone();
    c.rows = o.rows.as_deref().map(parse_range).transpose()?;
    c.cols = o.cols.as_deref().map(parse_range).transpose()?;
    if let Some(k) = o.order {
        if k == 0 {
            return Err(CliError::input("--order must be at least 1"));
        }
        c.max_order = k;
    }
    if let Some(m) = o.mode {
        c.mode = match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Approx => Mode::Approx,
        };
    }
    c.tol = o.tol.unwrap_or(c.tol);
    c.samples = o.samples.unwrap_or(c.samples);
    c.seed = o.seed.unwrap_or(c.seed);
    c.m = o.m.unwrap_or(c.m);
    if let Some(g) = &o.grid {
        c.grid = parse_grid(g)?;
    }
    c.cap_window = o.cap_window.unwrap_or(c.cap_window);
    c.count = o.count.unwrap_or(c.count);
    c.kind = o.kind.map(|k| match k {
        KindArg::Toeplitz => MatrixKind::Toeplitz,
        KindArg::HurwitzType => MatrixKind::HurwitzType,
        KindArg::HurwitzOfF => MatrixKind::HurwitzOfF,
        KindArg::Generalized => MatrixKind::Generalized,
    });
    c.row_offset = o.row_offset;
    c.exp_terms = o.exp_terms.unwrap_or(c.exp_terms);
    Ok(c)
}

fn main_inner(cli: &Cli) -> Result<i32, CliError> {
    let cfg = config(cli.command, &cli.opts)?;
    let threads = env_threads()?;
    let out = with_threads(threads, || run(&cfg))?;
    let text = out.to_pretty() + "\n";
    match &cli.opts.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::input(format!("{path}: {e}")))?,
        None => print!("{text}"),
    }
    Ok(out.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = main_inner(&cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.code
    });
    ExitCode::from(u8::try_from(code).unwrap_or(EXIT_INPUT as u8))
}
