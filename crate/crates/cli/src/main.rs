//! `hardy`: exact Hardy and Dedekind sums, Weyl-sum sweeps, residue censuses
//! and the verification suites.
//!
//! Exit codes: 0 success, 1 an invariant failed, 2 usage or domain error,
//! 3 a work budget ran out.

mod config;
mod output;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::Config;
use hardy_core::equidist::{default_checkpoints, distribution_table, weyl_sum_variant, Variant};
use hardy_core::sums::{dedekind_sum, hardy_s, hardy_s4};
use hardy_core::RationalParam;
use output::{csv_writer, float, sink, Format};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

pub const THREADS_ENV: &str = "HARDY_THREADS";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<hardy_core::Error> for CliError {
    fn from(e: hardy_core::Error) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("output error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("output error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("output error: {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(name = "hardy", version, about = "Hardy sums, Weyl sums and theta-multiplier checks")]
struct Cli {
    /// Worker threads; overrides the config file and HARDY_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Flat `key = value` file with defaults for any long flag of the command.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact value of one sum.
    Sum(SumArgs),
    /// Partial Weyl sums W(N; n, j/m) as CSV or JSON.
    Weyl(WeylArgs),
    /// Residue counts of S or S4 modulo m, optionally crossed with d/c bins.
    Dist(DistArgs),
    /// Run a verification suite and print one JSON object per check.
    Verify(verify::VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SumKind {
    #[value(name = "dedekind")]
    Dedekind,
    #[value(name = "S")]
    S,
    #[value(name = "S4")]
    S4,
}

#[derive(Args, Debug)]
struct SumArgs {
    which: SumKind,
    #[arg(allow_negative_numbers = true)]
    d: i64,
    #[arg(allow_negative_numbers = true)]
    c: i64,
}

#[derive(Args, Debug)]
struct WeylArgs {
    #[arg(long = "N")]
    big_n: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long)]
    j: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    /// Comma-separated ascending N values; N itself is always appended.
    #[arg(long)]
    checkpoints: Option<String>,
    #[arg(long)]
    variant: Option<Variant>,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[arg(long = "N")]
    big_n: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    variant: Option<Variant>,
    /// Number of equal d/c bins; emits the joint table instead of the marginal.
    #[arg(long)]
    bins: Option<u64>,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn required<T>(value: Option<T>, key: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{key} (flag or config key)")))
}

fn configure_threads(flag: Option<usize>, cfg: &Config) -> Result<(), CliError> {
    let threads = match cfg.resolve(flag, "threads")? {
        Some(t) => Some(t),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(
                v.parse::<usize>()
                    .map_err(|e| CliError::Usage(format!("{THREADS_ENV}={v:?}: {e}")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Usage("thread count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn cmd_sum(args: &SumArgs) -> Result<(), CliError> {
    let (d, c) = (args.d, args.c);
    let mut out = std::io::stdout().lock();
    let value = match args.which {
        SumKind::Dedekind => {
            let s = dedekind_sum(d, c)?;
            writeln!(out, "s({d},{c}) = {s}")?;
            return Ok(writeln!(out, "6c*s = {}; c {}", s * (6 * c), parity(c))?);
        }
        SumKind::S => {
            let v = hardy_s(d, c)?;
            writeln!(out, "S({d},{c}) = {v}")?;
            v
        }
        SumKind::S4 => {
            let v = hardy_s4(d, c)?;
            writeln!(out, "S4({d},{c}) = {v}")?;
            v
        }
    };
    writeln!(out, "c {}; value {}", parity(c), parity(value))?;
    Ok(())
}

fn parity(x: i64) -> &'static str {
    if x.rem_euclid(2) == 0 {
        "even"
    } else {
        "odd"
    }
}

fn parse_checkpoints(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| CliError::Usage(format!("checkpoint {t:?}: {e}")))
        })
        .collect()
}

fn cmd_weyl(args: WeylArgs, cfg: &Config) -> Result<(), CliError> {
    let big_n = required(cfg.resolve(args.big_n, "N")?, "N")?;
    let n = cfg.resolve_or(args.n, "n", 0)?;
    let j = required(cfg.resolve(args.j, "j")?, "j")?;
    let m = required(cfg.resolve(args.m, "m")?, "m")?;
    if m < 2 || j < 1 || j >= m {
        return Err(CliError::Usage(format!("need 1 <= j < m, got j = {j}, m = {m}")));
    }
    let variant = cfg.resolve_or(args.variant, "variant", Variant::S)?;
    let format = cfg.resolve_or(args.format, "format", Format::Csv)?;
    let output: Option<PathBuf> = cfg.resolve(args.output, "output")?;
    let checkpoints = match cfg.resolve::<String>(args.checkpoints, "checkpoints")? {
        Some(text) => parse_checkpoints(&text)?,
        None => default_checkpoints(big_n),
    };
    let series = weyl_sum_variant(big_n, n, RationalParam::new(j, m), variant, &checkpoints)?;
    let mut out = sink(output.as_deref())?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&series)?)?,
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["N", "re", "im", "abs", "phi_theta", "ratio"])?;
            for k in 0..series.checkpoints.len() {
                let z = series.partials[k];
                w.write_record([
                    series.checkpoints[k].to_string(),
                    float(z.re),
                    float(z.im),
                    float(z.norm()),
                    series.counts[k].to_string(),
                    float(series.normalized[k]),
                ])?;
            }
            w.flush()?;
            return Ok(());
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_dist(args: DistArgs, cfg: &Config) -> Result<(), CliError> {
    let big_n = required(cfg.resolve(args.big_n, "N")?, "N")?;
    let m = required(cfg.resolve(args.m, "m")?, "m")?;
    let variant = cfg.resolve_or(args.variant, "variant", Variant::S)?;
    let bins: Option<u64> = cfg.resolve(args.bins, "bins")?;
    let format = cfg.resolve_or(args.format, "format", Format::Csv)?;
    let output: Option<PathBuf> = cfg.resolve(args.output, "output")?;
    let table = distribution_table(big_n, m, variant, bins.unwrap_or(1))?;
    let mut out = sink(output.as_deref())?;
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string(&table)?)?;
        out.flush()?;
        return Ok(());
    }
    let residues = (0..m).map(|k| format!("residue_{k}"));
    let mut w = csv_writer(out);
    match bins {
        None => {
            w.write_record(residues)?;
            w.write_record(table.counts.iter().map(u64::to_string))?;
        }
        Some(b) => {
            w.write_record(["bin".to_string(), "lo".into(), "hi".into()].into_iter().chain(residues))?;
            for (i, row) in table.joint.iter().enumerate() {
                let lo = RationalParam::new(i as i64, b as i64);
                let hi = RationalParam::new(i as i64 + 1, b as i64);
                w.write_record(
                    [i.to_string(), lo.to_string(), hi.to_string()]
                        .into_iter()
                        .chain(row.iter().map(u64::to_string)),
                )?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    configure_threads(cli.threads, &cfg)?;
    let result = match cli.command {
        Command::Sum(args) => cmd_sum(&args),
        Command::Weyl(args) => cmd_weyl(args, &cfg),
        Command::Dist(args) => cmd_dist(args, &cfg),
        Command::Verify(args) => verify::run(args, &cfg),
    };
    for key in cfg.unused_keys() {
        eprintln!("warning: config key {key:?} is not used by this command");
    }
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) => format!("error: {m}"),
                CliError::Math(m) => format!("verification failed: {m}"),
                CliError::Budget(m) => format!("budget exhausted: {m}"),
            };
            eprintln!("{msg}");
            ExitCode::from(e.code())
        }
    }
}
