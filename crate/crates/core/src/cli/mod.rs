//! Command-line front end. Records go to stdout (JSON lines or CSV),
//! diagnostics to stderr.
//!
//! Exit status: 0 success, 1 parameter error, 2 internal consistency
//! failure, 3 when `hunt` finds pairs violating `deg D ≠ 0 ⇔ h | h⁻`.

pub mod record;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arith::odd_primes_in;
use crate::error::{Error, Result};
use crate::hminus::{
    exact_hminus, hminus_valuation_capped, irregular_index, DEFAULT_PRECISION_CAP,
};
use crate::scanner::{
    hunt_each, ingest_reference_ranks, scan_each, HRange, OracleMode, RankTable, RootMode,
    ScanConfig,
};
use crate::stickelberger::{
    all_primitive_roots, build_p, build_q, smallest_primitive_root, verify_identity, PowerTable,
    Predictor,
};
use record::{
    dee_record, hminus_record, hunt_summary_record, render_csv, scan_record, valuation_record,
    OutputRecord, Value,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAMETER: i32 = 1;
pub const EXIT_CONSISTENCY: i32 = 2;
pub const EXIT_VIOLATIONS: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cyclorank",
    version,
    about = "Stickelberger-polynomial rank predictor and relative class number oracles for Q(ζ_p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleArg {
    Exact,
    Valuation,
    None,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RootsArg {
    Smallest,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HModeArg {
    #[value(name = "p-squared")]
    PSquared,
}

#[derive(Debug, Args)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    p_min: u64,
    #[arg(long)]
    p_max: u64,
    /// Largest odd prime h to test.
    #[arg(long, conflicts_with = "h_mode")]
    h_max: Option<u64>,
    /// `p-squared`: all odd primes h < p².
    #[arg(long, value_enum)]
    h_mode: Option<HModeArg>,
    #[arg(long, value_enum)]
    oracle: Option<OracleArg>,
    #[arg(long, value_enum, default_value = "smallest")]
    roots: RootsArg,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reference rank file (`p,h,rank`); a missing file means no comparison.
    #[arg(long)]
    ranks: Option<PathBuf>,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print P(X) and Q(X) for p and a primitive root v.
    Poly {
        #[arg(long)]
        p: u64,
        /// Primitive root; defaults to the smallest.
        #[arg(long)]
        v: Option<u64>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Compute D(X) over F_h with its factorization.
    Dee {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        v: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Exact relative class number from the Maillet determinant.
    Hminus {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// h-adic valuation of h⁻ for h ≠ p.
    Valuation {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u64,
        #[arg(long, default_value_t = DEFAULT_PRECISION_CAP)]
        cap: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Bernoulli irregularity index of p.
    Irregular {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check P(X)(X - v) = pQ(X) + v(X^{p-1} - 1) over a range of primes.
    VerifyIdentity {
        #[arg(long, default_value_t = 3)]
        p_min: u64,
        #[arg(long)]
        p_max: u64,
        #[arg(long, value_enum, default_value = "smallest")]
        roots: RootsArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Sweep (p, h) pairs and compare deg D with the h⁻ oracle.
    Scan(ScanArgs),
    /// Scan and report biconditional violations, rank mismatches and
    /// repeated factors.
    Hunt(ScanArgs),
}

/// Buffers records so CSV can share one header; JSON streams line by line.
struct Emitter<'a> {
    format: Format,
    out: &'a mut dyn Write,
    pending: Vec<OutputRecord>,
}

impl<'a> Emitter<'a> {
    fn new(format: Format, out: &'a mut dyn Write) -> Self {
        Emitter {
            format,
            out,
            pending: Vec::new(),
        }
    }

    fn emit(&mut self, r: OutputRecord) -> Result<()> {
        match self.format {
            Format::Json => {
                writeln!(self.out, "{}", r.to_json_line())?;
                self.out.flush()?;
            }
            Format::Csv => self.pending.push(r),
        }
        Ok(())
    }

    /// Ends a CSV block; a following block is separated by a blank line.
    fn finish_block(&mut self, more: bool) -> Result<()> {
        if self.format == Format::Csv && !self.pending.is_empty() {
            write!(self.out, "{}", render_csv(&self.pending)?)?;
            if more {
                writeln!(self.out)?;
            }
            self.pending.clear();
        }
        self.out.flush()?;
        Ok(())
    }
}

fn root_or_smallest(p: u64, v: Option<u64>) -> Result<u64> {
    match v {
        Some(v) => Ok(v),
        None => smallest_primitive_root(p),
    }
}

fn scan_config(a: &ScanArgs, default_oracle: OracleMode) -> Result<ScanConfig> {
    let h_range = match (a.h_max, a.h_mode) {
        (Some(h), None) => HRange::Max(h),
        (None, Some(HModeArg::PSquared)) => HRange::PSquared,
        _ => {
            return Err(Error::param(
                "exactly one of --h-max or --h-mode is required",
            ))
        }
    };
    let oracle = match a.oracle {
        None => default_oracle,
        Some(OracleArg::Exact) => OracleMode::Exact,
        Some(OracleArg::Valuation) => OracleMode::Valuation,
        Some(OracleArg::None) => OracleMode::None,
    };
    let config = ScanConfig {
        p_min: a.p_min,
        p_max: a.p_max,
        h_range,
        oracle,
        roots: match a.roots {
            RootsArg::Smallest => RootMode::Smallest,
            RootsArg::All => RootMode::All,
        },
        threads: a.threads,
        seed: a.seed,
        ..ScanConfig::default()
    };
    config.validate()?;
    Ok(config)
}

fn load_ranks(path: &Option<PathBuf>) -> Result<RankTable> {
    match path {
        Some(p) => ingest_reference_ranks(p),
        None => Ok(RankTable::new()),
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Poly { p, v, format } => {
            let v = root_or_smallest(p, v)?;
            let table = PowerTable::new(p, v)?;
            let q = build_q(&table)?;
            let to_list = |f: &crate::intpoly::IntPoly| {
                Value::List(f.coeffs().iter().map(|c| Value::Int(c.clone())).collect())
            };
            let mut em = Emitter::new(format.format, out);
            em.emit(
                OutputRecord::new()
                    .with("p", p)
                    .with("v", v)
                    .with("P", to_list(&build_p(&table)))
                    .with("Q", to_list(&q))
                    .with("identity", verify_identity(&table)),
            )?;
            em.finish_block(false)?;
            Ok(EXIT_OK)
        }
        Command::Dee {
            p,
            h,
            v,
            seed,
            format,
        } => {
            let v = root_or_smallest(p, v)?;
            let d = Predictor::new(p, v)?.dee(h, seed)?;
            let mut em = Emitter::new(format.format, out);
            em.emit(dee_record(&d))?;
            em.finish_block(false)?;
            Ok(EXIT_OK)
        }
        Command::Hminus { p, format } => {
            let r = exact_hminus(p)?;
            let mut em = Emitter::new(format.format, out);
            em.emit(hminus_record(&r))?;
            em.finish_block(false)?;
            Ok(EXIT_OK)
        }
        Command::Valuation { p, h, cap, format } => {
            let r = hminus_valuation_capped(p, h, cap)?;
            let mut em = Emitter::new(format.format, out);
            em.emit(valuation_record(&r))?;
            em.finish_block(false)?;
            Ok(EXIT_OK)
        }
        Command::Irregular { p, format } => {
            let k = irregular_index(p)?;
            let mut em = Emitter::new(format.format, out);
            em.emit(
                OutputRecord::new()
                    .with("p", p)
                    .with("irregular_index", k)
                    .with("regular", k == 0),
            )?;
            em.finish_block(false)?;
            Ok(EXIT_OK)
        }
        Command::VerifyIdentity {
            p_min,
            p_max,
            roots,
            format,
        } => {
            if p_min > p_max {
                return Err(Error::param(format!("empty p range [{p_min}, {p_max}]")));
            }
            let mut em = Emitter::new(format.format, out);
            let mut failures = 0;
            for p in odd_primes_in(p_min, p_max) {
                let vs = match roots {
                    RootsArg::Smallest => vec![smallest_primitive_root(p)?],
                    RootsArg::All => all_primitive_roots(p)?,
                };
                for v in vs {
                    let ok = verify_identity(&PowerTable::new(p, v)?);
                    if !ok {
                        failures += 1;
                    }
                    em.emit(
                        OutputRecord::new()
                            .with("p", p)
                            .with("v", v)
                            .with("identity", if ok { "ok" } else { "fail" }),
                    )?;
                }
            }
            em.finish_block(false)?;
            if failures > 0 {
                writeln!(err, "identity failed for {failures} table(s)")?;
                return Ok(EXIT_CONSISTENCY);
            }
            Ok(EXIT_OK)
        }
        Command::Scan(args) => {
            let config = scan_config(&args, OracleMode::Exact)?;
            let ranks = load_ranks(&args.ranks)?;
            let mut em = Emitter::new(args.format.format, out);
            let totals = scan_each(&config, &ranks, |r| em.emit(scan_record(r)))?;
            em.finish_block(false)?;
            writeln!(
                err,
                "records={} consistent={} inconsistent={} skipped={}",
                totals.records, totals.consistent, totals.inconsistent, totals.skipped
            )?;
            Ok(EXIT_OK)
        }
        Command::Hunt(args) => {
            let config = scan_config(&args, OracleMode::Valuation)?;
            let ranks = load_ranks(&args.ranks)?;
            let mut em = Emitter::new(args.format.format, out);
            let report = hunt_each(&config, &ranks, |r| em.emit(scan_record(r)))?;
            em.finish_block(true)?;
            em.emit(hunt_summary_record(&report))?;
            em.finish_block(false)?;
            writeln!(
                err,
                "violations={} rank_mismatches={} repeated_factor_pairs={}",
                report.violations.len(),
                report.rank_mismatches.len(),
                report.multiplicity_flags.len()
            )?;
            Ok(if report.violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_VIOLATIONS
            })
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_PARAMETER,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Consistency(_) => EXIT_CONSISTENCY,
                _ => EXIT_PARAMETER,
            }
        }
    }
}
