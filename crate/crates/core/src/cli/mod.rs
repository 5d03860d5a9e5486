//! Command-line front end: `construct`, `verify` and `scan`.
//!
//! Exit codes: 0 on success, 1 when a fixture or a consistency check fails,
//! 2 on usage, parse and cap errors.

pub mod parse;
pub mod scan;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{certify, Certificate};
use crate::code::{analytic_code, oracle_codebook, CodeKind, CodeReport, CodeSpec, DEFAULT_ORACLE_CAP};
use crate::error::{Error, Result};

pub use parse::{parse_ideals, parse_poset};

/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_VAR: &str = "POSETCODES_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(name = "posetcodes", version, about = "Binary linear codes from order ideals of posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one code and certify it.
    Construct(ConstructArgs),
    /// Run the regression fixtures.
    Verify(VerifyArgs),
    /// Sweep one- and two-ideal families of hierarchical posets.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "f", alias = "F")]
    F,
}

impl From<KindArg> for CodeKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::D => CodeKind::D,
            KindArg::F => CodeKind::F,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanKindArg {
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "f", alias = "F")]
    F,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    Griesmer,
    Minimal,
    AbViolating,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// `hier:m,n`, `antichain:n` or `n=4; cover=1<2,3<4`.
    #[arg(long)]
    pub poset: String,
    /// `;`-separated generator lists, each closed downward.
    #[arg(long)]
    pub ideals: String,
    #[arg(long, value_enum, default_value = "D")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Enumerate every codeword: cross-check the distribution and decide minimality.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Count discrepancies as failures.
    #[arg(long)]
    pub strict: bool,
    /// Run a single fixture.
    #[arg(long)]
    pub only: Option<String>,
    /// Largest ground set in the sweeps.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "both")]
    pub kind: ScanKindArg,
    /// Keep rows satisfying every listed predicate.
    #[arg(long, value_enum)]
    pub filter: Vec<FilterArg>,
    /// Cross-check every row against enumeration.
    #[arg(long)]
    pub oracle: bool,
    /// Largest `n` whose rows carry an exhaustive minimality verdict.
    #[arg(long, default_value_t = scan::MINIMALITY_CAP)]
    pub minimality_n_max: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// The oracle cap, from the environment when set.
pub fn oracle_cap() -> Result<usize> {
    match std::env::var(ORACLE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{ORACLE_CAP_VAR}={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

#[derive(Debug)]
enum Failure {
    Usage(Error),
    Check(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(msg) => Failure::Check(msg),
            other => Failure::Usage(other),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    let result = match &cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Scan(a) => run_scan(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[derive(Serialize)]
struct ConstructOutput<'a> {
    poset: &'a str,
    ideals: String,
    kind: CodeKind,
    parameters: String,
    #[serde(flatten)]
    report: &'a CodeReport,
    enumerator: String,
    oracle_checked: bool,
    certificate: &'a Certificate,
}

fn construct(args: &ConstructArgs, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let poset = parse_poset(&args.poset)?;
    let family = parse_ideals(&poset, &args.ideals)?;
    let ideals = family.to_string();
    let spec = CodeSpec::new(poset, family, args.kind.into())?;
    let report = analytic_code(&spec)?;
    let book = if args.oracle {
        let book = oracle_codebook(&spec, oracle_cap()?)?;
        let oracle = book.report()?;
        if !oracle.same_code(&report) {
            return Err(Failure::Check(format!(
                "analytic {report} {} differs from oracle {oracle} {}",
                report.distribution.enumerator(),
                oracle.distribution.enumerator()
            )));
        }
        Some(book)
    } else {
        None
    };
    let cert = certify(&report, book.as_ref())?;
    let output = ConstructOutput {
        poset: &args.poset,
        ideals,
        kind: spec.kind(),
        parameters: report.to_string(),
        report: &report,
        enumerator: report.distribution.enumerator(),
        oracle_checked: args.oracle,
        certificate: &cert,
    };
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &output)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let io = |e: csv::Error| Failure::Io(std::io::Error::other(e));
            w.write_record([
                "length",
                "k",
                "d",
                "w_max",
                "enumerator",
                "is_griesmer",
                "griesmer_optimal",
                "griesmer_almost_optimal",
                "ab_ratio",
                "ab_sufficient",
                "minimal",
            ])
            .map_err(io)?;
            let flag = |v: Option<bool>| v.map_or(String::new(), |x| x.to_string());
            w.write_record([
                report.length.to_string(),
                report.dimension.to_string(),
                report.w_min.to_string(),
                report.w_max.to_string(),
                output.enumerator.clone(),
                cert.is_griesmer.to_string(),
                cert.griesmer_distance_optimal.to_string(),
                cert.griesmer_almost_optimal.to_string(),
                cert.ab_ratio.to_string(),
                cert.ab_sufficient.to_string(),
                flag(cert.minimal_exhaustive),
            ])
            .map_err(io)?;
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{report}")?;
            writeln!(out, "{}", output.enumerator)?;
            writeln!(out, "poset {}, ideals {}, C_{}", args.poset, output.ideals, spec.kind())?;
            writeln!(out, "griesmer sum at d: {}", cert.griesmer_sum_at_d)?;
            writeln!(out, "griesmer code: {}", cert.is_griesmer)?;
            writeln!(out, "distance-optimal: {}", cert.griesmer_distance_optimal)?;
            writeln!(out, "almost optimal: {}", cert.griesmer_almost_optimal)?;
            writeln!(
                out,
                "w_min/w_max: {} (ratio test {})",
                cert.ab_ratio,
                if cert.ab_sufficient { "passes" } else { "fails" }
            )?;
            match (cert.minimal_exhaustive, cert.witness) {
                (None, _) => writeln!(out, "minimal: not checked (use --oracle)")?,
                (Some(true), _) => writeln!(out, "minimal: true")?,
                (Some(false), Some(w)) => writeln!(
                    out,
                    "minimal: false (message {} covers message {}, weights {} and {})",
                    w.message_a, w.message_b, w.weight_a, w.weight_b
                )?,
                (Some(false), None) => writeln!(out, "minimal: false")?,
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    passed: bool,
    strict: bool,
    fixtures: &'a [verify::FixtureOutcome],
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let config = verify::VerifyConfig {
        n_max: args.n_max,
        oracle_cap: oracle_cap()?,
    };
    let outcomes = verify::run_fixtures(&config, args.only.as_deref())?;
    let failed = outcomes.iter().any(|o| !o.passed);
    let discrepancies: usize = outcomes.iter().map(|o| o.discrepancies.len()).sum();
    let passed = !failed && !(args.strict && discrepancies > 0);
    match args.format {
        Format::Json => {
            let output = VerifyOutput {
                passed,
                strict: args.strict,
                fixtures: &outcomes,
            };
            serde_json::to_writer_pretty(&mut *out, &output)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let io = |e: csv::Error| Failure::Io(std::io::Error::other(e));
            w.write_record(["fixture", "status", "checks", "failures", "discrepancies"])
                .map_err(io)?;
            for o in &outcomes {
                w.write_record([
                    o.name.to_string(),
                    if o.passed { "pass" } else { "fail" }.to_string(),
                    o.checks.to_string(),
                    o.failure_count.to_string(),
                    o.discrepancies.len().to_string(),
                ])
                .map_err(io)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for o in &outcomes {
                writeln!(
                    out,
                    "{} {:<6} {:>8} checks  {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.checks,
                    o.description
                )?;
                for f in &o.failures {
                    writeln!(out, "    {f}")?;
                }
                if o.failure_count > o.failures.len() as u64 {
                    writeln!(out, "    ... {} failures in total", o.failure_count)?;
                }
            }
            if discrepancies > 0 {
                writeln!(out)?;
                writeln!(out, "discrepancies ({discrepancies}):")?;
                for o in &outcomes {
                    for d in &o.discrepancies {
                        writeln!(out, "  [{}] {} ({} instances)", o.name, d.subject, d.instances)?;
                        writeln!(out, "      e.g. {}", d.example)?;
                    }
                }
            }
            let passing = outcomes.iter().filter(|o| o.passed).count();
            writeln!(out)?;
            writeln!(
                out,
                "{passing}/{} fixtures passed, {discrepancies} discrepancy groups{}",
                outcomes.len(),
                if args.strict { " (strict)" } else { "" }
            )?;
        }
    }
    Ok(if passed { 0 } else { 1 })
}

fn run_scan(args: &ScanArgs, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let kinds = match args.kind {
        ScanKindArg::D => vec![CodeKind::D],
        ScanKindArg::F => vec![CodeKind::F],
        ScanKindArg::Both => vec![CodeKind::D, CodeKind::F],
    };
    let filters = args
        .filter
        .iter()
        .map(|f| match f {
            FilterArg::Griesmer => scan::ScanFilter::Griesmer,
            FilterArg::Minimal => scan::ScanFilter::Minimal,
            FilterArg::AbViolating => scan::ScanFilter::AbViolating,
        })
        .collect();
    let config = scan::ScanConfig {
        n_max: args.n_max,
        kinds,
        filters,
        oracle: args.oracle,
        oracle_cap: oracle_cap()?,
        minimality_n_max: args.minimality_n_max,
    };
    if config.n_max > crate::code::ANALYTIC_CAP {
        return Err(Failure::Usage(Error::CapExceeded {
            path: "analytic",
            n: config.n_max,
            cap: crate::code::ANALYTIC_CAP,
        }));
    }
    let rows = scan::scan(&config)?;
    match args.format {
        Format::Csv => scan::write_csv(&rows, out)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Text => scan::write_text(&rows, out)?,
    }
    Ok(0)
}
