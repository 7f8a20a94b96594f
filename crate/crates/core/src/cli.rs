//! Command-line front end. `run` takes its argument list and output streams
//! explicitly so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 a check failed or the input is not a ppc,
//! 2 usage, parse or range error.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::composition::{Composition, PpcType};
use crate::error::Error;
use crate::forest::{build_forest, ForestLevel, Parity};
use crate::oracle::{count_ppcs_formula, Oracle, DEFAULT_CAP, MAX_CAP};
use crate::production::{produce, ProductionRule};
use crate::verify::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ppc",
    version,
    about = "Enumerate, produce and verify parity palindrome compositions"
)]
pub struct Cli {
    /// Largest total the brute-force enumerator will accept.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP,
          value_parser = clap::value_parser!(u64).range(1..=MAX_CAP))]
    pub cap: u64,

    /// Print compositions as digit strings (`32141`) when every part is at most 9.
    #[arg(long, global = true)]
    pub compact: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Brute,
    Formula,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the compositions of N in gap-mask order.
    Enum {
        n: u64,
        /// Only list parity palindrome compositions.
        #[arg(long)]
        ppc_only: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Count the ppcs of N by enumeration, by closed form, or both.
    Count {
        n: u64,
        #[arg(long, value_enum, default_value_t = CountMethod::Both)]
        method: CountMethod,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
    },
    /// Print the type (A, B or C) of a ppc.
    Classify { composition: Composition },
    /// Print each `rule child` produced from a ppc.
    Produce { composition: Composition },
    /// Build the production forest from the seeds of the given parity.
    Forest {
        parity: Parity,
        max_total: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Run every check against the brute-force oracle, both parities, up to --max.
    Verify {
        #[arg(long = "max")]
        max_total: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

/// One composition as emitted in JSON output.
#[derive(Debug, Serialize)]
pub struct CompositionRecord<'a> {
    pub n: u64,
    pub parts: &'a [u64],
    pub ppc: bool,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub ty: Option<PpcType>,
}

impl<'a> CompositionRecord<'a> {
    pub fn new(c: &'a Composition) -> Self {
        CompositionRecord {
            n: c.total(),
            parts: c.parts(),
            ppc: c.is_ppc(),
            ty: c.classify().ok(),
        }
    }
}

#[derive(Serialize)]
struct ForestMember<'a> {
    #[serde(flatten)]
    record: CompositionRecord<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parent: Option<&'a [u64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rule: Option<ProductionRule>,
}

#[derive(Serialize)]
struct ForestLevelRecord<'a> {
    total: u64,
    seed: bool,
    members: Vec<ForestMember<'a>>,
}

#[derive(Serialize)]
struct VerifyRecord<'a> {
    passed: bool,
    #[serde(flatten)]
    report: &'a crate::verify::VerifyReport,
}

enum Failure {
    Usage(String),
    Check(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAPpc(_) => Failure::Check("not a ppc".to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = dispatch(cli, out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_FAILED
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let oracle = Oracle::with_cap(cli.cap);
    match &cli.command {
        Command::Enum {
            n,
            ppc_only,
            format,
        } => cmd_enum(&oracle, *n, *ppc_only, *format, cli.compact, out),
        Command::Count { n, method, jobs } => cmd_count(&oracle, *n, *method, *jobs as usize, out),
        Command::Classify { composition } => {
            writeln!(out, "{}", composition.classify()?)?;
            Ok(EXIT_OK)
        }
        Command::Produce { composition } => {
            for p in produce(composition)? {
                writeln!(out, "{} {}", p.rule, p.child.render(cli.compact))?;
            }
            Ok(EXIT_OK)
        }
        Command::Forest {
            parity,
            max_total,
            format,
        } => cmd_forest(&oracle, *parity, *max_total, *format, cli.compact, out),
        Command::Verify {
            max_total,
            jobs,
            format,
        } => cmd_verify(&oracle, *max_total, *jobs as usize, *format, out),
    }
}

fn cmd_enum(
    oracle: &Oracle,
    n: u64,
    ppc_only: bool,
    format: OutputFormat,
    compact: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if format == OutputFormat::Dot {
        return Err(Failure::Usage(
            "dot output is only available for `forest`".into(),
        ));
    }
    let mut out = io::BufWriter::new(out);
    for c in oracle.compositions(n)? {
        if ppc_only && !c.is_ppc() {
            continue;
        }
        match format {
            OutputFormat::Json => {
                serde_json::to_writer(&mut out, &CompositionRecord::new(&c))?;
                writeln!(out)?;
            }
            _ => writeln!(out, "{}", c.render(compact))?,
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn cmd_count(
    oracle: &Oracle,
    n: u64,
    method: CountMethod,
    jobs: usize,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let brute = || oracle.count_ppcs_brute_parallel(n, jobs);
    match method {
        CountMethod::Brute => {
            writeln!(out, "{}", brute()?)?;
            Ok(EXIT_OK)
        }
        CountMethod::Formula => {
            writeln!(out, "{}", count_ppcs_formula(n)?)?;
            Ok(EXIT_OK)
        }
        CountMethod::Both => {
            oracle.check_range(n)?;
            let formula = count_ppcs_formula(n)?;
            let b = brute()?;
            writeln!(out, "{b} {formula}")?;
            Ok(if b == formula { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn cmd_forest(
    oracle: &Oracle,
    parity: Parity,
    max_total: u64,
    format: OutputFormat,
    compact: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if max_total > oracle.cap() {
        return Err(Error::NOutOfRange {
            n: max_total,
            cap: oracle.cap(),
        }
        .into());
    }
    let levels = build_forest(parity, max_total)?;
    let mut out = io::BufWriter::new(out);
    match format {
        OutputFormat::Text => write_forest_text(&levels, compact, &mut out)?,
        OutputFormat::Json => {
            for level in &levels {
                serde_json::to_writer(&mut out, &level_record(level))?;
                writeln!(out)?;
            }
        }
        OutputFormat::Dot => write_forest_dot(&levels, &mut out)?,
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn level_record(level: &ForestLevel) -> ForestLevelRecord<'_> {
    ForestLevelRecord {
        total: level.total,
        seed: level.is_seed(),
        members: level
            .members
            .iter()
            .map(|c| {
                let origin = level.origin(c);
                ForestMember {
                    record: CompositionRecord::new(c),
                    parent: origin.map(|(p, _)| p.parts()),
                    rule: origin.map(|(_, r)| *r),
                }
            })
            .collect(),
    }
}

pub fn write_forest_text(
    levels: &[ForestLevel],
    compact: bool,
    out: &mut dyn Write,
) -> io::Result<()> {
    for level in levels {
        if level.is_seed() {
            writeln!(out, "total {} (seed)", level.total)?;
        } else {
            writeln!(out, "total {}", level.total)?;
        }
        for c in &level.members {
            match level.origin(c) {
                Some((parent, rule)) => writeln!(
                    out,
                    "  {} <- {rule} {}",
                    c.render(compact),
                    parent.render(compact)
                )?,
                None => writeln!(out, "  {}", c.render(compact))?,
            }
        }
    }
    Ok(())
}

/// Nodes are keyed by canonical text and labelled in compact form where possible.
pub fn write_forest_dot(levels: &[ForestLevel], out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "digraph ppc_forest {{")?;
    for level in levels {
        for c in &level.members {
            writeln!(
                out,
                "  \"{}\" [label=\"{}\"];",
                c.canonical(),
                c.render(true)
            )?;
        }
    }
    for level in levels {
        for p in level.productions() {
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                p.parent.canonical(),
                p.child.canonical(),
                p.rule
            )?;
        }
    }
    writeln!(out, "}}")
}

fn cmd_verify(
    oracle: &Oracle,
    max_total: u64,
    jobs: usize,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let report = run_suite(oracle, max_total, jobs)?;
    match format {
        OutputFormat::Text => write!(out, "{report}")?,
        OutputFormat::Json => {
            serde_json::to_writer(
                &mut *out,
                &VerifyRecord {
                    passed: report.passed(),
                    report: &report,
                },
            )?;
            writeln!(out)?;
        }
        OutputFormat::Dot => {
            return Err(Failure::Usage(
                "dot output is only available for `forest`".into(),
            ))
        }
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}
