//! The `latfree` command line: enumerate `A_d`, construct and certify
//! polytopes, keep a JSONL catalog of certificates and re-verify it.

pub mod catalog;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use latfree::egyptian::{
    check_dimension, enumerate_a, growth_report, max_dimension, EgyptianTuple, GROWTH_CSV_HEADER,
};
use latfree::exactgeom::DEFAULT_BUDGET;
use latfree::transforms::eta_steps;
use latfree::verify::certify;
use latfree::Error;
use rayon::prelude::*;

pub use catalog::{CatalogEntry, SCHEMA_VERSION};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_CERTIFY: u8 = 4;
pub const EXIT_CATALOG: u8 = 5;

/// Largest `d_max` accepted by `report` unless `LATFREE_MAX_D` is set.
pub const REPORT_MAX_D: usize = 7;

#[derive(Debug, Parser)]
#[command(
    name = "latfree",
    version,
    about = "Lattice-free polytopes from Egyptian fractions"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Brute-force budget in bounding-box lattice points.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Only print results and errors.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the sorted unit-fraction decompositions of 1 with D terms.
    Enumerate {
        d: usize,
        /// Write tuples to FILE instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print only the number of tuples.
        #[arg(long)]
        count_only: bool,
    },
    /// Build T(η(a)) for a tuple and optionally certify it.
    Construct {
        /// Components of the tuple, ascending.
        tuple: Vec<String>,
        /// Read tuples from FILE, one per line.
        #[arg(long, value_name = "FILE", conflicts_with = "tuple")]
        from: Option<PathBuf>,
        /// Emit the certificate JSON.
        #[arg(long)]
        certify: bool,
        /// Override --budget for the brute-force cross-checks.
        #[arg(long, value_name = "B")]
        brute_force_budget: Option<u64>,
        /// Append certified entries to a JSONL catalog (implies --certify).
        #[arg(long, value_name = "FILE")]
        catalog: Option<PathBuf>,
    },
    /// Re-verify every entry of a catalog from scratch.
    VerifyCatalog { file: PathBuf },
    /// Growth table of |A_d| for d = 1..=D_MAX as CSV.
    Report {
        d_max: usize,
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> CliError {
        CliError {
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: io::Error) -> CliError {
        CliError::new(EXIT_IO, format!("{}: {e}", path.display()))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::WitnessVerificationFailed(_) => EXIT_CERTIFY,
            _ => EXIT_USAGE,
        };
        CliError::new(code, e.to_string())
    }
}

pub type CliResult<T = ()> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(CliError::new(EXIT_USAGE, "--jobs must be at least 1"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::new(EXIT_USAGE, e.to_string()))?;
        return pool.install(|| dispatch(cli));
    }
    dispatch(cli)
}

fn dispatch(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Enumerate { d, out, count_only } => cmd_enumerate(*d, out.as_deref(), *count_only),
        Command::Construct {
            tuple,
            from,
            certify,
            brute_force_budget,
            catalog,
        } => {
            let tuples = match from {
                Some(path) => read_tuples(path)?,
                None => vec![parse_tuple_args(tuple)?],
            };
            let budget = brute_force_budget.unwrap_or(cli.budget);
            cmd_construct(
                &tuples,
                *certify || catalog.is_some(),
                budget,
                catalog.as_deref(),
                cli.quiet,
            )
        }
        Command::VerifyCatalog { file } => cmd_verify_catalog(file, cli.quiet),
        Command::Report { d_max, csv } => cmd_report(*d_max, csv.as_deref()),
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::new(EXIT_IO, format!("stdout: {e}"))
}

pub fn cmd_enumerate(d: usize, out: Option<&Path>, count_only: bool) -> CliResult {
    check_dimension(d, max_dimension())?;
    if count_only {
        let n = latfree::egyptian::count_a(d)?;
        println!("{n}");
        return Ok(());
    }
    let (mut w, path): (Box<dyn Write>, &Path) = match out {
        Some(p) => (
            Box::new(BufWriter::new(
                File::create(p).map_err(|e| CliError::io(p, e))?,
            )),
            p,
        ),
        None => (
            Box::new(BufWriter::new(io::stdout().lock())),
            Path::new("stdout"),
        ),
    };
    let mut failure = None;
    enumerate_a(d, |t| {
        if failure.is_none() {
            if let Err(e) = writeln!(w, "{t}") {
                failure = Some(e);
            }
        }
    })?;
    match failure {
        Some(e) => Err(CliError::io(path, e)),
        None => w.flush().map_err(|e| CliError::io(path, e)),
    }
}

fn parse_tuple_args(args: &[String]) -> CliResult<EgyptianTuple> {
    if args.is_empty() {
        return Err(CliError::new(EXIT_USAGE, "no tuple given"));
    }
    Ok(EgyptianTuple::parse_line(&args.join(" "))?)
}

fn read_tuples(path: &Path) -> CliResult<Vec<EgyptianTuple>> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let t = EgyptianTuple::parse_line(&line)
            .map_err(|e| CliError::new(EXIT_USAGE, format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(t);
    }
    Ok(out)
}

pub fn cmd_construct(
    tuples: &[EgyptianTuple],
    with_certificate: bool,
    budget: u64,
    catalog: Option<&Path>,
    quiet: bool,
) -> CliResult {
    let steps = tuples
        .iter()
        .map(eta_steps)
        .collect::<latfree::Result<Vec<_>>>()?;
    let mut stdout = io::stdout().lock();
    if !with_certificate {
        for (a, s) in tuples.iter().zip(&steps) {
            writeln!(stdout, "a: {a}").map_err(stdout_err)?;
            writeln!(stdout, "eta: {}", s.eta.to_strings().join(" ")).map_err(stdout_err)?;
            writeln!(
                stdout,
                "kappa: {} (ok)",
                latfree::exactgeom::format_rat(&s.eta.kappa())
            )
            .map_err(stdout_err)?;
        }
        return Ok(());
    }

    let mut order: Vec<&EgyptianTuple> = tuples.iter().collect();
    order.sort_by(|x, y| (x.len(), *x).cmp(&(y.len(), *y)));
    order.dedup();
    let entries = order
        .par_iter()
        .map(|a| {
            let cert = certify(a, budget).map_err(|e| CliError::from(e).with_context(a))?;
            if !(cert.verdict_in_l && cert.verdict_not_in_m) {
                return Err(CliError::new(
                    EXIT_CERTIFY,
                    format!("({a}): verdicts not established"),
                ));
            }
            Ok(CatalogEntry::new(a, &cert))
        })
        .collect::<CliResult<Vec<_>>>()?;

    for e in &entries {
        let text = serde_json::to_string_pretty(&e.certificate).expect("json");
        writeln!(stdout, "{text}").map_err(stdout_err)?;
    }
    if let Some(path) = catalog {
        catalog::append(path, &entries)?;
        if !quiet {
            eprintln!("appended {} entries to {}", entries.len(), path.display());
        }
    }
    Ok(())
}

impl CliError {
    fn with_context(mut self, a: &EgyptianTuple) -> CliError {
        self.message = format!("({a}): {}", self.message);
        self
    }
}

pub fn cmd_verify_catalog(path: &Path, quiet: bool) -> CliResult {
    let n = catalog::verify_file(path)?;
    if n == 0 {
        eprintln!("warning: 0 entries in {}", path.display());
    } else if !quiet {
        println!("{n} entries verified");
    }
    Ok(())
}

pub fn cmd_report(d_max: usize, csv: Option<&Path>) -> CliResult {
    let cap = std::env::var("LATFREE_MAX_D")
        .ok()
        .map_or(REPORT_MAX_D, |_| max_dimension());
    check_dimension(d_max, cap)?;
    let rows = growth_report(d_max)?;
    let mut text = format!("{GROWTH_CSV_HEADER}\n");
    for r in &rows {
        text.push_str(&r.csv_line());
        text.push('\n');
    }
    match csv {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(stdout_err),
    }
}
