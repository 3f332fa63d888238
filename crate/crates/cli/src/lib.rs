//! Command-line front end for `stirling_core`.
//!
//! Machine output goes to stdout as JSON or CSV; a one-line human summary
//! goes to stderr unless `--quiet` is given.

pub mod cache;
mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use stirling_core::combinatorics::BellSequence;
use stirling_core::graph_stirling::GraphFamily;

use crate::cache::CacheError;
use crate::commands::Outcome;
use crate::output::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_CACHE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "stirling", version, about = "Exact graphical Stirling numbers for forests and cycles")]
struct Cli {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Bell-number cache file; read if present, written back when extended.
    #[arg(long, value_name = "PATH", global = true)]
    bell_cache: Option<PathBuf>,
    /// Suppress the summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

/// Selects one graph family.
#[derive(Debug, Args)]
#[group(multiple = false)]
struct GraphArgs {
    /// Forest with N vertices and C components.
    #[arg(long, num_args = 2, value_names = ["N", "C"])]
    forest: Option<Vec<usize>>,
    /// Cycle on N vertices (N >= 2; C_2 is a single edge).
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    /// Edgeless graph on N vertices.
    #[arg(long, value_name = "N")]
    empty: Option<usize>,
    /// Path on N vertices.
    #[arg(long, value_name = "N")]
    path: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rows (k, S(G,k)) for the nonzero entries.
    Table(GraphArgs),
    /// Stirling and chromatic polynomials.
    Poly(GraphArgs),
    /// Real-root count and isolating intervals of the Stirling polynomial.
    Roots {
        #[command(flatten)]
        graph: GraphArgs,
        /// Refine intervals to width below 2^-BITS.
        #[arg(long, default_value_t = 40, value_name = "BITS", value_parser = clap::value_parser!(u32).range(0..=4096))]
        precision: u32,
    },
    /// The five interlacing relations between forest polynomials.
    Interlace {
        #[arg(long, value_name = "C")]
        c: usize,
        #[arg(long, value_name = "N")]
        n: usize,
    },
    /// Ultra log-concavity of (S(G,k))_k.
    Ulc {
        #[command(flatten)]
        graph: GraphArgs,
        /// Require strict inequality from this k on (default: chromatic number).
        #[arg(long, value_name = "K")]
        strict_from: Option<usize>,
    },
    /// Exact mean and variance of the number of classes.
    Moments(GraphArgs),
    /// Distance of the class-count distribution from the normal law.
    Normality(GraphArgs),
    /// Exact moments against the Lambert-W estimates.
    Estimates(GraphArgs),
    /// Compare closed forms with exhaustive enumeration.
    OracleCheck {
        /// Largest forest size to enumerate.
        #[arg(long, default_value_t = 9, value_name = "N")]
        max_n: usize,
        /// Random forests per (n, c).
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        /// Largest cycle to enumerate.
        #[arg(long, default_value_t = 10, value_name = "N")]
        max_cycle: usize,
    },
    /// Bell numbers B_0..B_N, or the Bell number of a graph.
    Bell {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_name = "N")]
        upto: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Invalid(stirling_core::Error),
}

impl From<stirling_core::Error> for Failure {
    fn from(e: stirling_core::Error) -> Self {
        Self::Invalid(e)
    }
}

impl GraphArgs {
    fn family(&self) -> Result<Option<GraphFamily>, Failure> {
        Ok(Some(match (&self.forest, self.cycle, self.empty, self.path) {
            (Some(nc), ..) => GraphFamily::forest(nc[0], nc[1])?,
            (_, Some(n), ..) => GraphFamily::cycle(n)?,
            (_, _, Some(n), _) => GraphFamily::empty(n)?,
            (.., Some(n)) => GraphFamily::path(n)?,
            _ => return Ok(None),
        }))
    }

    fn require(&self) -> Result<GraphFamily, Failure> {
        self.family()?.ok_or_else(|| {
            Failure::Usage("one of --forest N C, --cycle N, --empty N, --path N is required".into())
        })
    }
}

/// Bell numbers shared by the commands, tied to the optional cache file.
struct BellStore {
    path: Option<PathBuf>,
    seq: BellSequence,
    loaded_len: usize,
}

impl BellStore {
    fn open(path: Option<PathBuf>) -> Result<Self, CacheError> {
        let seq = match &path {
            Some(p) if p.exists() => cache::load_bell_cache(p)?,
            _ => BellSequence::new(),
        };
        let loaded_len = match &path {
            Some(p) if p.exists() => seq.len(),
            _ => 0,
        };
        Ok(Self { path, seq, loaded_len })
    }

    fn persist(&self) -> Result<(), CacheError> {
        match &self.path {
            Some(p) if self.seq.len() > self.loaded_len => cache::save_bell_cache(p, &self.seq),
            _ => Ok(()),
        }
    }
}

fn dispatch(command: &Command, bells: &mut BellSequence) -> Result<Outcome, Failure> {
    Ok(match command {
        Command::Table(g) => commands::table(g.require()?),
        Command::Poly(g) => commands::poly(g.require()?),
        Command::Roots { graph, precision } => commands::roots(graph.require()?, *precision)?,
        Command::Interlace { c, n } => commands::interlace(*c, *n)?,
        Command::Ulc { graph, strict_from } => commands::ulc(graph.require()?, *strict_from),
        Command::Moments(g) => commands::moments_cmd(g.require()?, bells)?,
        Command::Normality(g) => commands::normality(g.require()?)?,
        Command::Estimates(g) => commands::estimates(g.require()?, bells)?,
        Command::OracleCheck {
            max_n,
            seeds,
            max_cycle,
        } => commands::oracle_check(*max_n, *seeds, *max_cycle, bells)?,
        Command::Bell { graph, upto } => match (graph.family()?, upto) {
            (Some(g), None) => commands::graph_bell_cmd(g, bells),
            (None, Some(m)) => commands::bell_numbers(*m, bells),
            _ => return Err(Failure::Usage("bell takes either --upto N or one graph family flag".into())),
        },
    })
}

/// Runs the tool on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{text}");
            return EXIT_USAGE;
        }
    };

    let mut store = match BellStore::open(cli.bell_cache.clone()) {
        Ok(store) => store,
        Err(e) => {
            let _ = writeln!(stderr, "error: bell cache: {e}");
            return EXIT_CACHE;
        }
    };

    let outcome = match dispatch(&cli.command, &mut store.seq) {
        Ok(outcome) => outcome,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Invalid(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INVALID;
        }
    };

    if let Err(e) = outcome.record.write(cli.format, stdout) {
        let _ = writeln!(stderr, "error: writing output: {e}");
        return EXIT_IO;
    }
    if !cli.quiet {
        let _ = writeln!(stderr, "{}", outcome.summary);
    }
    if let Err(e) = store.persist() {
        let _ = writeln!(stderr, "error: bell cache: {e}");
        return EXIT_CACHE;
    }
    match outcome.failure {
        Some(reason) => {
            let _ = writeln!(stderr, "verification failed: {reason}");
            EXIT_VERIFICATION
        }
        None => EXIT_OK,
    }
}
