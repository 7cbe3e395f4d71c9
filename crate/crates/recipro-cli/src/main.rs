//! recipro: batch reciprocity analysis of directed edge lists.

mod commands;
mod input;
mod logging;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use recipro::oracle::OracleLimits;

#[derive(Parser)]
#[command(
    name = "recipro",
    version,
    about = "Reciprocity, degree-sequence bounds, and rewiring for directed graphs",
    after_help = "Set RECIPRO_LOG=info or RECIPRO_LOG=debug for progress details on stderr."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OracleFlags {
    /// Node limit for exhaustive search
    #[arg(long = "oracle-max-nodes", default_value_t = 10)]
    oracle_max_nodes: usize,
    /// Edge limit for exhaustive search
    #[arg(long = "oracle-max-edges", default_value_t = 20)]
    oracle_max_edges: usize,
}

impl OracleFlags {
    fn limits(&self) -> OracleLimits {
        OracleLimits {
            max_nodes: self.oracle_max_nodes,
            max_edges: self.oracle_max_edges,
            ..OracleLimits::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze edge-list files and emit one CSV row per input
    Analyze {
        /// Edge-list files
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of files processed concurrently
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
    },
    /// Decide graphicality of "d1,d2,..." or "d+,.../d-,..."
    Graphical { literal: String },
    /// Reciprocity upper bound and achievability report for a bi-sequence
    Bound { literal: String },
    /// Construct a witness realization of a sequence or bi-sequence
    Realize { literal: String },
    /// Rewire a graph toward maximum reciprocity, preserving all degrees
    Rewire {
        path: PathBuf,
        /// Write the rewired edge list here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Even-cycle search length bound (0 disables the pass)
        #[arg(long = "even-cycle-max", default_value_t = 8)]
        even_cycle_max: usize,
    },
    /// Exact maximum reciprocity of a bi-sequence by exhaustive search
    Oracle {
        literal: String,
        #[command(flatten)]
        flags: OracleFlags,
    },
    /// Encode a 3-color tomography instance as a bi-sequence
    Reduce {
        /// Per-row white counts, comma separated
        #[arg(long = "rw", value_name = "LIST")]
        r_w: String,
        /// Per-row black counts
        #[arg(long = "rb", value_name = "LIST")]
        r_b: String,
        /// Per-column white counts
        #[arg(long = "sw", value_name = "LIST")]
        s_w: String,
        /// Per-column black counts
        #[arg(long = "sb", value_name = "LIST")]
        s_b: String,
        #[command(flatten)]
        flags: OracleFlags,
    },
    /// Structural audit of a graph's unreciprocated part
    Audit {
        path: PathBuf,
        /// Sample budget for the odd-path shortcut check
        #[arg(long = "audit-sample", default_value_t = 10_000)]
        sample_budget: usize,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn usage_error(message: &str) -> i32 {
    logging::error(message);
    commands::EXIT_USAGE
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    commands::EXIT_OK
                }
                _ => {
                    eprint!("{e}");
                    commands::EXIT_USAGE
                }
            };
        }
    };
    match cli.command {
        Command::Analyze { paths, out, jobs } => {
            if jobs == 0 {
                return usage_error("--jobs must be positive");
            }
            commands::cmd_analyze(&paths, out.as_deref(), jobs)
        }
        Command::Graphical { literal } => match input::parse_literal(&literal) {
            Ok(lit) => commands::cmd_graphical(&lit),
            Err(e) => usage_error(&e),
        },
        Command::Bound { literal } => match input::parse_bisequence(&literal) {
            Ok(bs) => commands::cmd_bound(&bs),
            Err(e) => usage_error(&e),
        },
        Command::Realize { literal } => match input::parse_literal(&literal) {
            Ok(lit) => commands::cmd_realize(&lit),
            Err(e) => usage_error(&e),
        },
        Command::Rewire {
            path,
            out,
            even_cycle_max,
        } => {
            if even_cycle_max != 0 && (even_cycle_max < 4 || even_cycle_max % 2 != 0) {
                return usage_error("--even-cycle-max must be 0 or an even number >= 4");
            }
            commands::cmd_rewire(&path, out.as_deref(), even_cycle_max)
        }
        Command::Oracle { literal, flags } => match input::parse_bisequence(&literal) {
            Ok(bs) => commands::cmd_oracle(&bs, &flags.limits()),
            Err(e) => usage_error(&e),
        },
        Command::Reduce {
            r_w,
            r_b,
            s_w,
            s_b,
            flags,
        } => {
            let parsed = input::parse_sequence(&r_w)
                .and_then(|rw| Ok((rw, input::parse_sequence(&r_b)?)))
                .and_then(|(rw, rb)| Ok((rw, rb, input::parse_sequence(&s_w)?)))
                .and_then(|(rw, rb, sw)| Ok((rw, rb, sw, input::parse_sequence(&s_b)?)));
            match parsed {
                Ok((rw, rb, sw, sb)) => commands::cmd_reduce(rw, rb, sw, sb, &flags.limits()),
                Err(e) => usage_error(&e),
            }
        }
        Command::Audit {
            path,
            sample_budget,
        } => commands::cmd_audit(&path, sample_budget),
    }
}

fn main() -> ExitCode {
    ExitCode::from(run() as u8)
}
