//! The `sd` command-line tool: argument parsing, dispatch, result records
//! and the sweep cache. [`run`] is the whole program minus process exit, so
//! tests can drive it in-process.

pub mod cache;
pub mod commands;
pub mod record;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use record::{ResultRecord, SCHEMA_VERSION};

/// Exit code for successful runs and true verdicts.
pub const EXIT_OK: i32 = 0;
/// Exit code when a mathematical check fails or a verdict is false.
pub const EXIT_MATH: i32 = 1;
/// Exit code for invalid invocations.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sd", version, about = "Sum-to-difference maps of finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Emit one JSON result record instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in the output (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// SD-group of F_q by the exponent scan.
    Group {
        #[arg(long)]
        q: u64,
    },
    /// SD-groups for every odd prime power up to --max-q.
    Sweep {
        #[arg(long)]
        max_q: u64,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        cache: CacheOpts,
    },
    /// Whether w -> w^m is an SD-map of a finite field or a described field.
    Power {
        #[arg(long)]
        m: u64,
        #[arg(long, conflicts_with = "descriptor", required_unless_present = "descriptor")]
        q: Option<u64>,
        /// JSON field descriptor, e.g. '{"characteristic":2,"roots_of_unity":"prime_field_only"}'.
        #[arg(long)]
        descriptor: Option<String>,
    },
    /// Verifies a map table given as JSON (or @path to a JSON file).
    CheckMap {
        #[arg(long)]
        map: String,
    },
    /// The three F_5 characterizations on F_q.
    F5 {
        #[arg(long)]
        q: u64,
    },
    /// f(n) as a rational function of u = f(2).
    Recurrence {
        #[arg(long)]
        n: usize,
    },
    /// Runs the exact symbolic identities up to --kmax.
    VerifyIdentities {
        #[arg(long, default_value_t = 100)]
        kmax: usize,
    },
    /// Lifts a simple root of a polynomial mod p to a p-adic root.
    Hensel {
        #[arg(long)]
        p: u64,
        /// Integer coefficients, lowest degree first, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        x0: u64,
        #[arg(long, default_value_t = 32)]
        prec: u32,
    },
    /// Checks the n-th root characterization of p-adic units.
    PadicUnitCheck {
        #[arg(long)]
        p: u64,
        /// A rational m/n or integer.
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[arg(long, default_value_t = 5)]
        count: u32,
        #[arg(long, default_value_t = 32)]
        prec: u32,
    },
    /// Brute-force search for SD-maps between two finite fields.
    Oracle {
        #[arg(long)]
        domain: u64,
        #[arg(long)]
        codomain: u64,
        /// Search every injection, or only multiplicative candidates.
        #[arg(long, value_enum, default_value_t = ModeArg::Oracle)]
        mode: ModeArg,
        #[arg(long, default_value_t = sdgroup_core::sd_maps::DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Print every map, not just the count.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Oracle,
    Pruned,
}

#[derive(Debug, Clone, Args)]
pub struct CacheOpts {
    /// Cache directory (default: $SD_CACHE_DIR, else the user cache directory).
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long)]
    pub no_cache: bool,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { stdout: text, stderr: String::new(), code: EXIT_OK },
                _ => Outcome { stdout: String::new(), stderr: text, code: EXIT_USAGE },
            };
        }
    };
    commands::dispatch(&cli)
}
