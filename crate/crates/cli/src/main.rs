//! `reslab`: command-line front end for the resonance toolkit.

mod commands;
mod config;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "reslab",
    version,
    about = "Resonance toolkit for quadratic Dirichlet L-functions"
)]
struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true, env = "RESLAB_CONFIG")]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List fundamental discriminants with lo < |d| <= hi as CSV.
    Discriminants(DiscriminantArgs),
    /// Evaluate L(1/2 + alpha, chi_d).
    Lfun(LfunArgs),
    /// Build the resonator and print its summary.
    Resonator(ResonatorArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Scan a range of discriminants for large L-values.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
pub struct DiscriminantArgs {
    #[arg(long, value_parser = config::parse_count)]
    pub lo: u64,
    #[arg(long, value_parser = config::parse_count)]
    pub hi: u64,
    #[arg(long, default_value = "both")]
    pub signs: reslab::Signs,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LMode {
    Afe,
    Exact,
    Both,
}

#[derive(Args, Debug)]
pub struct LfunArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value = "afe")]
    pub mode: LMode,
}

#[derive(Args, Debug, Default)]
pub struct ResonatorFlags {
    #[arg(long = "N", value_parser = config::parse_count)]
    pub n: Option<u64>,
    #[arg(long = "A")]
    pub big_a: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, value_parser = config::parse_count)]
    pub m_cap: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ResonatorArgs {
    #[command(flatten)]
    pub flags: ResonatorFlags,
    /// Write the member table `m,f` here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the summary here as well as to stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value = "quick")]
    pub level: reslab::verify::Level,
    /// Seed for the sampled AFE comparisons.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Scale the stored resonator weights by `1 + f` before checking.
    #[arg(long, hide = true, allow_hyphen_values = true)]
    pub perturb_f: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long = "X", value_parser = config::parse_count)]
    pub x: Option<u64>,
    #[command(flatten)]
    pub resonator: ResonatorFlags,
    #[arg(long)]
    pub strategy: Option<String>,
    #[arg(long = "K", value_parser = config::parse_count)]
    pub k: Option<u64>,
    #[arg(long)]
    pub signs: Option<String>,
    #[arg(long)]
    pub n_policy: Option<String>,
    #[arg(long)]
    pub l_source: Option<String>,
    #[arg(long)]
    pub range: Option<String>,
    #[arg(long)]
    pub kernel: Option<String>,
    /// Write the report JSON here as well as to stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the report as a CSV row here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let globals = commands::Globals {
        config: cli.config,
        workers: cli.workers,
    };
    let outcome = match cli.command {
        Command::Discriminants(a) => commands::discriminants(&a),
        Command::Lfun(a) => commands::lfun(&globals, &a),
        Command::Resonator(a) => commands::resonator(&globals, &a),
        Command::Verify(a) => commands::verify(&globals, &a),
        Command::Search(a) => commands::search(&globals, &a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("reslab: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
