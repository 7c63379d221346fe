//! `semifield`: construct, verify and survey finite presemifields.

mod census;
mod commands;
mod instance;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "semifield",
    version,
    about = "Finite presemifields: construction, nuclei, commutativity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for the parallel strategy.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an instance and print its record.
    Construct(InstanceArgs),
    /// Validity by the family predicate and by certifying the raw product.
    Verify(InstanceArgs),
    /// Nuclei by associator kernels and by exhaustive search, against the prediction.
    Nuclei(InstanceArgs),
    /// Commutative-isotope tests on the semifield and the presemifield.
    Ganley(InstanceArgs),
    /// Predicted nuclei and commutativity against measured values.
    Predict(InstanceArgs),
    /// Every parameter tuple of a family, one line each, then a summary.
    Census(CensusArgs),
    /// Multiplication table of the presemifield or of its isotope with identity --e.
    Export(InstanceArgs),
}

#[derive(Args, Debug, Clone, serde::Serialize)]
pub struct InstanceArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// field, twisted, A, X, B, C, dickson or hk.
    #[arg(long)]
    pub family: Option<String>,
    /// Elements: `[c0,c1,...]`, `g^k` or an integer.
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long = "N", allow_hyphen_values = true)]
    #[serde(rename = "N")]
    pub big_n: Option<String>,
    #[arg(long = "R", allow_hyphen_values = true)]
    #[serde(rename = "R")]
    pub r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// An element of the quadratic extension.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Use the element of this multiplicative order for l.
    #[arg(long = "l-order")]
    #[serde(rename = "l-order")]
    pub l_order: Option<u64>,
    /// Use the element of this multiplicative order for R.
    #[arg(long = "R-order")]
    #[serde(rename = "R-order")]
    pub r_order: Option<u64>,
    /// Identity of the semifield isotope, as an element index (default 1).
    #[arg(long)]
    pub e: Option<u64>,
}

#[derive(Args, Debug, Clone, serde::Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// twisted, A, X, B or C.
    #[arg(long)]
    pub family: String,
    /// Sweep one representative per reparametrization orbit.
    #[arg(long)]
    pub reduce: bool,
}

pub struct Output {
    pub text: String,
    pub mismatch: bool,
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Construct(a) => commands::construct(a, cli.format),
        Command::Verify(a) => commands::verify(a, cli.format),
        Command::Nuclei(a) => commands::nuclei(a, cli.format),
        Command::Ganley(a) => commands::ganley(a, cli.format),
        Command::Predict(a) => commands::predict(a, cli.format),
        Command::Census(a) => census::census(a, cli.format),
        Command::Export(a) => commands::export(a, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        semifield_core::exec::set_threads(t.max(1));
    }
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.text),
        None => std::io::stdout().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if out.mismatch {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
