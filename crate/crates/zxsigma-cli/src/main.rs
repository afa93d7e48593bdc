//! `zxsigma`: one command per library operation, canonical text in and out.

mod commands;
mod json;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zxsigma::constants::SigmaConfig;
use zxsigma::saturation::SatKind;

#[derive(Parser, Debug)]
#[command(name = "zxsigma", version, about = "Z[x]-lattices and binomial difference ideals")]
pub struct Cli {
    /// Action of σ on constants.
    #[arg(long, global = true, default_value = "id")]
    pub sigma: SigmaConfig,
    /// Print JSON instead of canonical text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generalized Hermite normal form of a matrix.
    Ghnf(Input),
    /// Generators of the kernel of a matrix.
    Kernel(Input),
    /// x-saturation of a lattice.
    Satx(Input),
    /// Z-saturation, with a multiplier for every basis column.
    Satz(Input),
    /// M-saturation.
    Satm(Input),
    /// P-saturation (x and M together).
    Satp(Input),
    /// Whether a lattice is saturated.
    IsSaturated {
        #[arg(long)]
        kind: SatKind,
        #[command(flatten)]
        input: Input,
    },
    /// Characteristic set of a Laurent binomial system.
    Charset(Input),
    /// Whether the ideal of a Laurent binomial system is proper.
    Proper(Input),
    /// Whether a Laurent binomial lies in the ideal of a system.
    Member {
        /// The binomial, e.g. `y1^(x)*y2 - 2`.
        #[arg(long)]
        binomial: String,
        #[command(flatten)]
        input: Input,
    },
    /// Smallest reflexive ideal containing the system.
    ReflexiveClosure(Input),
    /// Smallest well-mixed ideal containing the system.
    WellmixedClosure(Input),
    /// Smallest perfect ideal containing the system.
    PerfectClosure(Input),
    /// Whether the ideal of the system is prime.
    IsPrime(Input),
    /// Whether the ideal of the system is reflexive.
    IsReflexive(Input),
    /// Whether the ideal of the system is well-mixed.
    IsWellmixed(Input),
    /// Whether the ideal of the system is perfect.
    IsPerfect(Input),
    /// Reflexive prime components of the perfect closure.
    DecLaurent(Input),
    /// Reflexive prime components of a system of plain binomials and monomials.
    DecBinomial(Input),
    /// Dimension of a reflexive prime ideal.
    Dimension(Input),
}

#[derive(clap::Args, Debug)]
pub struct Input {
    /// Input file; standard input when absent or `-`.
    pub file: Option<PathBuf>,
}

impl Input {
    fn read(&self) -> std::io::Result<String> {
        match &self.file {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                Ok(s)
            }
        }
    }
}

/// What a command produced: its text and whether a requested proper object exists.
pub struct Output {
    pub text: String,
    pub proper: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let input = match commands::input_of(&cli.command).read() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli, &input) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if out.proper { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
