//! `ncff`: build and check cover-free families, and run fault-tolerant
//! aggregation with a test signature scheme.
//!
//! Exit status: 0 on success, 1 when a check fails or an operation is
//! rejected, 2 on bad flags or unreadable input.

mod cmd;
mod failure;
mod family;
mod files;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use failure::Verdict;

#[derive(Parser, Debug)]
#[command(
    name = "ncff",
    version,
    about = "Cover-free families and fault-tolerant signature aggregation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a matrix or nested level file
    Build(cmd::build::BuildArgs),
    /// Check the cover-free property and/or nesting of a matrix
    Check(cmd::check::CheckArgs),
    /// Generate a mock-v1 key pair
    Keygen(cmd::sig::KeygenArgs),
    /// Sign one message as a one-claim sequence
    Sign(cmd::sig::SignArgs),
    /// Aggregate two signed claim sequences
    Agg(cmd::sig::AggArgs),
    /// Identify the valid claims of an aggregate
    Verify(cmd::sig::VerifyArgs),
    /// Run seeded fault-injection trials
    Simulate(cmd::sim::SimulateArgs),
    /// Estimate aggregate sizes
    Estimate(cmd::sim::EstimateArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build(a) => cmd::build::run(a).map(|_| Verdict::Positive),
        Command::Check(a) => cmd::check::run(a),
        Command::Keygen(a) => cmd::sig::keygen(a).map(|_| Verdict::Positive),
        Command::Sign(a) => cmd::sig::sign(a).map(|_| Verdict::Positive),
        Command::Agg(a) => cmd::sig::agg(a).map(|_| Verdict::Positive),
        Command::Verify(a) => cmd::sig::verify(a),
        Command::Simulate(a) => cmd::sim::simulate_cmd(a),
        Command::Estimate(a) => cmd::sim::estimate_cmd(a).map(|_| Verdict::Positive),
    };
    match result {
        Ok(Verdict::Positive) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            f.exit_code()
        }
    }
}
