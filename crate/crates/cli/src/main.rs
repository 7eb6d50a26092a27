//! `circgraph` command-line driver.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{AmplitudeArgs, GenerateArgs, PtArgs, SampleArgs, VerifyArgs, WidthArgs, XebArgs};

#[derive(Debug, Parser)]
#[command(
    name = "circgraph",
    version,
    about = "Exact amplitudes of grid circuits by bucket elimination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a random grid circuit.
    Generate(GenerateArgs),
    /// Amplitudes and probabilities of given outputs.
    Amplitude(AmplitudeArgs),
    /// Predicted elimination width, optionally over a range of depths.
    Width(WidthArgs),
    /// Draw a uniform set T with exact probabilities and a sample S from it.
    Sample(SampleArgs),
    /// Cross-entropy fidelity of measured bit-strings.
    Xeb(XebArgs),
    /// Porter-Thomas histogram, KS distance and entropy.
    Pt(PtArgs),
    /// Compare elimination, statevector and Ising amplitudes.
    Verify(VerifyArgs),
}

/// Bad flag combination or input that violates a precondition.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

/// Oracles disagreed beyond tolerance.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Mismatch(pub String);

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

fn exit_code(err: &anyhow::Error) -> u8 {
    use circgraph::Error;
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    if err.downcast_ref::<Mismatch>().is_some() {
        return EXIT_MISMATCH;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. } | Error::CapExceeded { .. }) => EXIT_BUDGET,
        Some(
            Error::InvalidDepth
            | Error::InvalidDimensions { .. }
            | Error::BitStringLength { .. }
            | Error::InvalidBitString(_),
        ) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Amplitude(a) => commands::amplitude(a),
        Command::Width(a) => commands::width(a),
        Command::Sample(a) => commands::sample(a),
        Command::Xeb(a) => commands::xeb(a),
        Command::Pt(a) => commands::pt(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
