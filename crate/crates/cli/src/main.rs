use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use eql::{Command, FieldSpec, PipelineConfig};

/// Exact pipelines for quivers with convergent relations.
#[derive(Parser, Debug)]
#[command(name = "eql", version, about)]
struct Args {
    /// Pipeline to run.
    #[arg(value_enum)]
    command: Command,
    /// Fixture file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Truncation order: arity cap for transfer, relation order for
    /// potential and moduli, top tower level for ncdef.
    #[arg(long)]
    order: usize,
    /// rationals, gaussian-rationals, f2, f3, ... or fp:<p>.
    #[arg(long, default_value = "rationals")]
    field: FieldSpec,
    /// Report file (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Seed for random fixtures and sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Arity cap for transfer, if different from --order.
    #[arg(long)]
    arity: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = PipelineConfig {
        command: args.command,
        input: args.input,
        order: args.order,
        arity: args.arity,
        field: args.field,
        out: args.out,
        seed: args.seed,
    };
    ExitCode::from(eql::run(&config) as u8)
}
