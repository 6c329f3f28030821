use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use crystalline::report::{input_digest, render, OutputFormat, Status};
use crystalline::workspace::{parse, run};
use crystalline::Bounds;

/// Finite groupoids, group actions, and their linear representation
/// theory: runs the tasks declared in a workspace file and prints a
/// deterministic report.
#[derive(Parser)]
#[command(name = "crystalline", version)]
struct Cli {
    /// Workspace file to execute.
    input: PathBuf,

    /// Seed for the numerical block-splitting steps.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Largest group order accepted during closure and cohomology.
    #[arg(long, default_value_t = crystalline::DEFAULT_MAX_ORDER)]
    max_order: usize,

    /// Bound on functor-enumeration search size.
    #[arg(long, default_value_t = crystalline::DEFAULT_MAX_ENUM)]
    max_enum: usize,

    /// Output format: text | json-like.
    #[arg(long, default_value = "text")]
    format: String,

    /// Include wall-clock timing in the report (breaks byte-for-byte
    /// reproducibility).
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format.as_str() {
        "text" => OutputFormat::Text,
        "json-like" => OutputFormat::JsonLike,
        other => {
            eprintln!("error: unknown format '{other}' (expected text or json-like)");
            return ExitCode::from(2);
        }
    };
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(2);
        }
    };
    let started = Instant::now();
    let doc = match parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let bounds = Bounds {
        max_order: cli.max_order,
        max_enum: cli.max_enum,
    };
    let reports = match run(&doc, &bounds, cli.seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let timing = cli.timing.then(|| started.elapsed().as_millis());
    print!(
        "{}",
        render(&reports, cli.seed, &input_digest(&text), format, timing)
    );
    if reports.iter().any(|r| matches!(r.status, Status::Error(_))) {
        ExitCode::from(2)
    } else if reports.iter().any(|r| r.status == Status::VerdictFalse) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
