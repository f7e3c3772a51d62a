use clap::Parser;
use pvgauge::cli::{parse_document, run_command, CliError, Command, RunOptions};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact gauge-class computations for linear differential systems over Q(x).
#[derive(Parser)]
#[command(name = "pvgauge", version, about)]
struct Args {
    /// One of: gauge, hmul, equivalent, trivial, intertwine, compose, rep, check
    command: String,
    /// Input document with matrix declarations (and optional bounds/galois blocks)
    #[arg(long)]
    input: PathBuf,
    /// Emit the machine-readable JSON report instead of text
    #[arg(long)]
    json: bool,
    /// Separate document providing a user-supplied bounds block
    #[arg(long)]
    bounds: Option<PathBuf>,
    /// PRNG seed for the invertibility search (echoed in the report)
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for candidate evaluation (output is identical for any value)
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn run(args: &Args) -> Result<(String, i32), CliError> {
    let cmd = Command::from_name(&args.command).ok_or_else(|| {
        CliError::Input(format!(
            "unknown command '{}'; expected one of gauge, hmul, equivalent, trivial, intertwine, compose, rep, check",
            args.command
        ))
    })?;
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {}", args.input.display(), e)))?;
    let mut doc = parse_document(&text)?;
    if let Some(bounds_path) = &args.bounds {
        let btext = std::fs::read_to_string(bounds_path).map_err(|e| {
            CliError::Input(format!("cannot read {}: {}", bounds_path.display(), e))
        })?;
        let bdoc = parse_document(&btext)?;
        let bounds = bdoc
            .bounds
            .ok_or_else(|| CliError::Input("bounds file has no bounds block".into()))?;
        doc.bounds = Some(bounds);
    }
    let opts = RunOptions {
        seed: args.seed.unwrap_or_else(|| RunOptions::default().seed),
        threads: args.threads.max(1),
    };
    let (report, code) = run_command(cmd, &doc, &opts)?;
    let rendered = if args.json {
        report.to_json()
    } else {
        report.to_text()
    };
    Ok((rendered, code))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok((rendered, code)) => {
            print!("{}", rendered);
            ExitCode::from(u8::try_from(code).unwrap_or(1))
        }
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::from(u8::try_from(err.exit_code()).unwrap_or(2))
        }
    }
}
