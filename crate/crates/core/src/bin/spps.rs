use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};
use subpure::codes::CodeKind;
use subpure::report::{self, Command, ErrorSite, Format, NoiseKind, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Analyze,
    ScanSnr,
    Simulate,
    Metrics,
}

/// Subsystem pseudo-pure state analysis.
#[derive(Debug, Parser)]
#[command(name = "spps", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// dfs2, dfs4x2, ns3 or qec3.
    #[arg(long)]
    code: Option<String>,
    /// Analyze the full pseudo-pure state on --n qubits.
    #[arg(long)]
    full_pp: bool,
    /// Physical qubits (largest N for scan-snr).
    #[arg(long)]
    n: Option<usize>,
    /// Logical qubits.
    #[arg(long)]
    l: Option<usize>,
    /// Syndrome qubits.
    #[arg(long)]
    s: Option<usize>,
    /// Logical weight, e.g. 1/4 or 0.25. Defaults to the optimum.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// none, collective-z or collective.
    #[arg(long)]
    noise: Option<String>,
    /// Dephasing angle or rotation angle in radians.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// Bit-flip error for qec3: none, x1, x2 or x3.
    #[arg(long)]
    error: Option<String>,
    /// Seed for random rotation axes and angles (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// json or csv.
    #[arg(long, default_value = "json")]
    format: String,
}

fn config(cli: &Cli) -> subpure::Result<RunConfig> {
    let mut cfg = RunConfig::new(match cli.command {
        Cmd::Analyze => Command::Analyze,
        Cmd::ScanSnr => Command::ScanSnr,
        Cmd::Simulate => Command::Simulate,
        Cmd::Metrics => Command::Metrics,
    });
    cfg.code = cli.code.as_deref().map(str::parse::<CodeKind>).transpose()?;
    cfg.full_pp = cli.full_pp;
    cfg.n = cli.n;
    cfg.l = cli.l;
    cfg.s = cli.s;
    cfg.a = cli.a.as_deref().map(report::parse_weight).transpose()?;
    cfg.noise = cli.noise.as_deref().map(str::parse::<NoiseKind>).transpose()?;
    cfg.phi = cli.phi;
    cfg.error = cli.error.as_deref().map(str::parse::<ErrorSite>).transpose()?;
    cfg.seed = cli.seed;
    cfg.format = cli.format.parse::<Format>()?;
    Ok(cfg)
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    let line = message.to_string().replace('\n', " ");
    eprintln!("error: {}", line.trim());
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            return fail(first.trim_start_matches("error: "));
        }
    };
    let text = match config(&cli).and_then(|cfg| report::run(&cfg)) {
        Ok(text) => text,
        Err(e) => return fail(e),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(format!("cannot write {}: {e}", path.display())),
        },
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
    }
}
