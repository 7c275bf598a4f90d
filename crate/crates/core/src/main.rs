use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use orthokernel::suites::{render_json, render_text, run_suites, OutputFormat, SuiteConfig};
use orthokernel::Error;

/// Runs exact identity checks over a parameter grid and reports pass/fail.
#[derive(Parser, Debug)]
#[command(name = "orthokernel", version, about)]
struct Cli {
    /// Flat `key = value` config file, applied before the flags below.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Comma-separated suites: core, symmetric, jacobi, laguerre, hahn, hyp, limits, properties.
    #[arg(long)]
    suite: Option<String>,
    /// Comma-separated rationals, e.g. `-1/2,0,7/3`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Comma-separated Hahn lattice sizes.
    #[arg(long = "bigN")]
    big_n: Option<String>,
    #[arg(long)]
    nmax: Option<String>,
    /// `text` or `json`.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    jobs: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Restrict to these families, e.g. `legendre,hermite`.
    #[arg(long)]
    family: Option<String>,
}

fn build_config(cli: &Cli) -> Result<SuiteConfig, Error> {
    let mut config = SuiteConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        config.apply_file(&text)?;
    }
    let flags = [
        ("suite", &cli.suite),
        ("alpha", &cli.alpha),
        ("beta", &cli.beta),
        ("bigN", &cli.big_n),
        ("nmax", &cli.nmax),
        ("format", &cli.format),
        ("jobs", &cli.jobs),
        ("seed", &cli.seed),
        ("family", &cli.family),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            config.set(key, v)?;
        }
    }
    config.validate()?;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("orthokernel: {e}");
            return ExitCode::from(2);
        }
    };
    let (reports, code) = run_suites(&config);
    match config.format {
        OutputFormat::Json => println!("{}", render_json(&config, &reports)),
        OutputFormat::Text => print!("{}", render_text(&reports)),
    }
    ExitCode::from(code as u8)
}
