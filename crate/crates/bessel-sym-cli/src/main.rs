//! `bessel-sym` — sweep the finite-sum identities over parameter grids and
//! emit a machine-readable verification report.
//!
//! Exit codes: 0 all evaluated points passed; 1 at least one failed;
//! 2 usage or I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use bessel_sym_cli::config::{parse_grid, IntRange, OutputFormat, SweepConfig};
use bessel_sym_cli::{emit_report, run_sweep};

#[derive(Parser, Debug)]
#[command(
    name = "bessel-sym",
    version,
    about = "Verify symmetric finite Bessel/hypergeometric sum identities over parameter grids",
    after_help = "Grids: integer ranges are a..b[..step]; real grids are comma lists \
(rationals like 7/3 allowed) or linspace triples lo:hi:count.\n\
Precedence: --config file values override flags; BESSEL_SYM_TOL is the \
lowest-precedence tolerance fallback, then per-identity defaults \
(1e-9, or 1e-6 for the quadrature-backed eq24)."
)]
struct Cli {
    /// Identities to sweep (comma separated), e.g. theorem1,eq5,eq19
    #[arg(long, value_delimiter = ',')]
    identity: Vec<String>,

    /// Integer range for m: a..b[..step]
    #[arg(long)]
    m: Option<String>,

    /// Integer range for n: a..b[..step]
    #[arg(long)]
    n: Option<String>,

    /// Real grid for z: list or lo:hi:count
    #[arg(long)]
    z: Option<String>,

    /// Real grid for x: list or lo:hi:count
    #[arg(long)]
    x: Option<String>,

    /// Real grid for s: list or lo:hi:count
    #[arg(long)]
    s: Option<String>,

    /// Real grid for a: list or lo:hi:count (exact rationals p/q honoured)
    #[arg(long)]
    a: Option<String>,

    /// Real grid for b: list or lo:hi:count
    #[arg(long)]
    b: Option<String>,

    /// Real grid for lambda: list or lo:hi:count
    #[arg(long)]
    lambda: Option<String>,

    /// Condition-scaled relative tolerance for every identity
    #[arg(long)]
    tol: Option<f64>,

    /// Report format
    #[arg(long, default_value = "json")]
    format: String,

    /// Output path (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads; the grid is partitioned statically so reports are
    /// identical for any value
    #[arg(long, default_value_t = 1)]
    jobs: u32,

    /// Flat key = value config file; file settings override flags
    #[arg(long)]
    config: Option<PathBuf>,
}

fn build_config(cli: &Cli) -> Result<SweepConfig, String> {
    let mut config = SweepConfig::default();
    if !cli.identity.is_empty() {
        config.identities = SweepConfig::parse_identities(&cli.identity.join(","))
            .map_err(|e| e.to_string())?;
    }
    let range = |text: &Option<String>| -> Result<Option<IntRange>, String> {
        text.as_deref()
            .map(IntRange::parse)
            .transpose()
            .map_err(|e| e.to_string())
    };
    let grid = |text: &Option<String>, name: &str| {
        text.as_deref()
            .map(parse_grid)
            .transpose()
            .map_err(|e| format!("--{name}: {e}"))
    };
    config.m = range(&cli.m)?;
    config.n = range(&cli.n)?;
    config.z = grid(&cli.z, "z")?;
    config.x = grid(&cli.x, "x")?;
    config.s = grid(&cli.s, "s")?;
    config.a = grid(&cli.a, "a")?;
    config.b = grid(&cli.b, "b")?;
    config.lambda = grid(&cli.lambda, "lambda")?;
    config.tol = cli.tol;
    config.format = OutputFormat::parse(&cli.format).map_err(|e| e.to_string())?;
    config.out = cli.out.clone();
    config.jobs = cli.jobs;

    // BESSEL_SYM_TOL sits below the flag
    if config.tol.is_none() {
        if let Ok(text) = std::env::var("BESSEL_SYM_TOL") {
            let tol: f64 = text
                .parse()
                .map_err(|_| format!("BESSEL_SYM_TOL: bad tolerance `{text}`"))?;
            config.tol = Some(tol);
        }
    }

    // and the config file sits above everything
    if let Some(path) = &cli.config {
        let contents = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        config.apply_file(&contents).map_err(|e| e.to_string())?;
    }
    Ok(config)
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    let config = build_config(&cli)?;
    let report = run_sweep(&config).map_err(|e| e.to_string())?;
    let bytes = emit_report(&report, config.format);
    match &config.out {
        Some(path) => {
            std::fs::write(path, &bytes)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        None => {
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| format!("cannot write report: {e}"))?;
        }
    }
    let s = &report.summary;
    eprintln!(
        "bessel-sym: {} points, {} passed, {} failed, {} skipped (poles), {} warnings in {:.3}s",
        s.total,
        s.passed,
        s.failed,
        s.skipped_poles,
        s.warnings,
        report.duration.as_secs_f64()
    );
    Ok(if s.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("bessel-sym: error: {message}");
            ExitCode::from(2)
        }
    }
}
