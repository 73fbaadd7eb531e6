use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use eae_fec::sim::output::run_config;
use eae_fec::sim::{selftest, Command, SimConfig};
use eae_fec::{Error, Result};

/// Error-and-erasure decoding simulator for product and staircase codes.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Cmd {
    /// Channel probabilities and capacity over an Es/N0 grid
    Capacity,
    /// Decoded bit error rate over an Es/N0 grid
    Ber,
    /// Noise threshold by bisection on Es/N0
    Threshold,
    /// BDD steps per decoded bit for every low-complexity rule
    Complexity,
    /// Quick built-in consistency checks
    Selftest,
}

#[derive(Args)]
struct Opts {
    /// key = value configuration file; a written .meta file replays its run
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Output directory
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Es/N0 in dB: a value, a list a,b,c or a range start:stop:step
    #[arg(long, global = true, allow_hyphen_values = true)]
    es_n0_db: Option<String>,
    /// A number, opt (capacity-optimal) or grid (best decoded BER)
    #[arg(long, global = true)]
    erasure_threshold: Option<String>,
    /// imp, emp, lcea or hlcea
    #[arg(long, global = true)]
    scheme: Option<String>,
    /// bdd, eaed or eaedplus
    #[arg(long, global = true)]
    component: Option<String>,
    /// nu,t[,ew][,shorten]
    #[arg(long, global = true)]
    code: Option<String>,
    /// pc or scc:L
    #[arg(long, global = true)]
    structure: Option<String>,
    /// Worker threads (0 = all cores); results do not depend on it
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

fn resolve(command: Command, opts: &Opts) -> Result<SimConfig> {
    let mut cfg = SimConfig::default();
    if let Some(path) = &opts.config {
        let text = std::fs::read_to_string(path)?;
        cfg.apply_text(&text, &path.display().to_string())?;
    }
    cfg.command = command;
    let flags = [
        ("seed", &opts.seed),
        ("es_n0_db", &opts.es_n0_db),
        ("erasure_threshold", &opts.erasure_threshold),
        ("scheme", &opts.scheme),
        ("component", &opts.component),
        ("code", &opts.code),
        ("structure", &opts.structure),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)
                .map_err(|m| Error::Config(format!("--{}: {m}", key.replace('_', "-"))))?;
        }
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool> {
    let command = match cli.command {
        Cmd::Capacity => Command::Capacity,
        Cmd::Ber => Command::Ber,
        Cmd::Threshold => Command::Threshold,
        Cmd::Complexity => Command::Complexity,
        Cmd::Selftest => {
            let seed = resolve(Command::Ber, &cli.opts)?.seed;
            let checks = selftest::run(seed)?;
            for c in &checks {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            return Ok(checks.iter().all(|c| c.passed));
        }
    };
    let cfg = resolve(command, &cli.opts)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.opts.threads)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let artifacts = pool.install(|| run_config(&cfg, &cli.opts.out))?;
    for path in artifacts.csv.iter().chain([&artifacts.metadata]) {
        println!("{}", path.display());
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
