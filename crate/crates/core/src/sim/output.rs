//! Command execution with CSV output and a replayable metadata sidecar.
//!
//! Each run writes `<command>.csv` (and `threshold_probes.csv` for
//! threshold searches) plus `<command>.meta`. The sidecar is a complete
//! configuration file preceded by `#` comment lines, so passing it back as
//! `--config` repeats the run and rewrites identical CSV bytes.

use std::fs;
use std::path::{Path, PathBuf};

use crate::channel::{capacity, eae_probabilities, optimize_threshold, ChannelParams};
use crate::error::{Error, Result};

use super::config::{component_name, rule_name};
use super::threshold::probe;
use super::{
    find_threshold, sweep_complexity, Command, RunStats, Setup, SimConfig, StructureParams,
    ThresholdChoice, ThresholdSearch,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Files written by one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifacts {
    pub csv: Vec<PathBuf>,
    pub metadata: PathBuf,
}

fn f(x: f64) -> String {
    x.to_string()
}

fn search(cfg: &SimConfig) -> ThresholdSearch {
    ThresholdSearch {
        target_ber: cfg.target_ber,
        low_db: cfg.bracket_low_db,
        high_db: cfg.bracket_high_db,
        precision_db: cfg.precision_db,
        choice: cfg.erasure_threshold,
        stop: cfg.stop_rule(),
        seed: cfg.seed,
    }
}

const STATS_HEADER: [&str; 13] = [
    "words",
    "word_errors",
    "bits",
    "bit_errors",
    "ber",
    "wer",
    "channel_ber",
    "erasure_rate",
    "bdd_steps",
    "steps_per_bit",
    "steps_per_cn",
    "redecodes",
    "redecodes_per_cn",
];

fn stats_fields(s: &RunStats) -> Vec<String> {
    vec![
        s.words_sent.to_string(),
        s.word_errors.to_string(),
        s.bits_sent.to_string(),
        s.bit_errors.to_string(),
        f(s.ber()),
        f(s.wer()),
        f(s.channel_ber()),
        f(if s.bits_sent == 0 { 0.0 } else { s.channel_erasures as f64 / s.bits_sent as f64 }),
        s.bdd_steps.to_string(),
        f(s.steps_per_bit()),
        f(s.steps_per_cn()),
        s.redecodes.to_string(),
        f(s.redecodes_per_cn()),
    ]
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn with_stats_header(lead: &[&'static str]) -> Vec<&'static str> {
    lead.iter().chain(STATS_HEADER.iter()).copied().collect()
}

fn metadata(cfg: &SimConfig, setup: Option<&Setup>) -> String {
    let mut m = format!("# eae-sim {VERSION}\n");
    if let Some(setup) = setup {
        let spec = setup.component().spec();
        m += &format!(
            "# component code: n = {}, k = {}, t = {}, d_des = {}, even_weight = {}\n",
            spec.n, spec.k, spec.t, spec.d_des, spec.even_weight
        );
        m += &format!("# code rate: {}\n", setup.rate());
        m += match cfg.structure {
            StructureParams::Product => "# bit errors counted over all n^2 array bits\n",
            StructureParams::Staircase { .. } => {
                "# bit errors counted over blocks finalized from a full window\n"
            }
        };
        m += "# complexity: BDD steps per decoded bit and per check-node update\n";
        m += &format!(
            "# decoder: {} with {}\n",
            rule_name(cfg.scheme),
            component_name(cfg.component)
        );
    }
    m + &cfg.to_text()
}

fn fixed_or_capacity(choice: ThresholdChoice, es_n0: f64) -> Result<f64> {
    match choice {
        ThresholdChoice::Fixed(t) => Ok(t),
        ThresholdChoice::Capacity => Ok(optimize_threshold(es_n0).0),
        ThresholdChoice::Grid => Err(Error::Config(
            "this command takes a fixed erasure threshold or opt".into(),
        )),
    }
}

/// Executes the configured command and writes its artifacts into `out_dir`.
pub fn run_config(cfg: &SimConfig, out_dir: &Path) -> Result<Artifacts> {
    cfg.validate()?;
    fs::create_dir_all(out_dir)?;
    let name = cfg.command.name();
    let main_csv = out_dir.join(format!("{name}.csv"));
    let mut csv = vec![main_csv.clone()];
    let setup = match cfg.command {
        Command::Capacity => None,
        _ => Some(Setup::new(&cfg.code, cfg.structure)?),
    };
    let dec = cfg.decoder_config();

    match cfg.command {
        Command::Capacity => {
            let mut rows = Vec::new();
            for &db in &cfg.es_n0_db {
                let es_n0 = ChannelParams::from_db(db, 0.0)?.es_n0;
                let p = ChannelParams::new(es_n0, fixed_or_capacity(cfg.erasure_threshold, es_n0)?)?;
                let s = eae_probabilities(&p);
                rows.push(vec![f(db), f(p.threshold), f(s.delta), f(s.epsilon), f(capacity(&p))]);
            }
            write_csv(&main_csv, &["es_n0_db", "T", "delta", "epsilon", "capacity"], &rows)?;
        }
        Command::Ber => {
            let setup = setup.as_ref().expect("setup built for ber");
            let s = search(cfg);
            let mut rows = Vec::new();
            for &db in &cfg.es_n0_db {
                let p = probe(setup, &dec, db, &s)?;
                let mut row = vec![f(db), f(p.threshold)];
                row.extend(stats_fields(&p.stats));
                rows.push(row);
            }
            write_csv(&main_csv, &with_stats_header(&["es_n0_db", "T"]), &rows)?;
        }
        Command::Threshold => {
            let setup = setup.as_ref().expect("setup built for threshold");
            let r = find_threshold(setup, &dec, &search(cfg))?;
            write_csv(
                &main_csv,
                &["threshold_db", "low_db", "high_db", "t_opt", "target_ber", "probes"],
                &[vec![
                    f(r.threshold_db),
                    f(r.low_db),
                    f(r.high_db),
                    f(r.t_opt),
                    f(r.target_ber),
                    r.probes.len().to_string(),
                ]],
            )?;
            let rows: Vec<Vec<String>> = r
                .probes
                .iter()
                .map(|p| {
                    let mut row = vec![f(p.es_n0_db), f(p.threshold), p.passed.to_string()];
                    row.extend(stats_fields(&p.stats));
                    row
                })
                .collect();
            let probes_csv = out_dir.join("threshold_probes.csv");
            write_csv(&probes_csv, &with_stats_header(&["es_n0_db", "T", "passed"]), &rows)?;
            csv.push(probes_csv);
        }
        Command::Complexity => {
            let setup = setup.as_ref().expect("setup built for complexity");
            let points = sweep_complexity(
                setup,
                &dec,
                &cfg.es_n0_db,
                cfg.erasure_threshold,
                &cfg.stop_rule(),
                cfg.seed,
            )?;
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|p| {
                    let mut row = vec![f(p.es_n0_db), p.variant.name.to_string(), f(p.threshold)];
                    row.extend(stats_fields(&p.stats));
                    row
                })
                .collect();
            write_csv(&main_csv, &with_stats_header(&["es_n0_db", "variant", "T"]), &rows)?;
        }
    }

    let metadata_path = out_dir.join(format!("{name}.meta"));
    fs::write(&metadata_path, metadata(cfg, setup.as_ref()))?;
    Ok(Artifacts {
        csv,
        metadata: metadata_path,
    })
}
