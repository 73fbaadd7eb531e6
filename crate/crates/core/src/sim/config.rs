//! Flat `key = value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Unknown keys and
//! malformed values are rejected with their file and line. [`SimConfig::to_text`]
//! writes every key, so a written configuration replays the run exactly.

use std::fmt;
use std::str::FromStr;

use crate::emp::{ComponentDecoder, UpdateRule};
use crate::error::{Error, Result};
use crate::graph::DecoderConfig;

use super::StopRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Capacity,
    Ber,
    Threshold,
    Complexity,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Capacity => "capacity",
            Command::Ber => "ber",
            Command::Threshold => "threshold",
            Command::Complexity => "complexity",
        }
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "capacity" => Ok(Command::Capacity),
            "ber" => Ok(Command::Ber),
            "threshold" => Ok(Command::Threshold),
            "complexity" => Ok(Command::Complexity),
            _ => Err(format!("unknown command {s:?}")),
        }
    }
}

/// Component code parameters, written `nu,t[,ew][,shorten]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub nu: u32,
    pub t: usize,
    pub even_weight: bool,
    pub shortening: usize,
}

impl FromStr for CodeParams {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("code must be nu,t[,ew][,shorten], got {s:?}");
        let mut parts = s.split(',').map(str::trim);
        let nu = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
        let t = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
        let mut rest: Vec<&str> = parts.collect();
        let even_weight = rest.first() == Some(&"ew");
        if even_weight {
            rest.remove(0);
        }
        let shortening = match rest.as_slice() {
            [] => 0,
            [x] => x.parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        Ok(CodeParams { nu, t, even_weight, shortening })
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.nu, self.t)?;
        if self.even_weight {
            write!(f, ",ew")?;
        }
        if self.shortening > 0 {
            write!(f, ",{}", self.shortening)?;
        }
        Ok(())
    }
}

/// `pc` or `scc:L` with `L` blocks per chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureParams {
    Product,
    Staircase { blocks: usize },
}

impl FromStr for StructureParams {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.split_once(':') {
            None if s == "pc" => Ok(StructureParams::Product),
            Some(("scc", l)) => l
                .parse()
                .map(|blocks| StructureParams::Staircase { blocks })
                .map_err(|_| format!("bad chain length {l:?}")),
            _ => Err(format!("structure must be pc or scc:L, got {s:?}")),
        }
    }
}

impl fmt::Display for StructureParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureParams::Product => write!(f, "pc"),
            StructureParams::Staircase { blocks } => write!(f, "scc:{blocks}"),
        }
    }
}

/// How the erasure threshold `T` is chosen at each operating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdChoice {
    Fixed(f64),
    /// The capacity-maximizing threshold.
    Capacity,
    /// Best decoded BER over a grid with one local refinement.
    Grid,
}

impl FromStr for ThresholdChoice {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "opt" => Ok(ThresholdChoice::Capacity),
            "grid" => Ok(ThresholdChoice::Grid),
            x => match x.parse::<f64>() {
                Ok(t) if t >= 0.0 && t.is_finite() => Ok(ThresholdChoice::Fixed(t)),
                _ => Err(format!("erasure threshold must be a number ≥ 0, opt or grid, got {s:?}")),
            },
        }
    }
}

impl fmt::Display for ThresholdChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdChoice::Fixed(t) => write!(f, "{t}"),
            ThresholdChoice::Capacity => write!(f, "opt"),
            ThresholdChoice::Grid => write!(f, "grid"),
        }
    }
}

pub fn parse_rule(s: &str) -> std::result::Result<UpdateRule, String> {
    match s {
        "imp" => Ok(UpdateRule::Imp),
        "emp" => Ok(UpdateRule::EmpNaive),
        "lcea" => Ok(UpdateRule::Lcea),
        "hlcea" => Ok(UpdateRule::HLcea),
        _ => Err(format!("scheme must be imp, emp, lcea or hlcea, got {s:?}")),
    }
}

pub fn rule_name(r: UpdateRule) -> &'static str {
    match r {
        UpdateRule::Imp => "imp",
        UpdateRule::EmpNaive => "emp",
        UpdateRule::Lcea => "lcea",
        UpdateRule::HLcea => "hlcea",
    }
}

pub fn parse_component(s: &str) -> std::result::Result<ComponentDecoder, String> {
    match s {
        "bdd" => Ok(ComponentDecoder::Bdd),
        "eaed" => Ok(ComponentDecoder::Eaed),
        "eaedplus" => Ok(ComponentDecoder::EaedPlus),
        _ => Err(format!("component must be bdd, eaed or eaedplus, got {s:?}")),
    }
}

pub fn component_name(c: ComponentDecoder) -> &'static str {
    match c {
        ComponentDecoder::Bdd => "bdd",
        ComponentDecoder::Eaed => "eaed",
        ComponentDecoder::EaedPlus => "eaedplus",
    }
}

/// A list `a,b,c` or an inclusive range `start:stop:step` of Es/N0 values in dB.
pub fn parse_grid(s: &str) -> std::result::Result<Vec<f64>, String> {
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("bad number {x:?}"));
    if let [a, b, step] = s.split(':').collect::<Vec<_>>()[..] {
        let (a, b, step) = (num(a)?, num(b)?, num(step)?);
        if !(step > 0.0) || b < a {
            return Err(format!("bad range {s:?}"));
        }
        let count = ((b - a) / step + 1e-9).floor() as usize;
        // rounded to 1e-9 dB so that written grids are short and stable
        return Ok((0..=count)
            .map(|i| ((a + i as f64 * step) * 1e9).round() / 1e9)
            .collect());
    }
    let v = s.split(',').map(num).collect::<std::result::Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("empty grid".into());
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub command: Command,
    pub seed: u64,
    pub code: CodeParams,
    pub structure: StructureParams,
    pub scheme: UpdateRule,
    pub component: ComponentDecoder,
    pub es_n0_db: Vec<f64>,
    pub erasure_threshold: ThresholdChoice,
    pub half_iterations: usize,
    pub window_length: usize,
    pub window_iterations: usize,
    pub min_word_errors: u64,
    pub max_words: u64,
    pub target_ber: f64,
    pub bracket_low_db: f64,
    pub bracket_high_db: f64,
    pub precision_db: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        let dec = DecoderConfig::default();
        let stop = StopRule::default();
        SimConfig {
            command: Command::Ber,
            seed: 1,
            code: CodeParams { nu: 6, t: 2, even_weight: true, shortening: 0 },
            structure: StructureParams::Product,
            scheme: dec.rule,
            component: dec.component,
            es_n0_db: vec![3.0],
            erasure_threshold: ThresholdChoice::Fixed(0.0),
            half_iterations: dec.half_iterations,
            window_length: dec.window_length,
            window_iterations: dec.window_iterations,
            min_word_errors: stop.min_word_errors,
            max_words: stop.max_words,
            target_ber: 1e-4,
            bracket_low_db: 2.0,
            bracket_high_db: 5.0,
            precision_db: 0.05,
        }
    }
}

fn num<T: FromStr>(v: &str) -> std::result::Result<T, String> {
    v.parse().map_err(|_| format!("bad number {v:?}"))
}

impl SimConfig {
    pub const KEYS: [&'static str; 17] = [
        "command",
        "seed",
        "code",
        "structure",
        "scheme",
        "component",
        "es_n0_db",
        "erasure_threshold",
        "half_iterations",
        "window_length",
        "window_iterations",
        "min_word_errors",
        "max_words",
        "target_ber",
        "bracket_low_db",
        "bracket_high_db",
        "precision_db",
    ];

    /// Sets one key from its text value.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let v = value.trim();
        match key {
            "command" => self.command = v.parse()?,
            "seed" => self.seed = num(v)?,
            "code" => self.code = v.parse()?,
            "structure" => self.structure = v.parse()?,
            "scheme" => self.scheme = parse_rule(v)?,
            "component" => self.component = parse_component(v)?,
            "es_n0_db" => self.es_n0_db = parse_grid(v)?,
            "erasure_threshold" => self.erasure_threshold = v.parse()?,
            "half_iterations" => self.half_iterations = num(v)?,
            "window_length" => self.window_length = num(v)?,
            "window_iterations" => self.window_iterations = num(v)?,
            "min_word_errors" => self.min_word_errors = num(v)?,
            "max_words" => self.max_words = num(v)?,
            "target_ber" => self.target_ber = num(v)?,
            "bracket_low_db" => self.bracket_low_db = num(v)?,
            "bracket_high_db" => self.bracket_high_db = num(v)?,
            "precision_db" => self.precision_db = num(v)?,
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    fn get(&self, key: &str) -> String {
        match key {
            "command" => self.command.name().to_string(),
            "seed" => self.seed.to_string(),
            "code" => self.code.to_string(),
            "structure" => self.structure.to_string(),
            "scheme" => rule_name(self.scheme).to_string(),
            "component" => component_name(self.component).to_string(),
            "es_n0_db" => self
                .es_n0_db
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(","),
            "erasure_threshold" => self.erasure_threshold.to_string(),
            "half_iterations" => self.half_iterations.to_string(),
            "window_length" => self.window_length.to_string(),
            "window_iterations" => self.window_iterations.to_string(),
            "min_word_errors" => self.min_word_errors.to_string(),
            "max_words" => self.max_words.to_string(),
            "target_ber" => self.target_ber.to_string(),
            "bracket_low_db" => self.bracket_low_db.to_string(),
            "bracket_high_db" => self.bracket_high_db.to_string(),
            "precision_db" => self.precision_db.to_string(),
            _ => unreachable!("key list and getter out of sync"),
        }
    }

    /// Applies `key = value` lines on top of `self`.
    pub fn apply_text(&mut self, text: &str, file: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                file: file.to_string(),
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected key = value".into()))?;
            self.set(key.trim(), value).map_err(err)?;
        }
        Ok(())
    }

    pub fn parse(text: &str, file: &str) -> Result<Self> {
        let mut cfg = SimConfig::default();
        cfg.apply_text(text, file)?;
        Ok(cfg)
    }

    /// Every key, one per line, in a fixed order.
    pub fn to_text(&self) -> String {
        Self::KEYS
            .iter()
            .map(|k| format!("{k} = {}\n", self.get(k)))
            .collect()
    }

    pub fn decoder_config(&self) -> DecoderConfig {
        DecoderConfig {
            rule: self.scheme,
            component: self.component,
            half_iterations: self.half_iterations,
            window_length: self.window_length,
            window_iterations: self.window_iterations,
        }
    }

    pub fn stop_rule(&self) -> StopRule {
        StopRule {
            min_word_errors: self.min_word_errors,
            max_words: self.max_words,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.decoder_config().validate()?;
        if self.component == ComponentDecoder::Bdd
            && self.erasure_threshold != ThresholdChoice::Fixed(0.0)
            && self.command != Command::Capacity
        {
            return Err(Error::Config(
                "the hard-decision component decoder needs erasure_threshold = 0".into(),
            ));
        }
        if self.max_words == 0 || self.min_word_errors == 0 {
            return Err(Error::Config("stop rule counts must be positive".into()));
        }
        if !(self.target_ber > 0.0 && self.target_ber < 1.0) {
            return Err(Error::Config("target_ber must lie in (0, 1)".into()));
        }
        if !(self.precision_db > 0.0) || self.bracket_low_db >= self.bracket_high_db {
            return Err(Error::Config("need precision_db > 0 and bracket_low_db < bracket_high_db".into()));
        }
        if let StructureParams::Staircase { blocks } = self.structure {
            if blocks < self.window_length + 1 {
                return Err(Error::Config(format!(
                    "scc chain length {blocks} must exceed the window length {}",
                    self.window_length
                )));
            }
        }
        Ok(())
    }
}
