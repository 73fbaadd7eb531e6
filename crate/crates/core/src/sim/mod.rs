//! Monte Carlo simulation harness.
//!
//! Every frame is a pure function of `(seed, frame index, channel
//! parameters, decoder configuration)`: info bits, noise, fill plans, ties
//! and final decisions all come from counter-based streams. The noise of a
//! frame does not depend on Es/N0 or the erasure threshold, so runs at
//! different operating points see common random numbers.
//!
//! [`estimate_ber`] evaluates frames in parallel but accumulates them in
//! frame order and stops at the exact frame that meets the [`StopRule`], so
//! results do not depend on the number of threads.

pub mod complexity;
pub mod config;
pub mod output;
pub mod selftest;
pub mod threshold;

use std::ops::AddAssign;

use rand::Rng;
use rayon::prelude::*;

use crate::bch::BchCode;
use crate::channel::{quantize_with_noise, unit_noise, ChannelParams};
use crate::emp::CaseHistogram;
use crate::error::{Error, Result};
use crate::graph::{DecodeStats, DecoderConfig, FrameSeed, ProductCode, StaircaseCode};
use crate::rng::{stream, Purpose};
use crate::word::Ternary;

pub use complexity::{sweep_complexity, ComplexityPoint, Variant};
pub use config::{CodeParams, Command, SimConfig, StructureParams, ThresholdChoice};
pub use threshold::{find_threshold, Probe, ThresholdResult, ThresholdSearch};

/// Exact counters of a simulation run. Merging is field-wise addition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub bits_sent: u64,
    pub bit_errors: u64,
    pub words_sent: u64,
    pub word_errors: u64,
    /// Hard-decision (sign) errors at the channel output over the counted bits.
    pub channel_bit_errors: u64,
    pub channel_erasures: u64,
    pub bdd_steps: u64,
    pub redecodes: u64,
    pub cn_updates: u64,
    /// Bits the decoder produced decisions for; normalizes complexity.
    pub decoded_bits: u64,
    pub cases: CaseHistogram,
}

impl RunStats {
    pub fn ber(&self) -> f64 {
        ratio(self.bit_errors, self.bits_sent)
    }

    pub fn wer(&self) -> f64 {
        ratio(self.word_errors, self.words_sent)
    }

    pub fn channel_ber(&self) -> f64 {
        ratio(self.channel_bit_errors, self.bits_sent)
    }

    /// Normalized complexity: BDD steps per decoded bit.
    pub fn steps_per_bit(&self) -> f64 {
        ratio(self.bdd_steps, self.decoded_bits)
    }

    pub fn steps_per_cn(&self) -> f64 {
        ratio(self.bdd_steps, self.cn_updates)
    }

    pub fn redecodes_per_cn(&self) -> f64 {
        ratio(self.redecodes, self.cn_updates)
    }

    fn add_decode(&mut self, d: &DecodeStats) {
        self.bdd_steps += d.cn.bdd_steps;
        self.redecodes += d.cn.redecodes;
        self.cn_updates += d.cn_updates;
        self.cases += d.cn.cases;
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

impl AddAssign for RunStats {
    fn add_assign(&mut self, rhs: Self) {
        self.bits_sent += rhs.bits_sent;
        self.bit_errors += rhs.bit_errors;
        self.words_sent += rhs.words_sent;
        self.word_errors += rhs.word_errors;
        self.channel_bit_errors += rhs.channel_bit_errors;
        self.channel_erasures += rhs.channel_erasures;
        self.bdd_steps += rhs.bdd_steps;
        self.redecodes += rhs.redecodes;
        self.cn_updates += rhs.cn_updates;
        self.decoded_bits += rhs.decoded_bits;
        self.cases += rhs.cases;
    }
}

/// Stop after `min_word_errors` word errors or `max_words` words, whichever first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StopRule {
    pub min_word_errors: u64,
    pub max_words: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            min_word_errors: 50,
            max_words: 100_000,
        }
    }
}

impl StopRule {
    pub fn reached(&self, s: &RunStats) -> bool {
        s.word_errors >= self.min_word_errors || s.words_sent >= self.max_words
    }
}

/// Code structure being simulated.
#[derive(Clone, Debug)]
pub enum Setup {
    Product(ProductCode),
    /// A chain of `blocks` blocks, the first being the zero reference block.
    Staircase { code: StaircaseCode, blocks: usize },
}

impl Setup {
    pub fn new(code: &CodeParams, structure: StructureParams) -> Result<Self> {
        let component = BchCode::new(code.nu, code.t, code.even_weight, code.shortening)?;
        Ok(match structure {
            StructureParams::Product => Setup::Product(ProductCode::new(component)),
            StructureParams::Staircase { blocks } => Setup::Staircase {
                code: StaircaseCode::new(component)?,
                blocks,
            },
        })
    }

    pub fn component(&self) -> &BchCode {
        match self {
            Setup::Product(pc) => pc.component(),
            Setup::Staircase { code, .. } => code.component(),
        }
    }

    pub fn rate(&self) -> f64 {
        match self {
            Setup::Product(pc) => pc.rate(),
            Setup::Staircase { code, .. } => code.rate(),
        }
    }
}

fn random_bits(len: usize, seed: u64, frame: u64) -> Vec<u8> {
    let mut rng = stream(seed, Purpose::Info, [frame, 0]);
    (0..len).map(|_| rng.random_range(0..2u8)).collect()
}

fn noise(len: usize, seed: u64, frame: u64, block: u64) -> Vec<f64> {
    unit_noise(len, &mut stream(seed, Purpose::Noise, [frame, block]))
}

fn count_bits(sent: &[u8], decided: &[u8], rx: &[Ternary], hard: &[Ternary], s: &mut RunStats) {
    let errors = sent.iter().zip(decided).filter(|(a, b)| a != b).count() as u64;
    s.bits_sent += sent.len() as u64;
    s.bit_errors += errors;
    s.words_sent += 1;
    s.word_errors += (errors > 0) as u64;
    s.channel_bit_errors += sent.iter().zip(hard).filter(|(&b, h)| !h.is_bit(b)).count() as u64;
    s.channel_erasures += rx.iter().filter(|x| x.is_erasure()).count() as u64;
}

/// Simulates one frame: encode, transmit, quantize, decode, count.
pub fn simulate_frame(
    setup: &Setup,
    cfg: &DecoderConfig,
    params: &ChannelParams,
    seed: u64,
    frame: u64,
) -> Result<RunStats> {
    let hard_params = ChannelParams {
        threshold: 0.0,
        ..*params
    };
    let mut s = RunStats::default();
    match setup {
        Setup::Product(pc) => {
            let sent = pc.encode(&random_bits(pc.info_len(), seed, frame))?;
            let z = noise(sent.len(), seed, frame, 0);
            let rx = quantize_with_noise(&sent, &z, params);
            let hard = quantize_with_noise(&sent, &z, &hard_params);
            let (decided, d) = pc.decode(&rx, cfg, FrameSeed::new(seed, frame))?;
            count_bits(&sent, &decided, &rx, &hard, &mut s);
            s.decoded_bits += sent.len() as u64;
            s.add_decode(&d);
        }
        Setup::Staircase { code, blocks } => {
            let info = random_bits(code.block_info_len() * (blocks - 1), seed, frame);
            let chain = code.encode(&info, *blocks)?;
            let mut rx = Vec::with_capacity(*blocks);
            let mut hard = Vec::with_capacity(*blocks);
            for (i, block) in chain.iter().enumerate() {
                let z = noise(block.len(), seed, frame, i as u64);
                rx.push(quantize_with_noise(block, &z, params));
                hard.push(quantize_with_noise(block, &z, &hard_params));
            }
            let (decided, d) = code.decode(&rx, cfg, FrameSeed::new(seed, frame))?;
            for i in StaircaseCode::counted_blocks(*blocks, cfg.window_length) {
                count_bits(&chain[i], &decided[i], &rx[i], &hard[i], &mut s);
            }
            s.decoded_bits += ((blocks - 1) * code.block_len()) as u64;
            s.add_decode(&d);
        }
    }
    Ok(s)
}

/// Monte Carlo estimate at one operating point; frames are numbered from 0.
pub fn estimate_ber(
    setup: &Setup,
    cfg: &DecoderConfig,
    params: &ChannelParams,
    stop: &StopRule,
    seed: u64,
) -> Result<RunStats> {
    cfg.validate()?;
    if cfg.component == crate::emp::ComponentDecoder::Bdd && params.threshold > 0.0 {
        return Err(Error::Config(
            "the hard-decision component decoder needs erasure threshold 0".into(),
        ));
    }
    if stop.max_words == 0 {
        return Err(Error::Config("max_words must be positive".into()));
    }
    let mut total = RunStats::default();
    let mut next = 0u64;
    let mut batch = 4 * rayon::current_num_threads().max(1) as u64;
    loop {
        let frames: Vec<RunStats> = (next..next + batch)
            .into_par_iter()
            .map(|f| simulate_frame(setup, cfg, params, seed, f))
            .collect::<Result<_>>()?;
        for s in frames {
            total += s;
            if stop.reached(&total) {
                return Ok(total);
            }
        }
        next += batch;
        batch = (batch * 2).min(1024);
    }
}
