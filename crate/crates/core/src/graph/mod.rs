//! Code graphs and iterative decoding schedules.
//!
//! [`product`] decodes n×n product codes by alternating row and column
//! half-iterations; [`staircase`] decodes zero-initialized staircase chains
//! with a sliding window. Both drive the check-node rules of
//! [`crate::emp`] and share the configuration and randomness defined here.

pub mod product;
pub mod staircase;

use std::ops::AddAssign;

use rand::{Rng, RngCore};

use crate::eae::{FillPlan, TieRule};
use crate::emp::{CnStats, ComponentDecoder, UpdateRule};
use crate::error::{Error, Result};
use crate::rng::{mix64, pack, stream, Purpose};
use crate::word::Ternary;

pub use product::ProductCode;
pub use staircase::StaircaseCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecoderConfig {
    pub rule: UpdateRule,
    pub component: ComponentDecoder,
    /// Product codes: number of half-iterations (one plane of CN updates each).
    pub half_iterations: usize,
    /// Staircase codes: blocks per window.
    pub window_length: usize,
    /// Staircase codes: CN update rounds per window position.
    pub window_iterations: usize,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            rule: UpdateRule::HLcea,
            component: ComponentDecoder::Eaed,
            half_iterations: 20,
            window_length: 7,
            window_iterations: 3,
        }
    }
}

impl DecoderConfig {
    pub fn new(rule: UpdateRule, component: ComponentDecoder) -> Self {
        DecoderConfig {
            rule,
            component,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rule == UpdateRule::HLcea && self.component == ComponentDecoder::EaedPlus {
            return Err(Error::Config(
                "the heuristic rule is defined for the EaED component decoder only".into(),
            ));
        }
        if self.half_iterations == 0 || self.window_length < 2 || self.window_iterations == 0 {
            return Err(Error::Config("iteration counts and window length must be positive, window length at least 2".into()));
        }
        Ok(())
    }
}

/// Counters of one decoding run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecodeStats {
    pub cn: CnStats,
    pub cn_updates: u64,
    /// Half-iterations (product) or window rounds (staircase) actually run.
    pub rounds: u64,
    /// Whether the product decoder stopped on a valid codeword array.
    pub terminated_early: bool,
}

impl AddAssign for DecodeStats {
    fn add_assign(&mut self, rhs: Self) {
        self.cn += rhs.cn;
        self.cn_updates += rhs.cn_updates;
        self.rounds += rhs.rounds;
        self.terminated_early |= rhs.terminated_early;
    }
}

/// Randomness of one transmitted frame.
///
/// Fill plans and tie keys are pure functions of `(seed, frame, round, cn)`,
/// so two decoders run with the same `FrameSeed` see the same randomness at
/// every check node regardless of update rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameSeed {
    pub seed: u64,
    pub frame: u64,
}

impl FrameSeed {
    pub fn new(seed: u64, frame: u64) -> Self {
        FrameSeed { seed, frame }
    }

    pub fn fill_plan(&self, n: usize, round: u64, cn: u64) -> FillPlan {
        FillPlan::random(n, &mut stream(self.seed, Purpose::Fill, [self.frame, pack(round, cn)]))
    }

    pub fn tie(&self, round: u64, cn: u64) -> TieRule {
        let key = mix64(self.seed ^ mix64(self.frame ^ mix64(pack(round, cn) ^ Purpose::Tie as u64)));
        TieRule::Random { key }
    }

    pub fn decision_rng(&self) -> impl RngCore {
        stream(self.seed, Purpose::Decision, [self.frame, 0])
    }
}

/// Final bit of a variable node from its two incoming messages.
///
/// One of the two messages is picked uniformly; an erasure becomes a uniform
/// random bit.
pub fn vn_final_decision<R: Rng + ?Sized>(m1: Ternary, m2: Ternary, rng: &mut R) -> u8 {
    let m = if rng.random::<bool>() { m1 } else { m2 };
    m.bit().unwrap_or_else(|| rng.random_range(0..2))
}

/// One check-node update as seen by a trace observer.
#[derive(Clone, Copy, Debug)]
pub struct CnEvent<'a> {
    pub round: u64,
    pub cn: usize,
    pub y: &'a [Ternary],
    pub r: &'a [Ternary],
    pub w: &'a [Ternary],
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn final_decision_frequencies() {
        let mut rng = stream(5, Purpose::Test, [0, 0]);
        assert_eq!(vn_final_decision(Ternary::One, Ternary::One, &mut rng), 1);
        let draws = 100_000;
        let ones: u32 = (0..draws)
            .map(|_| vn_final_decision(Ternary::Zero, Ternary::One, &mut rng) as u32)
            .sum();
        // 5 standard deviations of a fair binomial
        assert!((ones as f64 - 50_000.0).abs() < 5.0 * 158.2);
        let ones: u32 = (0..draws)
            .map(|_| vn_final_decision(Ternary::Erasure, Ternary::Erasure, &mut rng) as u32)
            .sum();
        assert!((ones as f64 - 50_000.0).abs() < 5.0 * 158.2);
    }

    #[test]
    fn config_rules() {
        assert!(DecoderConfig::default().validate().is_ok());
        assert!(DecoderConfig::new(UpdateRule::HLcea, ComponentDecoder::EaedPlus)
            .validate()
            .is_err());
    }
}
