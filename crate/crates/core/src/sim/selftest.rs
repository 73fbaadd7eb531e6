//! Built-in consistency checks and the random check-node inputs they use.
//!
//! [`run`] is what `eae-sim selftest` executes: a fast subset of the
//! integration-test suite that can be run against an installed binary.

use rand::Rng;

use crate::bch::BchCode;
use crate::channel::{capacity, eae_probabilities, h2, ChannelParams};
use crate::eae::{FillPlan, TieRule};
use crate::emp::{
    lcea_bsc_cn_update, lcea_eaed_cn_update, lcea_eaedplus_cn_update, naive_emp_cn_update,
    CnInput, ComponentDecoder, LceaMode, UpdateRule,
};
use crate::error::Result;
use crate::graph::{DecoderConfig, FrameSeed, ProductCode};
use crate::rng::{stream, Purpose};
use crate::word::{Ternary, TernaryWord};

/// One random check-node input drawn around a random codeword.
pub struct CnCase {
    pub y: TernaryWord,
    pub r: TernaryWord,
    pub plan: FillPlan,
    pub tie: TieRule,
}

fn random_symbol<R: Rng + ?Sized>(rng: &mut R) -> Ternary {
    match rng.random_range(0..3) {
        0 => Ternary::Zero,
        1 => Ternary::One,
        _ => Ternary::Erasure,
    }
}

/// Draws `(y, r)` with `y_k = ? ⇒ r_k = ?`.
///
/// Erasure and flip densities are themselves random per draw so that inputs
/// range from clean words to words with more erasures than the design
/// distance.
pub fn random_cn_case<R: Rng + ?Sized>(code: &BchCode, rng: &mut R, binary: bool) -> CnCase {
    let n = code.n();
    let info: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
    let c = code.encode(&info).unwrap();
    let p_erase = if binary { 0.0 } else { rng.random_range(0.0..0.35) };
    let p_flip = rng.random_range(0.0..0.2);
    let p_differ = rng.random_range(0.0..0.4);
    let r: Vec<Ternary> = c
        .iter()
        .map(|&b| {
            if rng.random_bool(p_erase) {
                Ternary::Erasure
            } else if rng.random_bool(p_flip) {
                Ternary::from_bit(b ^ 1)
            } else {
                Ternary::from_bit(b)
            }
        })
        .collect();
    let y: Vec<Ternary> = r
        .iter()
        .zip(c.iter())
        .map(|(&rk, &ck)| {
            if !rng.random_bool(p_differ) {
                rk
            } else if rk.is_erasure() {
                random_symbol(rng)
            } else if rng.random_bool(0.7) {
                Ternary::from_bit(ck)
            } else {
                Ternary::from_bit(rng.random_range(0..2))
            }
        })
        .collect();
    let plan = FillPlan::random(n, rng);
    let tie = if rng.random_bool(0.5) {
        TieRule::PreferFirst
    } else {
        TieRule::Random { key: rng.random() }
    };
    CnCase {
        y: TernaryWord::new(y),
        r: TernaryWord::new(r),
        plan,
        tie,
    }
}

impl CnCase {
    pub fn input<'a>(&'a self, code: &'a BchCode) -> CnInput<'a> {
        CnInput {
            y: &self.y,
            r: &self.r,
            code,
            plan: &self.plan,
            tie: self.tie,
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn lcea_agreement(seed: u64, draws: usize, decoder: ComponentDecoder) -> Result<usize> {
    let code = BchCode::new(4, 2, false, 0)?;
    let mut rng = stream(seed, Purpose::Test, [decoder as u64, 0]);
    let mut mismatches = 0;
    for _ in 0..draws {
        let case = random_cn_case(&code, &mut rng, decoder == ComponentDecoder::Bdd);
        let input = case.input(&code);
        let naive = naive_emp_cn_update(&input, decoder)?;
        let fast = match decoder {
            ComponentDecoder::Bdd => lcea_bsc_cn_update(&input)?,
            ComponentDecoder::Eaed => lcea_eaed_cn_update(&input, LceaMode::Exact)?,
            ComponentDecoder::EaedPlus => lcea_eaedplus_cn_update(&input)?,
        };
        mismatches += (naive.w != fast.w) as usize;
    }
    Ok(mismatches)
}

/// Runs the built-in checks.
pub fn run(seed: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, decoder) in [
        ("lcea_eaed_matches_naive_emp", ComponentDecoder::Eaed),
        ("lcea_eaedplus_matches_naive_emp", ComponentDecoder::EaedPlus),
        ("lcea_bsc_matches_naive_bdd", ComponentDecoder::Bdd),
    ] {
        let draws = 2000;
        let bad = lcea_agreement(seed, draws, decoder)?;
        checks.push(Check {
            name,
            passed: bad == 0,
            detail: format!("{bad} mismatches in {draws} random check-node inputs"),
        });
    }

    let worst = (0..50)
        .map(|i| {
            let p = ChannelParams::from_db(-5.0 + 0.3 * i as f64, 0.0).unwrap();
            (capacity(&p) - (1.0 - h2(eae_probabilities(&p).delta))).abs()
        })
        .fold(0.0, f64::max);
    checks.push(Check {
        name: "capacity_reduces_to_bsc",
        passed: worst < 1e-12,
        detail: format!("max deviation {worst:e}"),
    });

    let pc = ProductCode::new(BchCode::new(5, 2, true, 0)?);
    let mut rng = stream(seed, Purpose::Test, [9, 0]);
    let info: Vec<u8> = (0..pc.info_len()).map(|_| rng.random_range(0..2)).collect();
    let array = pc.encode(&info)?;
    let rx = TernaryWord::from_bits(&array);
    let mut failures = 0;
    for rule in [UpdateRule::Imp, UpdateRule::EmpNaive, UpdateRule::Lcea, UpdateRule::HLcea] {
        for component in [ComponentDecoder::Bdd, ComponentDecoder::Eaed, ComponentDecoder::EaedPlus] {
            let cfg = DecoderConfig::new(rule, component);
            if cfg.validate().is_err() {
                continue;
            }
            let (dec, _) = pc.decode(&rx, &cfg, FrameSeed::new(seed, 0))?;
            failures += (dec != array) as usize;
        }
    }
    checks.push(Check {
        name: "noiseless_product_code_fixed_point",
        passed: failures == 0,
        detail: format!("{failures} rule/component pairs moved off the codeword"),
    });
    Ok(checks)
}
