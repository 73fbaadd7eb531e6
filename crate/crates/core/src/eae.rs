//! Error-and-erasure component decoders.
//!
//! [`eaed`] fills the erasures of a ternary word with two complementary binary
//! patterns, decodes both with BDD, and keeps the result that agrees best with
//! the non-erased symbols. [`eaedplus`] succeeds exactly when the input lies in
//! the ternary sphere `2·d_nE(y, c) + |E(y)| < d_des` of some codeword `c`.

use rand::Rng;

use crate::bch::{BchCode, DecodeStatus};
use crate::rng::mix64;
use crate::word::{count_erasures, BinaryWord, Ternary, TernaryWord};

/// One of the two complementary erasure fills.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fill {
    First,
    Second,
}

impl Fill {
    pub const BOTH: [Fill; 2] = [Fill::First, Fill::Second];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn other(self) -> Fill {
        match self {
            Fill::First => Fill::Second,
            Fill::Second => Fill::First,
        }
    }
}

/// Full-length base vector for the erasure fills.
///
/// Fill 1 writes `base[e]` at an erased position `e`, fill 2 writes its
/// complement. Because the base covers every position, words whose erasure
/// sets differ in one place still see the same fill values everywhere else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillPlan {
    base: BinaryWord,
}

impl FillPlan {
    pub fn new(base: BinaryWord) -> Self {
        FillPlan { base }
    }

    pub fn zeros(n: usize) -> Self {
        FillPlan::new(BinaryWord::zeros(n))
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut bits = Vec::with_capacity(n);
        while bits.len() < n {
            let word: u64 = rng.random();
            bits.extend((0..64.min(n - bits.len())).map(|i| ((word >> i) & 1) as u8));
        }
        FillPlan::new(BinaryWord::new(bits))
    }

    pub fn base(&self) -> &BinaryWord {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Fill value `p_i` written at position `k` when it is erased.
    #[inline]
    pub fn value(&self, fill: Fill, k: usize) -> u8 {
        self.base[k] ^ (fill == Fill::Second) as u8
    }
}

/// How equal-distance ties between two successful fills are resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieRule {
    /// Deterministically keep fill 1.
    PreferFirst,
    /// Fair coin derived from `key`; see [`TieRule::at`].
    Random { key: u64 },
}

impl TieRule {
    /// The rule for an independent decoding slot (e.g. one EMP position).
    pub fn at(self, slot: u64) -> TieRule {
        match self {
            TieRule::PreferFirst => TieRule::PreferFirst,
            TieRule::Random { key } => TieRule::Random {
                key: mix64(key ^ mix64(slot.wrapping_add(0x5851_f42d_4c95_7f2d))),
            },
        }
    }

    pub fn pick(self) -> Fill {
        match self {
            TieRule::PreferFirst => Fill::First,
            TieRule::Random { key } => {
                if mix64(key) >> 63 == 0 {
                    Fill::First
                } else {
                    Fill::Second
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EaeOutcome {
    pub status: DecodeStatus,
    /// Erasure-free codeword on success, the input on failure.
    pub word: TernaryWord,
    /// `d_nE(y, w_1)` for a successful first trial, `None` (infinite) otherwise.
    pub d1: Option<usize>,
    pub d2: Option<usize>,
    pub chosen_fill: Option<Fill>,
    /// BDD invocations spent on this decode.
    pub bdd_steps: u64,
}

impl EaeOutcome {
    fn failure(y: &[Ternary], bdd_steps: u64) -> Self {
        EaeOutcome {
            status: DecodeStatus::Failure,
            word: TernaryWord::new(y.to_vec()),
            d1: None,
            d2: None,
            chosen_fill: None,
            bdd_steps,
        }
    }

    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Success
    }
}

/// Hamming distance restricted to the non-erased coordinates of `y`.
#[inline]
pub fn d_ne(y: &[Ternary], c: &[u8]) -> usize {
    y.iter()
        .zip(c)
        .filter(|(s, &b)| !s.is_erasure() && !s.is_bit(b))
        .count()
}

/// `2·d_nE(y, w) + |E(y)|`.
#[inline]
pub fn dtilde(w: &[u8], y: &[Ternary]) -> usize {
    y.iter()
        .zip(w)
        .map(|(s, &b)| match s {
            Ternary::Erasure => 1,
            s if s.is_bit(b) => 0,
            _ => 2,
        })
        .sum()
}

/// Membership of `y` in the ternary sphere around codeword `c`.
pub fn sphere3_contains(c: &[u8], y: &[Ternary], code: &BchCode) -> bool {
    dtilde(c, y) < code.d_des()
}

/// `y` with its erasures replaced by the two complementary fills.
pub fn fill_erasures(y: &[Ternary], plan: &FillPlan) -> (BinaryWord, BinaryWord) {
    let fill = |f| -> BinaryWord { BinaryWord::new(fill_one(y, plan, f)) };
    (fill(Fill::First), fill(Fill::Second))
}

#[inline]
pub(crate) fn fill_one(y: &[Ternary], plan: &FillPlan, fill: Fill) -> Vec<u8> {
    y.iter()
        .enumerate()
        .map(|(k, s)| s.bit().unwrap_or_else(|| plan.value(fill, k)))
        .collect()
}

/// Both BDD trials of one EaED invocation, with the distances the
/// low-complexity EMP rules reuse.
#[derive(Clone, Debug)]
pub struct EaedTrials {
    pub erasures: usize,
    /// `y_1`, `y_2`.
    pub filled: [Vec<u8>; 2],
    /// `BDD(y_i)` when it succeeds.
    pub decoded: [Option<Vec<u8>>; 2],
    /// `d_H(BDD(y_i), y_i)`, `None` on failure.
    pub dh: [Option<usize>; 2],
    /// `d_nE(y, BDD(y_i))`, `None` on failure.
    pub dne: [Option<usize>; 2],
    pub bdd_steps: u64,
}

impl EaedTrials {
    /// Runs the two trials. Without erasures both fills coincide and one BDD suffices.
    pub fn run(y: &[Ternary], plan: &FillPlan, code: &BchCode) -> Self {
        let erasures = count_erasures(y);
        let first = fill_one(y, plan, Fill::First);
        let (out1, dh1) = bdd_trial(code, &first);
        if erasures == 0 {
            let dne = dh1;
            return EaedTrials {
                erasures,
                filled: [first.clone(), first],
                decoded: [out1.clone(), out1],
                dh: [dh1, dh1],
                dne: [dne, dne],
                bdd_steps: 1,
            };
        }
        let second = fill_one(y, plan, Fill::Second);
        let (out2, dh2) = bdd_trial(code, &second);
        let dne1 = out1.as_ref().map(|w| d_ne(y, w));
        let dne2 = out2.as_ref().map(|w| d_ne(y, w));
        EaedTrials {
            erasures,
            filled: [first, second],
            decoded: [out1, out2],
            dh: [dh1, dh2],
            dne: [dne1, dne2],
            bdd_steps: 2,
        }
    }

    /// Selection among the trials: the only success, the smaller `d_nE`, or the tie rule.
    pub fn choose(&self, tie: TieRule) -> Option<Fill> {
        match (self.dne[0], self.dne[1]) {
            (None, None) => None,
            (Some(_), None) => Some(Fill::First),
            (None, Some(_)) => Some(Fill::Second),
            (Some(d1), Some(d2)) if d1 < d2 => Some(Fill::First),
            (Some(d1), Some(d2)) if d2 < d1 => Some(Fill::Second),
            _ => Some(tie.pick()),
        }
    }

    pub fn outcome(&self, y: &[Ternary], tie: TieRule) -> EaeOutcome {
        match self.choose(tie) {
            None => EaeOutcome::failure(y, self.bdd_steps),
            Some(fill) => EaeOutcome {
                status: DecodeStatus::Success,
                word: TernaryWord::from_bits(self.decoded[fill.index()].as_ref().unwrap()),
                d1: self.dne[0],
                d2: self.dne[1],
                chosen_fill: Some(fill),
                bdd_steps: self.bdd_steps,
            },
        }
    }
}

fn bdd_trial(code: &BchCode, filled: &[u8]) -> (Option<Vec<u8>>, Option<usize>) {
    match code.locate_errors(filled) {
        Some(errors) => {
            let mut w = filled.to_vec();
            for &p in &errors {
                w[p] ^= 1;
            }
            (Some(w), Some(errors.len()))
        }
        None => (None, None),
    }
}

/// Error-and-erasure decoding with two complementary fills.
pub fn eaed(y: &[Ternary], plan: &FillPlan, tie: TieRule, code: &BchCode) -> EaeOutcome {
    if count_erasures(y) >= code.d_des() {
        return EaeOutcome::failure(y, 0);
    }
    EaedTrials::run(y, plan, code).outcome(y, tie)
}

/// Error-and-erasure decoding that succeeds exactly inside the ternary sphere.
///
/// Counts as one decoding step: at least one of the two complementary fills
/// lands within radius t of any codeword whose ternary sphere holds `y`, so
/// the trials below stand in for a single algebraic errors-and-erasures decode.
pub fn eaedplus(y: &[Ternary], plan: &FillPlan, code: &BchCode) -> EaeOutcome {
    let erasures = count_erasures(y);
    if erasures >= code.d_des() {
        return EaeOutcome::failure(y, 0);
    }
    let fills: &[Fill] = if erasures == 0 {
        &Fill::BOTH[..1]
    } else {
        &Fill::BOTH
    };
    for &fill in fills {
        let filled = fill_one(y, plan, fill);
        if let (Some(c), _) = bdd_trial(code, &filled) {
            let dne = d_ne(y, &c);
            if 2 * dne + erasures < code.d_des() {
                let (d1, d2) = match fill {
                    Fill::First => (Some(dne), None),
                    Fill::Second => (None, Some(dne)),
                };
                return EaeOutcome {
                    status: DecodeStatus::Success,
                    word: TernaryWord::from_bits(&c),
                    d1,
                    d2,
                    chosen_fill: Some(fill),
                    bdd_steps: 1,
                };
            }
        }
    }
    EaeOutcome::failure(y, 1)
}
