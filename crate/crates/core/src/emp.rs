//! Check-node update rules.
//!
//! Each rule maps the `n` messages arriving at one check node (`y`) and the
//! channel outputs of the connected variable nodes (`r`) to the `n` outgoing
//! messages `w`:
//!
//! * [`imp_cn_update`]: intrinsic message passing, one component decode.
//! * [`naive_emp_cn_update`]: extrinsic message passing by definition, one
//!   decode of `y^k` (position `k` reset to `r_k`) for every `k`.
//! * [`lcea_bsc_cn_update`], [`lcea_eaed_cn_update`],
//!   [`lcea_eaedplus_cn_update`]: the same extrinsic messages derived from a
//!   single intrinsic decode plus per-position distance bookkeeping, with a
//!   re-decode only where the outcome is not determined.

use std::ops::{AddAssign, Index};

use crate::bch::BchCode;
use crate::eae::{eaed, eaedplus, EaeOutcome, EaedTrials, Fill, FillPlan, TieRule};
use crate::error::{Error, Result};
use crate::word::{count_erasures, Ternary, TernaryWord};

/// Component decoder used inside a check node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentDecoder {
    /// Plain bounded-distance decoding; inputs must be erasure-free.
    Bdd,
    Eaed,
    EaedPlus,
}

/// Whether undetermined positions are re-decoded or set heuristically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LceaMode {
    Exact,
    Heuristic,
}

/// Message-passing rule of a decoding schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UpdateRule {
    Imp,
    EmpNaive,
    Lcea,
    HLcea,
}

/// The branch that produced an outgoing message.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(usize)]
pub enum Branch {
    /// `E ≥ d_des`: the whole check node echoes the channel.
    TooManyErasures,
    /// `y_k = r_k`, so `y^k = y`.
    Unchanged,
    /// `E^k ≥ d_des`.
    ErasureOverflow,
    /// Both trials keep their intrinsic result.
    Case1,
    /// Both trials lose their result, `r_k` known.
    Case2Known,
    /// Both trials lose their result, `r_k` erased; undetermined.
    Case2Erased,
    /// One trial keeps its result and agrees with `r_k`.
    Case3Consistent,
    /// One trial keeps its result and the other trial's input is unchanged.
    Case3Stale,
    /// One trial keeps its result; undetermined.
    Case3General,
    /// EaED+: `d̃(w_IMP, y^k) < d_des`.
    SphereInside,
    /// EaED+: outside the sphere and determined.
    SphereOutside,
    /// EaED+: outside the sphere, intrinsic decode failed and `r_k` erased; undetermined.
    SphereRedecode,
    /// BDD: `d_H(w_IMP, y^k) ≤ t`.
    BscWithin,
    /// BDD: `d_H(w_IMP, y^k) > t`.
    BscBeyond,
    /// Position decoded by a full component decode (IMP or naive EMP).
    Direct,
}

impl Branch {
    pub const COUNT: usize = 15;

    pub const ALL: [Branch; Branch::COUNT] = [
        Branch::TooManyErasures,
        Branch::Unchanged,
        Branch::ErasureOverflow,
        Branch::Case1,
        Branch::Case2Known,
        Branch::Case2Erased,
        Branch::Case3Consistent,
        Branch::Case3Stale,
        Branch::Case3General,
        Branch::SphereInside,
        Branch::SphereOutside,
        Branch::SphereRedecode,
        Branch::BscWithin,
        Branch::BscBeyond,
        Branch::Direct,
    ];

    /// Branches of the EaED rule, in algorithm order.
    pub const EAED: [Branch; 9] = [
        Branch::TooManyErasures,
        Branch::Unchanged,
        Branch::ErasureOverflow,
        Branch::Case1,
        Branch::Case2Known,
        Branch::Case2Erased,
        Branch::Case3Consistent,
        Branch::Case3Stale,
        Branch::Case3General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Branch::TooManyErasures => "too_many_erasures",
            Branch::Unchanged => "unchanged",
            Branch::ErasureOverflow => "erasure_overflow",
            Branch::Case1 => "case1",
            Branch::Case2Known => "case2_known",
            Branch::Case2Erased => "case2_erased",
            Branch::Case3Consistent => "case3_consistent",
            Branch::Case3Stale => "case3_stale",
            Branch::Case3General => "case3_general",
            Branch::SphereInside => "sphere_inside",
            Branch::SphereOutside => "sphere_outside",
            Branch::SphereRedecode => "sphere_redecode",
            Branch::BscWithin => "bsc_within",
            Branch::BscBeyond => "bsc_beyond",
            Branch::Direct => "direct",
        }
    }
}

/// Per-branch position counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CaseHistogram([u64; Branch::COUNT]);

impl CaseHistogram {
    #[inline]
    pub fn record(&mut self, branch: Branch) {
        self.0[branch as usize] += 1;
    }

    pub fn add_n(&mut self, branch: Branch, count: u64) {
        self.0[branch as usize] += count;
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl Index<Branch> for CaseHistogram {
    type Output = u64;
    fn index(&self, b: Branch) -> &u64 {
        &self.0[b as usize]
    }
}

impl AddAssign for CaseHistogram {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CnStats {
    pub bdd_steps: u64,
    pub redecodes: u64,
    pub cases: CaseHistogram,
}

impl AddAssign for CnStats {
    fn add_assign(&mut self, rhs: Self) {
        self.bdd_steps += rhs.bdd_steps;
        self.redecodes += rhs.redecodes;
        self.cases += rhs.cases;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnOutput {
    pub w: TernaryWord,
    /// Branch taken at each position.
    pub branches: Vec<Branch>,
    pub stats: CnStats,
}

impl CnOutput {
    fn new(w: Vec<Ternary>, branches: Vec<Branch>, mut stats: CnStats) -> Self {
        for &b in &branches {
            stats.cases.record(b);
        }
        CnOutput {
            w: TernaryWord::new(w),
            branches,
            stats,
        }
    }
}

/// Everything one check-node update sees.
#[derive(Clone, Copy, Debug)]
pub struct CnInput<'a> {
    /// Incoming variable-to-check messages, socket order.
    pub y: &'a [Ternary],
    /// Channel outputs at the connected variable nodes, socket order.
    pub r: &'a [Ternary],
    pub code: &'a BchCode,
    pub plan: &'a FillPlan,
    pub tie: TieRule,
}

impl CnInput<'_> {
    fn check_lengths(&self) -> Result<()> {
        let n = self.code.n();
        for len in [self.y.len(), self.r.len(), self.plan.len()] {
            if len != n {
                return Err(Error::Length {
                    expected: n,
                    actual: len,
                });
            }
        }
        Ok(())
    }

    /// A message erasure must come with a channel erasure.
    pub fn check_erasure_implication(&self) -> Result<()> {
        match self
            .y
            .iter()
            .zip(self.r)
            .position(|(y, r)| y.is_erasure() && !r.is_erasure())
        {
            Some(position) => Err(Error::Contract {
                position,
                reason: "erased message at a non-erased channel output",
            }),
            None => Ok(()),
        }
    }

    /// `y^k`: the incoming messages with position `k` replaced by `r_k`.
    pub fn extrinsic_input(&self, k: usize) -> TernaryWord {
        let mut yk = self.y.to_vec();
        yk[k] = self.r[k];
        TernaryWord::new(yk)
    }

    fn imp_slot(&self) -> u64 {
        self.y.len() as u64
    }
}

/// A full component decode with step accounting.
pub fn component_decode(
    decoder: ComponentDecoder,
    y: &[Ternary],
    plan: &FillPlan,
    tie: TieRule,
    code: &BchCode,
) -> Result<EaeOutcome> {
    match decoder {
        ComponentDecoder::Eaed => Ok(eaed(y, plan, tie, code)),
        ComponentDecoder::EaedPlus => Ok(eaedplus(y, plan, code)),
        ComponentDecoder::Bdd => {
            if let Some(position) = y.iter().position(|s| s.is_erasure()) {
                return Err(Error::Contract {
                    position,
                    reason: "erasure given to a hard-decision decoder",
                });
            }
            // with no erasures, one trial of EaED is exactly BDD
            Ok(eaed(y, plan, TieRule::PreferFirst, code))
        }
    }
}

/// Intrinsic update: decode `y` once and broadcast the result.
pub fn imp_cn_update(input: &CnInput, decoder: ComponentDecoder) -> Result<CnOutput> {
    input.check_lengths()?;
    let out = component_decode(decoder, input.y, input.plan, input.tie.at(input.imp_slot()), input.code)?;
    let stats = CnStats {
        bdd_steps: out.bdd_steps,
        ..CnStats::default()
    };
    let branches = vec![Branch::Direct; input.y.len()];
    Ok(CnOutput::new(out.word.into_inner(), branches, stats))
}

/// Extrinsic update by definition, with every `y^k` decoded under the
/// input's fill plan and the tie slot `k`.
pub fn naive_emp_cn_update(input: &CnInput, decoder: ComponentDecoder) -> Result<CnOutput> {
    naive_emp_cn_update_with(input, decoder, |_| input.plan.clone())
}

/// Extrinsic update by definition with a caller-chosen fill plan per position.
pub fn naive_emp_cn_update_with(
    input: &CnInput,
    decoder: ComponentDecoder,
    plan_for: impl Fn(usize) -> FillPlan,
) -> Result<CnOutput> {
    input.check_lengths()?;
    let n = input.y.len();
    let mut w = Vec::with_capacity(n);
    let mut branches = Vec::with_capacity(n);
    let mut stats = CnStats::default();
    for k in 0..n {
        let yk = input.extrinsic_input(k);
        let out = component_decode(decoder, &yk, &plan_for(k), input.tie.at(k as u64), input.code)?;
        stats.bdd_steps += out.bdd_steps;
        branches.push(Branch::Direct);
        w.push(out.word[k]);
    }
    Ok(CnOutput::new(w, branches, stats))
}

fn binary_or_contract(word: &[Ternary]) -> Result<Vec<u8>> {
    word.iter()
        .enumerate()
        .map(|(position, s)| {
            s.bit().ok_or(Error::Contract {
                position,
                reason: "erasure on the binary symmetric channel",
            })
        })
        .collect()
}

/// Low-complexity extrinsic update for hard-decision inputs.
pub fn lcea_bsc_cn_update(input: &CnInput) -> Result<CnOutput> {
    input.check_lengths()?;
    let y = binary_or_contract(input.y)?;
    let r = binary_or_contract(input.r)?;
    let code = input.code;
    let t = code.t();
    let imp = code.bdd(&y);
    let stats = CnStats {
        bdd_steps: 1,
        ..CnStats::default()
    };
    let mut branches = Vec::with_capacity(y.len());
    let w = (0..y.len())
        .map(|k| {
            let wk = imp.word[k];
            let dk = imp.distance.map(|d| match (y[k] == r[k], wk == r[k]) {
                (true, _) => d,
                (false, true) => d - 1,
                (false, false) => d + 1,
            });
            if dk.is_some_and(|d| d <= t) {
                branches.push(Branch::BscWithin);
                Ternary::from_bit(wk)
            } else {
                branches.push(Branch::BscBeyond);
                Ternary::from_bit(r[k])
            }
        })
        .collect();
    Ok(CnOutput::new(w, branches, stats))
}

/// `d_H(w_IMP,i, y_i^k)` from `d = d_H(w_IMP,i, y_i)`; `None` is infinite and stays so.
pub fn dist_update_eaed(
    d: Option<usize>,
    k: usize,
    input: &CnInput,
    fill: Fill,
    decoded: &[u8],
) -> Option<usize> {
    let d = d?;
    let p = input.plan.value(fill, k);
    let y_ik = input.y[k].bit().unwrap_or(p);
    // new value of y_i at k: p_i when r_k is erased, r_k otherwise
    let next = input.r[k].bit().unwrap_or(p);
    Some(if y_ik == next {
        d
    } else if decoded[k] == next {
        d - 1
    } else {
        d + 1
    })
}

/// `d_nE(y^k, w)` from `d = d_nE(y, w)` for a binary word `w`.
pub fn dne_update(d: usize, k: usize, input: &CnInput, decoded: &[u8]) -> usize {
    let wk = decoded[k];
    match (input.y[k].bit(), input.r[k].bit()) {
        (None, None) => d,
        (None, Some(rk)) => d + (rk != wk) as usize,
        (Some(yk), None) => d - (yk != wk) as usize,
        (Some(yk), Some(rk)) if yk == rk => d,
        (Some(_), Some(rk)) if wk == rk => d - 1,
        (Some(_), Some(_)) => d + 1,
    }
}

/// `d̃(w, y^k)` from `d = d̃(w, y)`.
pub fn dtilde_update(d: usize, k: usize, input: &CnInput, decoded: &[u8]) -> usize {
    let wk = decoded[k];
    match (input.y[k].bit(), input.r[k].bit()) {
        (None, None) => d,
        (None, Some(rk)) => d - 1 + 2 * (rk != wk) as usize,
        (Some(yk), None) if yk == wk => d + 1,
        (Some(_), None) => d - 1,
        (Some(yk), Some(rk)) if yk == rk => d,
        (Some(_), Some(rk)) if rk == wk => d - 2,
        (Some(_), Some(_)) => d + 2,
    }
}

/// Low-complexity extrinsic update with the two-fill EaED component decoder.
///
/// In [`LceaMode::Exact`] the output equals [`naive_emp_cn_update`] with
/// [`ComponentDecoder::Eaed`] position by position, given the same fill plan
/// and tie rule. [`LceaMode::Heuristic`] never re-decodes.
pub fn lcea_eaed_cn_update(input: &CnInput, mode: LceaMode) -> Result<CnOutput> {
    input.check_lengths()?;
    input.check_erasure_implication()?;
    let code = input.code;
    let (n, t, d_des) = (code.n(), code.t(), code.d_des());
    let (y, r) = (input.y, input.r);
    let mut stats = CnStats::default();

    let erasures = count_erasures(y);
    if erasures >= d_des {
        return Ok(CnOutput::new(r.to_vec(), vec![Branch::TooManyErasures; n], stats));
    }

    let trials = EaedTrials::run(y, input.plan, code);
    stats.bdd_steps += trials.bdd_steps;

    let redecode = |k: usize, stats: &mut CnStats| -> Ternary {
        let yk = input.extrinsic_input(k);
        let out = eaed(&yk, input.plan, input.tie.at(k as u64), code);
        stats.bdd_steps += out.bdd_steps;
        stats.redecodes += 1;
        out.word[k]
    };

    let mut w = Vec::with_capacity(n);
    let mut branches = Vec::with_capacity(n);
    for k in 0..n {
        if y[k] == r[k] {
            branches.push(Branch::Unchanged);
            let wk = match trials.choose(input.tie.at(k as u64)) {
                Some(fill) => Ternary::from_bit(trials.decoded[fill.index()].as_ref().unwrap()[k]),
                None => y[k],
            };
            w.push(wk);
            continue;
        }
        let erasures_k = erasures + r[k].is_erasure() as usize;
        if erasures_k >= d_des {
            branches.push(Branch::ErasureOverflow);
            w.push(r[k]);
            continue;
        }
        let dist = Fill::BOTH.map(|fill| {
            let i = fill.index();
            trials.decoded[i]
                .as_deref()
                .and_then(|dec| dist_update_eaed(trials.dh[i], k, input, fill, dec))
        });
        let keeps = dist.map(|d| d.is_some_and(|d| d <= t));
        let wk = match keeps {
            [true, true] => {
                branches.push(Branch::Case1);
                let dne = Fill::BOTH.map(|fill| {
                    let i = fill.index();
                    let dec = trials.decoded[i].as_deref().unwrap();
                    dne_update(trials.dne[i].unwrap(), k, input, dec)
                });
                let fill = match dne[0].cmp(&dne[1]) {
                    std::cmp::Ordering::Less => Fill::First,
                    std::cmp::Ordering::Greater => Fill::Second,
                    std::cmp::Ordering::Equal => input.tie.at(k as u64).pick(),
                };
                Ternary::from_bit(trials.decoded[fill.index()].as_ref().unwrap()[k])
            }
            [false, false] => {
                if !r[k].is_erasure() {
                    branches.push(Branch::Case2Known);
                    r[k]
                } else {
                    branches.push(Branch::Case2Erased);
                    match mode {
                        LceaMode::Exact => redecode(k, &mut stats),
                        LceaMode::Heuristic => r[k],
                    }
                }
            }
            [keep_first, _] => {
                let kept = if keep_first { Fill::First } else { Fill::Second };
                let lost = kept.other();
                let kept_bit = trials.decoded[kept.index()].as_ref().unwrap()[k];
                let lost_unchanged = r[k].is_erasure()
                    && y[k].is_bit(input.plan.value(lost, k));
                if r[k].is_bit(kept_bit) {
                    branches.push(Branch::Case3Consistent);
                    Ternary::from_bit(kept_bit)
                } else if lost_unchanged {
                    branches.push(Branch::Case3Stale);
                    Ternary::from_bit(kept_bit)
                } else {
                    branches.push(Branch::Case3General);
                    match mode {
                        LceaMode::Exact => redecode(k, &mut stats),
                        LceaMode::Heuristic => Ternary::from_bit(kept_bit),
                    }
                }
            }
        };
        w.push(wk);
    }
    Ok(CnOutput::new(w, branches, stats))
}

/// Low-complexity extrinsic update with the EaED+ component decoder.
///
/// Equals [`naive_emp_cn_update`] with [`ComponentDecoder::EaedPlus`]; a
/// re-decode happens only when the intrinsic decode failed, `r_k` is erased
/// and `y_k` is not.
pub fn lcea_eaedplus_cn_update(input: &CnInput) -> Result<CnOutput> {
    input.check_lengths()?;
    input.check_erasure_implication()?;
    let code = input.code;
    let (n, d_des) = (code.n(), code.d_des());
    let (y, r) = (input.y, input.r);
    let erasures = count_erasures(y);

    let imp = eaedplus(y, input.plan, code);
    let mut stats = CnStats {
        bdd_steps: imp.bdd_steps,
        ..CnStats::default()
    };
    let decoded = imp.word.to_binary().filter(|_| imp.is_success());
    let dt = decoded.as_ref().map(|c| crate::eae::dtilde(c, y));

    let mut w = Vec::with_capacity(n);
    let mut branches = Vec::with_capacity(n);
    for k in 0..n {
        if let (Some(c), Some(dt)) = (decoded.as_ref(), dt) {
            if dtilde_update(dt, k, input, c) < d_des {
                branches.push(Branch::SphereInside);
                w.push(Ternary::from_bit(c[k]));
            } else {
                branches.push(Branch::SphereOutside);
                w.push(r[k]);
            }
            continue;
        }
        let needs_redecode = r[k].is_erasure() && y[k] != r[k];
        if needs_redecode && erasures + 1 < d_des {
            branches.push(Branch::SphereRedecode);
            let out = eaedplus(&input.extrinsic_input(k), input.plan, code);
            stats.bdd_steps += out.bdd_steps;
            stats.redecodes += 1;
            w.push(out.word[k]);
        } else {
            branches.push(Branch::SphereOutside);
            w.push(r[k]);
        }
    }
    Ok(CnOutput::new(w, branches, stats))
}

/// Dispatches one check-node update for a decoding schedule.
pub fn cn_update(rule: UpdateRule, decoder: ComponentDecoder, input: &CnInput) -> Result<CnOutput> {
    match (rule, decoder) {
        (UpdateRule::Imp, d) => imp_cn_update(input, d),
        (UpdateRule::EmpNaive, d) => naive_emp_cn_update(input, d),
        (UpdateRule::Lcea | UpdateRule::HLcea, ComponentDecoder::Bdd) => lcea_bsc_cn_update(input),
        (UpdateRule::Lcea, ComponentDecoder::Eaed) => lcea_eaed_cn_update(input, LceaMode::Exact),
        (UpdateRule::HLcea, ComponentDecoder::Eaed) => {
            lcea_eaed_cn_update(input, LceaMode::Heuristic)
        }
        (UpdateRule::Lcea, ComponentDecoder::EaedPlus) => lcea_eaedplus_cn_update(input),
        (UpdateRule::HLcea, ComponentDecoder::EaedPlus) => Err(Error::Config(
            "the heuristic rule is defined for the EaED component decoder only".into(),
        )),
    }
}
