//! Staircase codes with a zero-initialized first block.
//!
//! A chain holds `L` blocks of size m×m with `m = n/2`; block 0 is the known
//! all-zero reference block. Interface `j` joins blocks `j` and `j + 1`: its
//! check node `r` sees `[column r of B_j, row r of B_{j+1}]`, so every row
//! of `[B_jᵀ, B_{j+1}]` is a component codeword. Bit `(a, b)` of block `i`
//! sits at socket `m + b` of node `(i − 1, a)` and at socket `a` of node
//! `(i, b)`.
//!
//! Decoding slides a window of `W` blocks over the chain. At window start
//! `s` the interfaces `s − 1 ..= s + W − 2` are updated oldest first for up
//! to `window_iterations` rounds, then block `s` is decided and frozen.

use std::ops::RangeInclusive;

use crate::bch::BchCode;
use crate::eae::FillPlan;
use crate::emp::{cn_update, CnInput, ComponentDecoder};
use crate::error::{Error, Result};
use crate::word::Ternary;

use super::{vn_final_decision, DecodeStats, DecoderConfig, FrameSeed};

#[derive(Clone, Debug)]
pub struct StaircaseCode {
    code: BchCode,
    m: usize,
}

impl StaircaseCode {
    pub fn new(code: BchCode) -> Result<Self> {
        let n = code.n();
        if !n.is_multiple_of(2) {
            return Err(Error::Construction(format!(
                "staircase codes need an even component length, got {n}"
            )));
        }
        let m = n / 2;
        if code.k() <= m {
            return Err(Error::Construction(format!(
                "component dimension {} leaves no info bits in a {m}×{m} block",
                code.k()
            )));
        }
        Ok(StaircaseCode { code, m })
    }

    pub fn component(&self) -> &BchCode {
        &self.code
    }

    /// Block side length `n/2`.
    pub fn block_side(&self) -> usize {
        self.m
    }

    pub fn block_len(&self) -> usize {
        self.m * self.m
    }

    /// Info bits carried by each block after the first.
    pub fn block_info_len(&self) -> usize {
        self.m * (self.code.k() - self.m)
    }

    pub fn rate(&self) -> f64 {
        self.block_info_len() as f64 / self.block_len() as f64
    }

    /// Encodes `(L − 1)` blocks of info into a chain of `L` blocks (row-major).
    pub fn encode(&self, info: &[u8], blocks: usize) -> Result<Vec<Vec<u8>>> {
        let (m, k) = (self.m, self.code.k());
        let per = self.block_info_len();
        let expected = per * blocks.saturating_sub(1);
        if blocks < 2 || info.len() != expected {
            return Err(Error::Length {
                expected,
                actual: info.len(),
            });
        }
        let mut chain = vec![vec![0u8; m * m]];
        let mut cw_info = vec![0u8; k];
        let mut cw = vec![0u8; self.code.n()];
        for (i, chunk) in info.chunks(per).enumerate() {
            let prev = &chain[i];
            let mut next = vec![0u8; m * m];
            for r in 0..m {
                for s in 0..m {
                    cw_info[s] = prev[s * m + r];
                }
                cw_info[m..].copy_from_slice(&chunk[r * (k - m)..(r + 1) * (k - m)]);
                self.code.encode_into(&cw_info, &mut cw);
                next[r * m..(r + 1) * m].copy_from_slice(&cw[m..]);
            }
            chain.push(next);
        }
        Ok(chain)
    }

    /// The codeword of interface `j`, node `r`.
    fn interface_word(&self, chain: &[Vec<u8>], j: usize, r: usize) -> Vec<u8> {
        let m = self.m;
        (0..m)
            .map(|s| chain[j][s * m + r])
            .chain((0..m).map(|s| chain[j + 1][r * m + s]))
            .collect()
    }

    pub fn is_codeword(&self, chain: &[Vec<u8>]) -> bool {
        chain.first().is_some_and(|b| b.iter().all(|&x| x == 0))
            && (0..chain.len().saturating_sub(1))
                .all(|j| (0..self.m).all(|r| self.code.is_codeword(&self.interface_word(chain, j, r))))
    }

    /// Blocks decided from a full window; error statistics use only these.
    pub fn counted_blocks(blocks: usize, window: usize) -> RangeInclusive<usize> {
        1..=blocks.saturating_sub(window)
    }

    /// Window decoding of a received chain of `L ≥ W + 1` blocks.
    ///
    /// Block 0 of `received` is ignored and treated as known zeros.
    pub fn decode(
        &self,
        received: &[Vec<Ternary>],
        cfg: &DecoderConfig,
        seed: FrameSeed,
    ) -> Result<(Vec<Vec<u8>>, DecodeStats)> {
        cfg.validate()?;
        let (m, n) = (self.m, self.code.n());
        let blocks = received.len();
        let window = cfg.window_length;
        if blocks < window + 1 {
            return Err(Error::Config(format!(
                "a chain of {blocks} blocks is shorter than the window length {window} plus one"
            )));
        }
        if let Some(b) = received.iter().find(|b| b.len() != m * m) {
            return Err(Error::Length {
                expected: m * m,
                actual: b.len(),
            });
        }

        let mut channel = received.to_vec();
        channel[0] = vec![Ternary::Zero; m * m];
        let mut to_prev = channel.clone();
        let mut to_next = channel.clone();
        let mut frozen = vec![false; blocks];
        frozen[0] = true;
        let mut decided: Vec<Vec<u8>> = vec![Vec::new(); blocks];
        decided[0] = vec![0; m * m];

        let mut stats = DecodeStats::default();
        let zero_plan = FillPlan::zeros(n);
        let (mut y, mut r) = (vec![Ternary::Zero; n], vec![Ternary::Zero; n]);
        let mut rng = seed.decision_rng();
        let mut finalize = |i: usize,
                            to_prev: &mut [Vec<Ternary>],
                            to_next: &mut [Vec<Ternary>],
                            frozen: &mut [bool],
                            decided: &mut [Vec<u8>]| {
            let bits: Vec<u8> = to_prev[i]
                .iter()
                .zip(&to_next[i])
                .map(|(&a, &b)| vn_final_decision(a, b, &mut rng))
                .collect();
            let symbols: Vec<Ternary> = bits.iter().map(|&b| Ternary::from_bit(b)).collect();
            to_prev[i].clone_from(&symbols);
            to_next[i] = symbols;
            frozen[i] = true;
            decided[i] = bits;
        };

        for start in 1..=blocks - window {
            for it in 0..cfg.window_iterations {
                let round = (start * cfg.window_iterations + it) as u64;
                let mut changed = false;
                for j in start - 1..=start + window - 2 {
                    for row in 0..m {
                        for s in 0..m {
                            y[s] = to_next[j][s * m + row];
                            r[s] = channel[j][s * m + row];
                            y[m + s] = to_prev[j + 1][row * m + s];
                            r[m + s] = channel[j + 1][row * m + s];
                        }
                        let cn = (j * m + row) as u64;
                        let plan = match cfg.component {
                            ComponentDecoder::Bdd => zero_plan.clone(),
                            _ => seed.fill_plan(n, round, cn),
                        };
                        let input = CnInput {
                            y: &y,
                            r: &r,
                            code: &self.code,
                            plan: &plan,
                            tie: seed.tie(round, cn),
                        };
                        let out = cn_update(cfg.rule, cfg.component, &input)?;
                        stats.cn += out.stats;
                        stats.cn_updates += 1;
                        if !frozen[j] {
                            for s in 0..m {
                                let slot = &mut to_prev[j][s * m + row];
                                changed |= *slot != out.w[s];
                                *slot = out.w[s];
                            }
                        }
                        if !frozen[j + 1] {
                            for s in 0..m {
                                let slot = &mut to_next[j + 1][row * m + s];
                                changed |= *slot != out.w[m + s];
                                *slot = out.w[m + s];
                            }
                        }
                    }
                }
                stats.rounds += 1;
                if !changed {
                    break;
                }
            }
            finalize(start, &mut to_prev, &mut to_next, &mut frozen, &mut decided);
        }
        for i in blocks - window + 1..blocks {
            finalize(i, &mut to_prev, &mut to_next, &mut frozen, &mut decided);
        }
        Ok((decided, stats))
    }
}
