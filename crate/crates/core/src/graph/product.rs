//! Product codes: n×n arrays whose rows and columns are component codewords.
//!
//! Arrays are stored row-major. Row check node `a` has id `a` and sees the
//! bits of row `a` in column order; column check node `b` has id `n + b` and
//! sees column `b` in row order. Bit `(a, b)` therefore sits at socket `b`
//! of row node `a` and at socket `a` of column node `b`.

use crate::bch::BchCode;
use crate::eae::FillPlan;
use crate::emp::{cn_update, CnInput, ComponentDecoder};
use crate::error::{Error, Result};
use crate::word::Ternary;

use super::{vn_final_decision, CnEvent, DecodeStats, DecoderConfig, FrameSeed};

#[derive(Clone, Debug)]
pub struct ProductCode {
    code: BchCode,
}

/// Message planes of a product-code decoder.
///
/// `to_row[(a, b)]` is the message bit `(a, b)` sends to row node `a`,
/// `to_col[(a, b)]` the one it sends to column node `b`. A node's output at
/// socket `k` is written straight into the opposite plane, which is the
/// extrinsic variable-node rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageState {
    pub n: usize,
    pub channel: Vec<Ternary>,
    pub to_row: Vec<Ternary>,
    pub to_col: Vec<Ternary>,
}

impl MessageState {
    pub fn new(n: usize, channel: Vec<Ternary>) -> Self {
        MessageState {
            n,
            to_row: channel.clone(),
            to_col: channel.clone(),
            channel,
        }
    }
}

impl ProductCode {
    pub fn new(code: BchCode) -> Self {
        ProductCode { code }
    }

    pub fn component(&self) -> &BchCode {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    /// Info bits per array.
    pub fn info_len(&self) -> usize {
        self.code.k() * self.code.k()
    }

    pub fn len(&self) -> usize {
        self.n() * self.n()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rate(&self) -> f64 {
        self.info_len() as f64 / self.len() as f64
    }

    /// Systematic encoding of `k²` info bits (row-major k×k).
    pub fn encode(&self, info: &[u8]) -> Result<Vec<u8>> {
        let (n, k) = (self.n(), self.code.k());
        if info.len() != k * k {
            return Err(Error::Length {
                expected: k * k,
                actual: info.len(),
            });
        }
        let mut array = vec![0u8; n * n];
        for a in 0..k {
            self.code
                .encode_into(&info[a * k..(a + 1) * k], &mut array[a * n..(a + 1) * n]);
        }
        let mut col_info = vec![0u8; k];
        let mut col = vec![0u8; n];
        for b in 0..n {
            for a in 0..k {
                col_info[a] = array[a * n + b];
            }
            self.code.encode_into(&col_info, &mut col);
            for a in k..n {
                array[a * n + b] = col[a];
            }
        }
        Ok(array)
    }

    pub fn is_codeword(&self, array: &[u8]) -> bool {
        let n = self.n();
        array.len() == n * n
            && (0..n).all(|a| self.code.is_codeword(&array[a * n..(a + 1) * n]))
            && (0..n).all(|b| {
                let col: Vec<u8> = (0..n).map(|a| array[a * n + b]).collect();
                self.code.is_codeword(&col)
            })
    }

    fn plane_is_codeword(&self, plane: &[Ternary]) -> bool {
        plane
            .iter()
            .map(|s| s.bit())
            .collect::<Option<Vec<u8>>>()
            .is_some_and(|bits| self.is_codeword(&bits))
    }

    /// Iterative decoding of a received array; returns the decided bits.
    pub fn decode(
        &self,
        received: &[Ternary],
        cfg: &DecoderConfig,
        seed: FrameSeed,
    ) -> Result<(Vec<u8>, DecodeStats)> {
        self.decode_traced(received, cfg, seed, |_| {})
    }

    /// [`ProductCode::decode`] with a callback after every check-node update.
    pub fn decode_traced(
        &self,
        received: &[Ternary],
        cfg: &DecoderConfig,
        seed: FrameSeed,
        mut observer: impl FnMut(&CnEvent),
    ) -> Result<(Vec<u8>, DecodeStats)> {
        cfg.validate()?;
        let n = self.n();
        if received.len() != n * n {
            return Err(Error::Length {
                expected: n * n,
                actual: received.len(),
            });
        }
        let mut state = MessageState::new(n, received.to_vec());
        let mut stats = DecodeStats::default();
        let zero_plan = FillPlan::zeros(n);
        let (mut y, mut r) = (vec![Ternary::Zero; n], vec![Ternary::Zero; n]);

        for round in 0..cfg.half_iterations as u64 {
            let rows = round % 2 == 0;
            for line in 0..n {
                let cn = if rows { line } else { n + line };
                let index = |s: usize| if rows { line * n + s } else { s * n + line };
                let src = if rows { &state.to_row } else { &state.to_col };
                for s in 0..n {
                    y[s] = src[index(s)];
                    r[s] = state.channel[index(s)];
                }
                let plan = match cfg.component {
                    ComponentDecoder::Bdd => zero_plan.clone(),
                    _ => seed.fill_plan(n, round, cn as u64),
                };
                let input = CnInput {
                    y: &y,
                    r: &r,
                    code: &self.code,
                    plan: &plan,
                    tie: seed.tie(round, cn as u64),
                };
                let out = cn_update(cfg.rule, cfg.component, &input)?;
                observer(&CnEvent {
                    round,
                    cn,
                    y: &y,
                    r: &r,
                    w: &out.w,
                });
                let dst = if rows { &mut state.to_col } else { &mut state.to_row };
                for s in 0..n {
                    dst[index(s)] = out.w[s];
                }
                stats.cn += out.stats;
                stats.cn_updates += 1;
            }
            stats.rounds += 1;
            let written = if rows { &state.to_col } else { &state.to_row };
            if self.plane_is_codeword(written) {
                stats.terminated_early = true;
                let bits = written.iter().map(|s| s.bit().unwrap()).collect();
                return Ok((bits, stats));
            }
        }

        let mut rng = seed.decision_rng();
        let bits = state
            .to_row
            .iter()
            .zip(&state.to_col)
            .map(|(&m1, &m2)| vn_final_decision(m1, m2, &mut rng))
            .collect();
        Ok((bits, stats))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emp::UpdateRule;
    use crate::word::TernaryWord;

    fn pc() -> ProductCode {
        ProductCode::new(BchCode::new(4, 2, false, 0).unwrap())
    }

    #[test]
    fn encode_gives_codeword_array() {
        let pc = pc();
        let info: Vec<u8> = (0..49).map(|i| ((i * 5 + 1) % 3 == 0) as u8).collect();
        let arr = pc.encode(&info).unwrap();
        assert!(pc.is_codeword(&arr));
        assert_eq!(&arr[..7], &info[..7]);
        assert!(pc.encode(&[0; 49]).unwrap().iter().all(|&b| b == 0));
        assert!((pc.rate() - 49.0 / 225.0).abs() < 1e-15);
    }

    #[test]
    fn single_error_corrected_in_one_half_iteration() {
        let pc = pc();
        let info: Vec<u8> = (0..49).map(|i| (i % 2) as u8).collect();
        let arr = pc.encode(&info).unwrap();
        let mut rx = TernaryWord::from_bits(&arr).into_inner();
        rx[17] = Ternary::from_bit(arr[17] ^ 1);
        for rule in [UpdateRule::Imp, UpdateRule::EmpNaive, UpdateRule::Lcea, UpdateRule::HLcea] {
            let cfg = DecoderConfig::new(rule, ComponentDecoder::Eaed);
            let (dec, stats) = pc.decode(&rx, &cfg, FrameSeed::new(1, 0)).unwrap();
            assert_eq!(dec, arr);
            assert_eq!(stats.rounds, 1);
        }
    }
}
