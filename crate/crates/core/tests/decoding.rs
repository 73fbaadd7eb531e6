use std::collections::HashMap;

use eae_fec::bch::BchCode;
use eae_fec::channel::{transmit_and_quantize, ChannelParams};
use eae_fec::emp::{ComponentDecoder, UpdateRule};
use eae_fec::graph::{DecoderConfig, FrameSeed, ProductCode, StaircaseCode};
use eae_fec::rng::{stream, Purpose};
use eae_fec::word::Ternary;
use rand::Rng;

fn pc63() -> ProductCode {
    ProductCode::new(BchCode::new(6, 2, true, 0).unwrap())
}

fn noisy_frame(pc: &ProductCode, p: &ChannelParams, frame: u64) -> (Vec<u8>, Vec<Ternary>) {
    let mut rng = stream(31, Purpose::Info, [frame, 0]);
    let info: Vec<u8> = (0..pc.info_len()).map(|_| rng.random_range(0..2)).collect();
    let sent = pc.encode(&info).unwrap();
    let rx = transmit_and_quantize(&sent, p, &mut stream(31, Purpose::Noise, [frame, 0]));
    (sent, rx)
}

type Trace = Vec<(u64, usize, Vec<Ternary>)>;

fn traced(pc: &ProductCode, rx: &[Ternary], cfg: &DecoderConfig, frame: u64) -> (Vec<u8>, Trace) {
    let mut trace = Vec::new();
    let (bits, _) = pc
        .decode_traced(rx, cfg, FrameSeed::new(31, frame), |e| {
            trace.push((e.round, e.cn, e.w.to_vec()))
        })
        .unwrap();
    (bits, trace)
}

#[test]
fn exact_low_complexity_decoding_tracks_naive_message_by_message() {
    let pc = pc63();
    for (component, t) in [
        (ComponentDecoder::Eaed, 0.15),
        (ComponentDecoder::EaedPlus, 0.15),
        (ComponentDecoder::Bdd, 0.0),
    ] {
        let p = ChannelParams::from_db(1.6, t).unwrap();
        for frame in 0..3 {
            let (_, rx) = noisy_frame(&pc, &p, frame);
            let naive = traced(&pc, &rx, &DecoderConfig::new(UpdateRule::EmpNaive, component), frame);
            let lcea = traced(&pc, &rx, &DecoderConfig::new(UpdateRule::Lcea, component), frame);
            assert_eq!(naive.1.len(), lcea.1.len(), "{component:?}");
            assert!(naive.1 == lcea.1, "{component:?} frame {frame}: message traces differ");
            assert_eq!(naive.0, lcea.0);
        }
    }
}

#[test]
fn messages_flow_between_row_and_column_check_nodes() {
    let pc = pc63();
    let n = pc.n();
    let p = ChannelParams::from_db(1.2, 0.2).unwrap();
    let (_, rx) = noisy_frame(&pc, &p, 7);
    for rule in [UpdateRule::Imp, UpdateRule::EmpNaive, UpdateRule::Lcea, UpdateRule::HLcea] {
        let cfg = DecoderConfig { half_iterations: 4, ..DecoderConfig::new(rule, ComponentDecoder::Eaed) };
        let mut out: HashMap<(u64, usize), Vec<Ternary>> = HashMap::new();
        let mut checked = 0;
        pc.decode_traced(&rx, &cfg, FrameSeed::new(31, 7), |e| {
            let rows = e.cn < n;
            let line = if rows { e.cn } else { e.cn - n };
            for s in 0..n {
                let (channel, incoming) = if rows {
                    (rx[line * n + s], (n + s, line))
                } else {
                    (rx[s * n + line], (s, line))
                };
                assert_eq!(e.r[s], channel, "{rule:?}: r must be the channel");
                let expected = if e.round == 0 {
                    channel
                } else {
                    out[&(e.round - 1, incoming.0)][incoming.1]
                };
                assert_eq!(e.y[s], expected, "{rule:?}: round {} cn {} position {s}", e.round, e.cn);
                checked += 1;
            }
            out.insert((e.round, e.cn), e.w.to_vec());
        })
        .unwrap();
        assert!(checked >= n * n, "{rule:?} terminated before a full half-iteration");
    }
}

#[test]
fn erased_channel_symbols_are_resolved_by_the_product_structure() {
    let pc = pc63();
    let info = vec![1u8; pc.info_len()];
    let sent = pc.encode(&info).unwrap();
    let mut rx: Vec<Ternary> = sent.iter().map(|&b| Ternary::from_bit(b)).collect();
    // a 3x3 block of erasures plus a few flips elsewhere
    for r in 10..13 {
        for c in 20..23 {
            rx[r * 63 + c] = Ternary::Erasure;
        }
    }
    for i in [5, 300, 2000, 3500] {
        rx[i] = Ternary::from_bit(sent[i] ^ 1);
    }
    for rule in [UpdateRule::Imp, UpdateRule::EmpNaive, UpdateRule::Lcea, UpdateRule::HLcea] {
        for component in [ComponentDecoder::Eaed, ComponentDecoder::EaedPlus] {
            let cfg = DecoderConfig::new(rule, component);
            if cfg.validate().is_err() {
                continue;
            }
            let (bits, stats) = pc.decode(&rx, &cfg, FrameSeed::new(2, 0)).unwrap();
            assert_eq!(bits, sent, "{rule:?}/{component:?}");
            assert!(stats.terminated_early);
        }
    }
}

#[test]
fn decoding_is_a_pure_function_of_frame_seed() {
    let pc = pc63();
    let p = ChannelParams::from_db(1.3, 0.2).unwrap();
    let (_, rx) = noisy_frame(&pc, &p, 3);
    let cfg = DecoderConfig::new(UpdateRule::HLcea, ComponentDecoder::Eaed);
    let a = pc.decode(&rx, &cfg, FrameSeed::new(8, 3)).unwrap();
    let b = pc.decode(&rx, &cfg, FrameSeed::new(8, 3)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn wrong_lengths_and_invalid_configurations_are_rejected() {
    let pc = pc63();
    let cfg = DecoderConfig::new(UpdateRule::Lcea, ComponentDecoder::Eaed);
    assert!(pc.decode(&[Ternary::Zero; 10], &cfg, FrameSeed::new(0, 0)).is_err());
    let bad = DecoderConfig::new(UpdateRule::HLcea, ComponentDecoder::EaedPlus);
    assert!(pc.decode(&vec![Ternary::Zero; 63 * 63], &bad, FrameSeed::new(0, 0)).is_err());
}

fn staircase_frame(
    scc: &StaircaseCode,
    blocks: usize,
    p: &ChannelParams,
    frame: u64,
) -> (Vec<Vec<u8>>, Vec<Vec<Ternary>>) {
    let mut rng = stream(41, Purpose::Info, [frame, 0]);
    let info: Vec<u8> = (0..scc.block_info_len() * (blocks - 1)).map(|_| rng.random_range(0..2)).collect();
    let chain = scc.encode(&info, blocks).unwrap();
    let rx = chain
        .iter()
        .enumerate()
        .map(|(i, b)| transmit_and_quantize(b, p, &mut stream(41, Purpose::Noise, [frame, i as u64])))
        .collect();
    (chain, rx)
}

#[test]
fn staircase_window_decoder_recovers_a_noisy_chain() {
    let scc = StaircaseCode::new(BchCode::new(6, 2, true, 1).unwrap()).unwrap();
    assert_eq!((scc.block_side(), scc.block_len()), (31, 961));
    let blocks = 12;
    let p = ChannelParams::from_db(3.0, 0.2).unwrap();
    let (chain, rx) = staircase_frame(&scc, blocks, &p, 0);
    assert!(scc.is_codeword(&chain));
    let raw_errors: usize = chain
        .iter()
        .zip(&rx)
        .flat_map(|(c, y)| c.iter().zip(y))
        .filter(|(&b, s)| !s.is_bit(b))
        .count();
    assert!(raw_errors > 100, "channel should be noisy");
    let cfg = DecoderConfig::new(UpdateRule::HLcea, ComponentDecoder::Eaed);
    let (decided, stats) = scc.decode(&rx, &cfg, FrameSeed::new(41, 0)).unwrap();
    let per_block: Vec<usize> = decided
        .iter()
        .zip(&chain)
        .map(|(d, c)| d.iter().zip(c).filter(|(a, b)| a != b).count())
        .collect();
    // the last block sits in a single interface and is only weakly protected
    assert!(per_block[..blocks - 1].iter().all(|&e| e == 0), "residual errors per block {per_block:?}");
    assert!(stats.cn_updates > 0);
}

#[test]
fn staircase_rejects_chains_shorter_than_a_window() {
    let scc = StaircaseCode::new(BchCode::new(5, 2, false, 1).unwrap()).unwrap();
    let cfg = DecoderConfig::new(UpdateRule::Lcea, ComponentDecoder::Eaed);
    let p = ChannelParams::from_db(10.0, 0.0).unwrap();
    let (_, rx) = staircase_frame(&scc, cfg.window_length, &p, 0);
    assert!(scc.decode(&rx, &cfg, FrameSeed::new(0, 0)).is_err());
    let (chain, rx) = staircase_frame(&scc, cfg.window_length + 1, &p, 0);
    assert_eq!(scc.decode(&rx, &cfg, FrameSeed::new(0, 0)).unwrap().0, chain, "noiseless chain");
}

#[test]
fn staircase_counts_only_blocks_finalized_from_a_full_window() {
    assert_eq!(StaircaseCode::counted_blocks(20, 7), 1..=13);
    assert_eq!(StaircaseCode::counted_blocks(8, 7), 1..=1);
}
