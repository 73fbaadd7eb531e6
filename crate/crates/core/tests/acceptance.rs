//! Acceptance suite. Every test prints one PASS/FAIL line before asserting.

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use eae_fec::bch::BchCode;
use eae_fec::channel::{
    capacity, db_to_linear, eae_probabilities, h2, optimize_threshold, transmit_and_quantize,
    ChannelParams,
};
use eae_fec::eae::{
    d_ne, dtilde, eaed, eaedplus, fill_erasures, EaedTrials, Fill, FillPlan, TieRule,
};
use eae_fec::emp::{
    dist_update_eaed, dne_update, dtilde_update, lcea_bsc_cn_update, lcea_eaed_cn_update,
    lcea_eaedplus_cn_update, naive_emp_cn_update, Branch, CaseHistogram,
    ComponentDecoder, LceaMode, UpdateRule,
};
use eae_fec::graph::{DecoderConfig, FrameSeed};
use eae_fec::rng::{stream, Purpose};
use eae_fec::sim::selftest::random_cn_case;
use eae_fec::sim::threshold::probe;
use eae_fec::sim::{
    estimate_ber, find_threshold, CodeParams, Setup, StopRule, StructureParams, ThresholdChoice,
    ThresholdSearch,
};
use eae_fec::word::{hamming, BinaryWord, Ternary, TernaryWord};
use rand::Rng;

/// Writes straight to stderr so the line shows even when test output is captured.
fn report(name: &str, passed: bool, detail: String, started: Instant) {
    let _ = writeln!(
        std::io::stderr(),
        "{} {name}: {detail} [{:.1} s]",
        if passed { "PASS" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
    assert!(passed, "{name}: {detail}");
}

fn bch15() -> BchCode {
    BchCode::new(4, 2, false, 0).unwrap()
}

fn pc63() -> Setup {
    Setup::new(
        &CodeParams { nu: 6, t: 2, even_weight: true, shortening: 0 },
        StructureParams::Product,
    )
    .unwrap()
}

#[test]
fn lcea_eaed_exact_matches_naive_emp() {
    let started = Instant::now();
    let code = bch15();
    let mut rng = stream(11, Purpose::Test, [1, 0]);
    let mut hist = CaseHistogram::default();
    let mut mismatches = 0;
    let draws = 10_000;
    for _ in 0..draws {
        let case = random_cn_case(&code, &mut rng, false);
        let input = case.input(&code);
        let naive = naive_emp_cn_update(&input, ComponentDecoder::Eaed).unwrap();
        let lcea = lcea_eaed_cn_update(&input, LceaMode::Exact).unwrap();
        mismatches += (naive.w != lcea.w) as usize;
        hist += lcea.stats.cases;
    }
    let rarest = Branch::EAED.iter().map(|&b| (hist[b], b.name())).min().unwrap();
    report(
        "lcea_eaed_exact_matches_naive_emp",
        mismatches == 0 && rarest.0 >= 100 && started.elapsed().as_secs() < 60,
        format!(
            "{mismatches} mismatching words in {draws}; rarest branch {} hit {} times",
            rarest.1, rarest.0
        ),
        started,
    );
}

#[test]
fn lcea_eaedplus_and_bsc_match_naive_emp() {
    let started = Instant::now();
    let code = bch15();
    let mut rng = stream(12, Purpose::Test, [2, 0]);
    let draws = 10_000;
    let (mut plus_bad, mut bsc_bad, mut redecodes) = (0, 0, 0);
    for _ in 0..draws {
        let case = random_cn_case(&code, &mut rng, false);
        let input = case.input(&code);
        let naive = naive_emp_cn_update(&input, ComponentDecoder::EaedPlus).unwrap();
        let lcea = lcea_eaedplus_cn_update(&input).unwrap();
        plus_bad += (naive.w != lcea.w) as usize;
        redecodes += lcea.stats.redecodes;

        let case = random_cn_case(&code, &mut rng, true);
        let input = case.input(&code);
        let naive = naive_emp_cn_update(&input, ComponentDecoder::Bdd).unwrap();
        let lcea = lcea_bsc_cn_update(&input).unwrap();
        bsc_bad += (naive.w != lcea.w) as usize;
    }
    report(
        "lcea_eaedplus_and_bsc_match_naive_emp",
        plus_bad == 0 && bsc_bad == 0 && redecodes > 0,
        format!(
            "EaED+: {plus_bad} mismatches ({redecodes} re-decodes exercised); BDD: {bsc_bad} mismatches; {draws} draws each"
        ),
        started,
    );
}

/// Bit masks over 15 positions with at most `max` ones, by weight.
fn masks_by_weight(max: u32) -> Vec<Vec<u32>> {
    let mut by = vec![Vec::new(); max as usize + 1];
    for m in 0u32..1 << 15 {
        if m.count_ones() <= max {
            by[m.count_ones() as usize].push(m);
        }
    }
    by
}

/// Definition of EaED+: the unique codeword with 2·d_nE + E < d_des.
fn eaedplus_oracle(codebook: &[BinaryWord], y: &[Ternary], d_des: usize) -> Option<Vec<u8>> {
    let erasures = y.iter().filter(|s| s.is_erasure()).count();
    codebook
        .iter()
        .find(|c| 2 * d_ne(y, c) + erasures < d_des)
        .map(|c| c.to_vec())
}

#[test]
fn eae_decoders_meet_their_guarantees() {
    let started = Instant::now();
    let code = bch15();
    let zero = [0u8; 15];
    let masks = masks_by_weight(4);
    let (mut patterns, mut trials, mut failures) = (0u64, 0u64, 0u64);
    for e in 0..=2usize {
        for big_e in 0..=(4 - 2 * e) {
            for &err in &masks[e] {
                for &era in masks[big_e].iter().filter(|&&m| m & err == 0) {
                    patterns += 1;
                    let y: Vec<Ternary> = (0..15)
                        .map(|p| match ((err >> p) & 1, (era >> p) & 1) {
                            (_, 1) => Ternary::Erasure,
                            (1, _) => Ternary::One,
                            _ => Ternary::Zero,
                        })
                        .collect();
                    let erased: Vec<usize> = (0..15).filter(|p| (era >> p) & 1 == 1).collect();
                    for assignment in 0u32..1 << big_e {
                        let mut base = vec![0u8; 15];
                        for (i, &p) in erased.iter().enumerate() {
                            base[p] = ((assignment >> i) & 1) as u8;
                        }
                        let plan = FillPlan::new(BinaryWord::new(base));
                        for tie in [TieRule::PreferFirst, TieRule::Random { key: assignment as u64 }] {
                            trials += 1;
                            let a = eaed(&y, &plan, tie, &code);
                            let b = eaedplus(&y, &plan, &code);
                            let ok = |w: &TernaryWord| w.to_binary().is_some_and(|w| *w == zero[..]);
                            failures += (!ok(&a.word) || !ok(&b.word)) as u64;
                        }
                    }
                }
            }
        }
    }

    let codebook = code.codewords().unwrap();
    let mut rng = stream(13, Purpose::Test, [3, 0]);
    let (mut oracle_bad, mut successes) = (0u64, 0u64);
    let words = 100_000;
    for _ in 0..words {
        let c = &codebook[rng.random_range(0..codebook.len())];
        let (p_err, p_era) = (rng.random_range(0.0..0.25), rng.random_range(0.0..0.4));
        let y: Vec<Ternary> = c
            .iter()
            .map(|&b| {
                if rng.random_bool(p_era) {
                    Ternary::Erasure
                } else {
                    Ternary::from_bit(b ^ rng.random_bool(p_err) as u8)
                }
            })
            .collect();
        let plan = FillPlan::random(15, &mut rng);
        let out = eaedplus(&y, &plan, &code);
        let expected = eaedplus_oracle(&codebook, &y, code.d_des());
        let agrees = match (&expected, out.is_success()) {
            (Some(c), true) => out.word.to_binary().is_some_and(|w| w.to_vec() == *c),
            (None, false) => out.word[..] == y[..],
            _ => false,
        };
        oracle_bad += !agrees as u64;
        successes += expected.is_some() as u64;
    }
    report(
        "eae_decoders_meet_their_guarantees",
        patterns == 3636 && failures == 0 && oracle_bad == 0 && started.elapsed().as_secs() < 300,
        format!(
            "{patterns} patterns with 2e+E<5, {trials} fill/tie trials, {failures} failures; EaED+ vs definition: {oracle_bad} mismatches in {words} words ({successes} decodable)"
        ),
        started,
    );
}

#[test]
fn distance_update_tables_match_recomputation() {
    let started = Instant::now();
    let code = bch15();
    let mut rng = stream(14, Purpose::Test, [4, 0]);
    let draws = 100_000;
    let (mut bad_dist, mut bad_dne, mut bad_dt) = (0, 0, 0);
    let random_word = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Ternary> {
        (0..15)
            .map(|_| match rng.random_range(0..3) {
                0 => Ternary::Zero,
                1 => Ternary::One,
                _ => Ternary::Erasure,
            })
            .collect()
    };
    for i in 0..draws {
        let mut case = random_cn_case(&code, &mut rng, false);
        if i % 2 == 1 {
            // unconstrained inputs: the update tables hold for any (y, r)
            case.y = TernaryWord::new(random_word(&mut rng));
            case.r = TernaryWord::new(random_word(&mut rng));
        }
        let input = case.input(&code);
        let trials = EaedTrials::run(&case.y, &case.plan, &code);
        let k = rng.random_range(0..15);
        let yk = input.extrinsic_input(k);
        let (f, fk) = (fill_erasures(&case.y, &case.plan), fill_erasures(&yk, &case.plan));
        for fill in Fill::BOTH {
            let w: Vec<u8> = match &trials.decoded[fill.index()] {
                Some(dec) if rng.random_bool(0.5) => dec.clone(),
                _ => (0..15).map(|_| rng.random_range(0..2)).collect(),
            };
            let (before, after) = match fill {
                Fill::First => (&f.0, &fk.0),
                Fill::Second => (&f.1, &fk.1),
            };
            let d = hamming(before, &w);
            bad_dist += (dist_update_eaed(Some(d), k, &input, fill, &w) != Some(hamming(after, &w))) as usize;
            bad_dist += dist_update_eaed(None, k, &input, fill, &w).is_some() as usize;
        }
        let w: Vec<u8> = (0..15).map(|_| rng.random_range(0..2)).collect();
        bad_dne += (dne_update(d_ne(&case.y, &w), k, &input, &w) != d_ne(&yk, &w)) as usize;
        bad_dt += (dtilde_update(dtilde(&w, &case.y), k, &input, &w) != dtilde(&w, &yk)) as usize;
    }
    report(
        "distance_update_tables_match_recomputation",
        bad_dist + bad_dne + bad_dt == 0,
        format!(
            "{draws} draws: Hamming-after-fill {bad_dist}, non-erased distance {bad_dne}, ternary distance {bad_dt} mismatches"
        ),
        started,
    );
}

#[test]
fn channel_probabilities_and_capacity() {
    let started = Instant::now();
    let worst_bsc = (0..50)
        .map(|i| {
            let p = ChannelParams::from_db(-5.0 + 0.3 * i as f64, 0.0).unwrap();
            (capacity(&p) - (1.0 - h2(eae_probabilities(&p).delta))).abs()
        })
        .fold(0.0, f64::max);

    let symbols = 1_000_000;
    let mut worst_sigma: f64 = 0.0;
    for (i, (db, t)) in [(-1.0, 0.3), (2.0, 0.25), (4.0, 0.6)].into_iter().enumerate() {
        let p = ChannelParams::from_db(db, t).unwrap();
        let s = eae_probabilities(&p);
        let bits: Vec<u8> = {
            let mut rng = stream(15, Purpose::Info, [i as u64, 0]);
            (0..symbols).map(|_| rng.random_range(0..2)).collect()
        };
        let rx = transmit_and_quantize(&bits, &p, &mut stream(15, Purpose::Noise, [i as u64, 0]));
        let errors = rx.iter().zip(&bits).filter(|(r, &b)| !r.is_erasure() && !r.is_bit(b)).count();
        let erasures = rx.iter().filter(|r| r.is_erasure()).count();
        for (count, prob) in [(errors, s.delta), (erasures, s.epsilon)] {
            let se = (prob * (1.0 - prob) / symbols as f64).sqrt();
            worst_sigma = worst_sigma.max((count as f64 / symbols as f64 - prob).abs() / se);
        }
    }

    let es_n0 = db_to_linear(2.0);
    let (t_opt, c_max) = optimize_threshold(es_n0);
    let c0 = capacity(&ChannelParams::new(es_n0, 0.0).unwrap());
    report(
        "channel_probabilities_and_capacity",
        worst_bsc < 1e-12 && worst_sigma <= 3.0 && c_max > c0,
        format!(
            "T=0 vs BSC max deviation {worst_bsc:e}; Monte Carlo worst {worst_sigma:.2} standard errors; at 2 dB T_opt = {t_opt:.4}, C = {c_max:.6} > C(0) = {c0:.6}"
        ),
        started,
    );
}

#[test]
fn lcea_complexity_near_threshold() {
    let started = Instant::now();
    let setup = pc63();
    let Setup::Product(pc) = &setup else { unreachable!() };
    let exact = DecoderConfig::new(UpdateRule::Lcea, ComponentDecoder::Eaed);
    let search = ThresholdSearch {
        target_ber: 1e-4,
        low_db: 1.0,
        high_db: 2.6,
        precision_db: 0.2,
        choice: ThresholdChoice::Grid,
        stop: StopRule { min_word_errors: 20, max_words: 200 },
        seed: 21,
    };
    let thr = find_threshold(&setup, &exact, &search).unwrap();
    let params = ChannelParams::from_db(thr.threshold_db, thr.t_opt).unwrap();

    let naive = DecoderConfig::new(UpdateRule::EmpNaive, ComponentDecoder::Eaed);
    let (mut lcea_steps, mut naive_steps, mut cn_updates, mut naive_cn) = (0u64, 0u64, 0u64, 0u64);
    let mut diverged = 0;
    for frame in 0..8u64 {
        let info: Vec<u8> = {
            let mut rng = stream(21, Purpose::Info, [frame, 0]);
            (0..pc.info_len()).map(|_| rng.random_range(0..2)).collect()
        };
        let sent = pc.encode(&info).unwrap();
        let rx = transmit_and_quantize(&sent, &params, &mut stream(21, Purpose::Noise, [frame, 0]));
        let seed = FrameSeed::new(21, frame);
        let (a, sa) = pc.decode(&rx, &exact, seed).unwrap();
        let (b, sb) = pc.decode(&rx, &naive, seed).unwrap();
        diverged += (a != b) as usize;
        lcea_steps += sa.cn.bdd_steps;
        naive_steps += sb.cn.bdd_steps;
        cn_updates += sa.cn_updates;
        naive_cn += sb.cn_updates;
    }
    let ratio = (lcea_steps as f64 / cn_updates as f64) / (naive_steps as f64 / naive_cn as f64);

    let heuristic = DecoderConfig::new(UpdateRule::HLcea, ComponentDecoder::Eaed);
    let h = estimate_ber(&setup, &heuristic, &params, &search.stop, 21).unwrap();
    report(
        "lcea_complexity_near_threshold",
        ratio <= 0.10 && h.redecodes == 0 && diverged == 0 && started.elapsed().as_secs() < 600,
        format!(
            "at {:.2} dB, T = {:.3}: exact rule {:.3} BDD steps per check-node update vs naive {:.2} (ratio {:.4}); coupled decodes diverged in {diverged} of 8 frames; heuristic re-decodes {}",
            thr.threshold_db,
            thr.t_opt,
            lcea_steps as f64 / cn_updates as f64,
            naive_steps as f64 / naive_cn as f64,
            ratio,
            h.redecodes
        ),
        started,
    );
}

#[test]
fn erasure_decoding_lowers_the_noise_threshold() {
    let started = Instant::now();
    let setup = pc63();
    let stop = StopRule { min_word_errors: 50, max_words: 2000 };
    let search = |choice| ThresholdSearch {
        target_ber: 1e-4,
        low_db: 1.0,
        high_db: 2.6,
        precision_db: 0.05,
        choice,
        stop,
        seed: 7,
    };
    let hdd_cfg = DecoderConfig::new(UpdateRule::Lcea, ComponentDecoder::Bdd);
    let eae_cfg = DecoderConfig::new(UpdateRule::HLcea, ComponentDecoder::Eaed);
    let hdd = find_threshold(&setup, &hdd_cfg, &search(ThresholdChoice::Fixed(0.0))).unwrap();
    let eae = find_threshold(&setup, &eae_cfg, &search(ThresholdChoice::Grid)).unwrap();
    let gain = hdd.threshold_db - eae.threshold_db;
    report(
        "erasure_decoding_lowers_the_noise_threshold",
        gain > 0.0 && eae.high_db < hdd.low_db,
        format!(
            "hard-decision EMP [{:.4}, {:.4}] dB, h-LCEA with EaED [{:.4}, {:.4}] dB at T = {:.3}, gain {gain:.3} dB",
            hdd.low_db, hdd.high_db, eae.low_db, eae.high_db, eae.t_opt
        ),
        started,
    );
}

#[test]
fn noiseless_fixed_points_and_staircase_gain() {
    let started = Instant::now();
    let mut off = Vec::new();
    let pc_setup = pc63();
    let scc_setup = Setup::new(
        &CodeParams { nu: 6, t: 2, even_weight: true, shortening: 1 },
        StructureParams::Staircase { blocks: 20 },
    )
    .unwrap();
    let quiet = ChannelParams::from_db(40.0, 0.3).unwrap();
    let quiet_hard = ChannelParams::from_db(40.0, 0.0).unwrap();
    let once = StopRule { min_word_errors: 1, max_words: 1 };
    let mut pairs = 0;
    for rule in [UpdateRule::Imp, UpdateRule::EmpNaive, UpdateRule::Lcea, UpdateRule::HLcea] {
        for component in [ComponentDecoder::Bdd, ComponentDecoder::Eaed, ComponentDecoder::EaedPlus] {
            let cfg = DecoderConfig::new(rule, component);
            if cfg.validate().is_err() {
                continue;
            }
            let p = if component == ComponentDecoder::Bdd { quiet_hard } else { quiet };
            for (name, setup) in [("pc", &pc_setup), ("scc", &scc_setup)] {
                pairs += 1;
                let s = estimate_ber(setup, &cfg, &p, &once, 3).unwrap();
                if s.bit_errors > 0 {
                    off.push(format!("{name}/{rule:?}/{component:?}"));
                }
            }
        }
    }

    let cfg = DecoderConfig::new(UpdateRule::HLcea, ComponentDecoder::Eaed);
    let search = ThresholdSearch {
        target_ber: 1e-4,
        low_db: 0.5,
        high_db: 3.0,
        precision_db: 0.1,
        choice: ThresholdChoice::Capacity,
        stop: StopRule { min_word_errors: 20, max_words: 300 },
        seed: 5,
    };
    let thr = find_threshold(&scc_setup, &cfg, &search).unwrap();
    let above = ThresholdSearch { stop: StopRule { min_word_errors: 50, max_words: 2000 }, ..search };
    let p = probe(&scc_setup, &cfg, thr.threshold_db + 0.5, &above).unwrap();
    report(
        "noiseless_fixed_points_and_staircase_gain",
        off.is_empty() && p.stats.ber() < p.stats.channel_ber(),
        format!(
            "{pairs} structure/rule/component runs, off the codeword: {off:?}; staircase threshold {:.2} dB, at +0.5 dB decoded BER {:.2e} vs channel BER {:.2e} over {} blocks",
            thr.threshold_db,
            p.stats.ber(),
            p.stats.channel_ber(),
            p.stats.words_sent
        ),
        started,
    );
}

fn sim(args: &[&str], out: &Path, threads: usize) {
    let status = Command::new(env!("CARGO_BIN_EXE_eae-sim"))
        .args(args)
        .arg("--out")
        .arg(out)
        .arg("--threads")
        .arg(threads.to_string())
        .stdout(std::process::Stdio::null())
        .status()
        .unwrap();
    assert!(status.success(), "eae-sim {args:?} failed");
}

#[test]
fn cli_runs_replay_byte_for_byte() {
    let started = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let runs: [(&str, &[&str]); 4] = [
        ("capacity", &["--es-n0-db", "-2:6:0.5", "--erasure-threshold", "opt"]),
        ("ber", &["--code", "5,2,ew", "--es-n0-db", "0,0.5,1", "--erasure-threshold", "0.15", "--seed", "17"]),
        ("threshold", &["--code", "5,2,ew", "--scheme", "lcea", "--component", "bdd"]),
        ("complexity", &["--code", "5,2,ew", "--es-n0-db", "0.5,2", "--erasure-threshold", "opt"]),
    ];
    let small = dir.path().join("small.cfg");
    // short stop rule and a small bracket keep every run quick
    std::fs::write(
        &small,
        "bracket_low_db = -1\nbracket_high_db = 3\nprecision_db = 0.25\nmax_words = 300\nmin_word_errors = 20\n",
    )
    .unwrap();
    let mut identical = HashSet::new();
    let mut compared = 0;
    for (command, extra) in runs {
        let first = dir.path().join(format!("{command}-1"));
        let replay = dir.path().join(format!("{command}-2"));
        let mut args = vec![command, "--config", small.to_str().unwrap()];
        args.extend_from_slice(extra);
        sim(&args, &first, 1);
        let meta = first.join(format!("{command}.meta"));
        sim(&[command, "--config", meta.to_str().unwrap()], &replay, 4);
        for entry in std::fs::read_dir(&first).unwrap() {
            let name = entry.unwrap().file_name();
            if name.to_string_lossy().ends_with(".csv") {
                compared += 1;
                let a = std::fs::read(first.join(&name)).unwrap();
                let b = std::fs::read(replay.join(&name)).unwrap();
                if a == b {
                    identical.insert(name);
                }
            }
        }
    }
    report(
        "cli_runs_replay_byte_for_byte",
        compared == 5 && identical.len() == compared,
        format!("{} of {compared} CSV files identical after replay with 4 threads", identical.len()),
        started,
    );
}
