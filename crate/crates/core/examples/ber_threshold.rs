//! Monte Carlo BER at one point and a threshold search by bisection.

use eae_fec::channel::ChannelParams;
use eae_fec::sim::{
    estimate_ber, find_threshold, CodeParams, Setup, StopRule, StructureParams, ThresholdChoice,
    ThresholdSearch,
};
use eae_fec::{ComponentDecoder, DecoderConfig, UpdateRule};

fn main() -> eae_fec::Result<()> {
    let setup = Setup::new(&CodeParams { nu: 5, t: 2, even_weight: true, shortening: 0 }, StructureParams::Product)?;
    let cfg = DecoderConfig::new(UpdateRule::HLcea, ComponentDecoder::Eaed);
    let stop = StopRule { min_word_errors: 30, max_words: 3000 };

    let s = estimate_ber(&setup, &cfg, &ChannelParams::from_db(0.5, 0.2)?, &stop, 1)?;
    println!("0.5 dB, T = 0.2: BER {:.3e} over {} words (channel {:.3e})", s.ber(), s.words_sent, s.channel_ber());

    let search = ThresholdSearch {
        target_ber: 1e-3,
        low_db: -1.0,
        high_db: 3.0,
        precision_db: 0.1,
        choice: ThresholdChoice::Capacity,
        stop,
        seed: 1,
    };
    let r = find_threshold(&setup, &cfg, &search)?;
    println!("threshold {:.2} dB in [{:.2}, {:.2}] after {} probes", r.threshold_db, r.low_db, r.high_db, r.probes.len());
    Ok(())
}
