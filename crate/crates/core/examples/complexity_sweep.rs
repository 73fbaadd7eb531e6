//! BDD steps per decoded bit for each low-complexity rule.

use eae_fec::sim::{sweep_complexity, CodeParams, Setup, StopRule, StructureParams, ThresholdChoice};
use eae_fec::{ComponentDecoder, DecoderConfig, UpdateRule};

fn main() -> eae_fec::Result<()> {
    let setup = Setup::new(&CodeParams { nu: 5, t: 2, even_weight: true, shortening: 0 }, StructureParams::Product)?;
    let base = DecoderConfig::new(UpdateRule::Lcea, ComponentDecoder::Eaed);
    let stop = StopRule { min_word_errors: 20, max_words: 500 };
    let points = sweep_complexity(&setup, &base, &[0.0, 1.0, 2.0], ThresholdChoice::Capacity, &stop, 3)?;
    for p in points {
        println!(
            "{:>4.1} dB {:<14} T={:.3} BER {:.2e} steps/bit {:.4} re-decodes/CN {:.4}",
            p.es_n0_db,
            p.variant.name,
            p.threshold,
            p.stats.ber(),
            p.stats.steps_per_bit(),
            p.stats.redecodes_per_cn()
        );
    }
    Ok(())
}
