//! Iterative decoding of one noisy product-code frame under every rule.

use eae_fec::channel::{transmit_and_quantize, ChannelParams};
use eae_fec::rng::{stream, Purpose};
use eae_fec::{BchCode, ComponentDecoder, DecoderConfig, FrameSeed, ProductCode, UpdateRule};
use rand::Rng;

fn main() -> eae_fec::Result<()> {
    let pc = ProductCode::new(BchCode::new(6, 2, true, 0)?);
    let mut rng = stream(1, Purpose::Info, [0, 0]);
    let info: Vec<u8> = (0..pc.info_len()).map(|_| rng.random_range(0..2)).collect();
    let sent = pc.encode(&info)?;
    println!("({0}x{0}) product code, rate {1:.4}", pc.n(), pc.rate());

    for (rule, component, t) in [
        (UpdateRule::Imp, ComponentDecoder::Bdd, 0.0),
        (UpdateRule::Lcea, ComponentDecoder::Bdd, 0.0),
        (UpdateRule::Imp, ComponentDecoder::Eaed, 0.15),
        (UpdateRule::Lcea, ComponentDecoder::Eaed, 0.15),
        (UpdateRule::HLcea, ComponentDecoder::Eaed, 0.15),
        (UpdateRule::Lcea, ComponentDecoder::EaedPlus, 0.15),
    ] {
        let p = ChannelParams::from_db(1.7, t)?;
        let rx = transmit_and_quantize(&sent, &p, &mut stream(1, Purpose::Noise, [0, 0]));
        let cfg = DecoderConfig::new(rule, component);
        let (bits, stats) = pc.decode(&rx, &cfg, FrameSeed::new(1, 0))?;
        let errors = bits.iter().zip(&sent).filter(|(a, b)| a != b).count();
        println!(
            "{rule:?}/{component:?} T={t}: {errors} residual errors, {} half-iterations, {} BDD steps",
            stats.rounds, stats.cn.bdd_steps
        );
    }
    Ok(())
}
