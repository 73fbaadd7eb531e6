//! Sliding-window decoding of a staircase chain.

use eae_fec::channel::{transmit_and_quantize, ChannelParams};
use eae_fec::rng::{stream, Purpose};
use eae_fec::{BchCode, ComponentDecoder, DecoderConfig, FrameSeed, StaircaseCode, UpdateRule};
use rand::Rng;

fn main() -> eae_fec::Result<()> {
    let scc = StaircaseCode::new(BchCode::new(6, 2, true, 1)?)?;
    let blocks = 16;
    let mut rng = stream(5, Purpose::Info, [0, 0]);
    let info: Vec<u8> = (0..scc.block_info_len() * (blocks - 1)).map(|_| rng.random_range(0..2)).collect();
    let chain = scc.encode(&info, blocks)?;
    println!("block side {}, rate {:.4}", scc.block_side(), scc.rate());

    let p = ChannelParams::from_db(2.0, 0.2)?;
    let rx: Vec<_> = chain
        .iter()
        .enumerate()
        .map(|(i, b)| transmit_and_quantize(b, &p, &mut stream(5, Purpose::Noise, [0, i as u64])))
        .collect();
    let cfg = DecoderConfig::new(UpdateRule::HLcea, ComponentDecoder::Eaed);
    let (decided, stats) = scc.decode(&rx, &cfg, FrameSeed::new(5, 0))?;
    for i in StaircaseCode::counted_blocks(blocks, cfg.window_length) {
        let before = chain[i].iter().zip(&rx[i]).filter(|(&b, s)| !s.is_bit(b)).count();
        let after = chain[i].iter().zip(&decided[i]).filter(|(a, b)| a != b).count();
        println!("block {i:>2}: {before:>3} wrong or erased -> {after} errors");
    }
    println!("{} check-node updates, {} BDD steps", stats.cn_updates, stats.cn.bdd_steps);
    Ok(())
}
