//! Channel statistics and the capacity-maximizing erasure threshold.

use eae_fec::channel::{capacity, db_to_linear, eae_probabilities, optimize_threshold, ChannelParams};

fn main() -> eae_fec::Result<()> {
    println!("{:>7} {:>7} {:>10} {:>10} {:>8} {:>8}", "Es/N0", "T_opt", "delta", "epsilon", "C(T)", "C(0)");
    for tenth in (-20..=60).step_by(10) {
        let db = tenth as f64 / 10.0;
        let (t, c) = optimize_threshold(db_to_linear(db));
        let s = eae_probabilities(&ChannelParams::from_db(db, t)?);
        let c0 = capacity(&ChannelParams::from_db(db, 0.0)?);
        println!("{db:>7.1} {t:>7.4} {:>10.3e} {:>10.3e} {c:>8.5} {c0:>8.5}", s.delta, s.epsilon);
    }
    Ok(())
}
