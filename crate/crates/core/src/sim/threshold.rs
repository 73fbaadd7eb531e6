//! Noise-threshold search by bisection on Es/N0.

use crate::channel::{optimize_threshold, ChannelParams};
use crate::error::{Error, Result};
use crate::graph::DecoderConfig;

use super::{estimate_ber, RunStats, Setup, StopRule, ThresholdChoice};

/// Erasure thresholds tried per probe under [`ThresholdChoice::Grid`].
pub const T_GRID_STEP: f64 = 0.05;
pub const T_GRID_MAX: f64 = 0.6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdSearch {
    pub target_ber: f64,
    pub low_db: f64,
    pub high_db: f64,
    pub precision_db: f64,
    pub choice: ThresholdChoice,
    pub stop: StopRule,
    pub seed: u64,
}

/// One evaluated operating point.
#[derive(Clone, Debug, PartialEq)]
pub struct Probe {
    pub es_n0_db: f64,
    pub threshold: f64,
    pub stats: RunStats,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdResult {
    /// Smallest Es/N0 (dB) verified to meet the target; equals `high_db`.
    pub threshold_db: f64,
    /// Final bracket: the target is missed at `low_db` and met at `high_db`.
    pub low_db: f64,
    pub high_db: f64,
    /// Erasure threshold used at `high_db`.
    pub t_opt: f64,
    pub target_ber: f64,
    /// Probes in evaluation order.
    pub probes: Vec<Probe>,
}

fn lower_ber(a: &RunStats, b: &RunStats) -> bool {
    // a.ber() < b.ber() without rounding
    (a.bit_errors as u128) * (b.bits_sent as u128) < (b.bit_errors as u128) * (a.bits_sent as u128)
}

/// Evaluates one Es/N0 point, choosing `T` per `choice`.
pub fn probe(
    setup: &Setup,
    cfg: &DecoderConfig,
    es_n0_db: f64,
    search: &ThresholdSearch,
) -> Result<Probe> {
    let run = |t: f64| -> Result<(f64, RunStats)> {
        let p = ChannelParams::from_db(es_n0_db, t)?;
        Ok((t, estimate_ber(setup, cfg, &p, &search.stop, search.seed)?))
    };
    let (threshold, stats) = match search.choice {
        ThresholdChoice::Fixed(t) => run(t)?,
        ThresholdChoice::Capacity => {
            let es_n0 = ChannelParams::from_db(es_n0_db, 0.0)?.es_n0;
            run(optimize_threshold(es_n0).0)?
        }
        ThresholdChoice::Grid => {
            let steps = (T_GRID_MAX / T_GRID_STEP).round() as usize;
            let mut best = run(0.0)?;
            for i in 1..=steps {
                let cand = run(i as f64 * T_GRID_STEP)?;
                if lower_ber(&cand.1, &best.1) {
                    best = cand;
                }
            }
            let centre = best.0;
            for t in [centre - T_GRID_STEP / 2.0, centre + T_GRID_STEP / 2.0] {
                if t >= 0.0 {
                    let cand = run(t)?;
                    if lower_ber(&cand.1, &best.1) {
                        best = cand;
                    }
                }
            }
            best
        }
    };
    Ok(Probe {
        es_n0_db,
        threshold,
        passed: stats.ber() <= search.target_ber,
        stats,
    })
}

/// Bisects `[low_db, high_db]` until it is at most `precision_db` wide.
///
/// Both ends are probed first; the target must be missed at the low end and
/// met at the high end.
pub fn find_threshold(
    setup: &Setup,
    cfg: &DecoderConfig,
    search: &ThresholdSearch,
) -> Result<ThresholdResult> {
    let mut probes = Vec::new();
    let lo_probe = probe(setup, cfg, search.low_db, search)?;
    let hi_probe = probe(setup, cfg, search.high_db, search)?;
    let straddles = !lo_probe.passed && hi_probe.passed;
    probes.push(lo_probe);
    let mut t_opt = hi_probe.threshold;
    probes.push(hi_probe);
    if !straddles {
        return Err(Error::Bracket {
            low_db: search.low_db,
            high_db: search.high_db,
            target: search.target_ber,
        });
    }
    let (mut lo, mut hi) = (search.low_db, search.high_db);
    while hi - lo > search.precision_db + 1e-12 {
        let mid = 0.5 * (lo + hi);
        let p = probe(setup, cfg, mid, search)?;
        if p.passed {
            hi = mid;
            t_opt = p.threshold;
        } else {
            lo = mid;
        }
        probes.push(p);
    }
    Ok(ThresholdResult {
        threshold_db: hi,
        low_db: lo,
        high_db: hi,
        t_opt,
        target_ber: search.target_ber,
        probes,
    })
}
