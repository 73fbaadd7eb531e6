//! BDD-step counts of the low-complexity rules over an Es/N0 grid.

use crate::channel::{optimize_threshold, ChannelParams};
use crate::emp::{ComponentDecoder, UpdateRule};
use crate::error::{Error, Result};
use crate::graph::DecoderConfig;

use super::{estimate_ber, RunStats, Setup, StopRule, ThresholdChoice};

/// A decoding rule measured by [`sweep_complexity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Variant {
    pub name: &'static str,
    pub rule: UpdateRule,
    pub component: ComponentDecoder,
}

impl Variant {
    /// Hard-decision baseline at `T = 0`, then the erasure-aware rules.
    pub const ALL: [Variant; 4] = [
        Variant { name: "lcea-hdd", rule: UpdateRule::Lcea, component: ComponentDecoder::Bdd },
        Variant { name: "lcea-eaed", rule: UpdateRule::Lcea, component: ComponentDecoder::Eaed },
        Variant { name: "hlcea-eaed", rule: UpdateRule::HLcea, component: ComponentDecoder::Eaed },
        Variant { name: "lcea-eaedplus", rule: UpdateRule::Lcea, component: ComponentDecoder::EaedPlus },
    ];
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityPoint {
    pub es_n0_db: f64,
    pub variant: Variant,
    pub threshold: f64,
    pub stats: RunStats,
}

/// Runs every [`Variant`] at every grid point with early termination active.
///
/// All variants at one point share frames and noise. `choice` fixes `T` for
/// the erasure-aware variants; the baseline always uses `T = 0`.
pub fn sweep_complexity(
    setup: &Setup,
    base: &DecoderConfig,
    grid_db: &[f64],
    choice: ThresholdChoice,
    stop: &StopRule,
    seed: u64,
) -> Result<Vec<ComplexityPoint>> {
    let mut out = Vec::new();
    for &db in grid_db {
        let t = match choice {
            ThresholdChoice::Fixed(t) => t,
            ThresholdChoice::Capacity => optimize_threshold(ChannelParams::from_db(db, 0.0)?.es_n0).0,
            ThresholdChoice::Grid => {
                return Err(Error::Config(
                    "complexity sweeps take a fixed erasure threshold or opt".into(),
                ))
            }
        };
        for variant in Variant::ALL {
            let threshold = if variant.component == ComponentDecoder::Bdd { 0.0 } else { t };
            let cfg = DecoderConfig {
                rule: variant.rule,
                component: variant.component,
                ..*base
            };
            let params = ChannelParams::from_db(db, threshold)?;
            let stats = estimate_ber(setup, &cfg, &params, stop, seed)?;
            out.push(ComplexityPoint {
                es_n0_db: db,
                variant,
                threshold,
                stats,
            });
        }
    }
    Ok(out)
}
