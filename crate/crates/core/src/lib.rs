//! Error-and-erasure iterative decoding of product and staircase codes.
//!
//! The crate is layered bottom-up:
//!
//! * [`gf`] and [`bch`]: GF(2^ν) arithmetic and binary BCH component codes
//!   with bounded-distance decoding.
//! * [`eae`]: error-and-erasure component decoders built on two complementary
//!   erasure fillings.
//! * [`emp`]: check-node update rules, from intrinsic message passing to the
//!   low-complexity extrinsic rules that need a single decode per node.
//! * [`graph`]: product-code and staircase-code decoding schedules.
//! * [`channel`]: the quantized BI-AWGN channel, its capacity and the
//!   capacity-optimal erasure threshold.
//! * [`sim`]: Monte Carlo BER estimation, threshold search, complexity
//!   sweeps and reproducible CSV output.

pub mod bch;
pub mod channel;
pub mod eae;
pub mod emp;
pub mod error;
pub mod gf;
pub mod graph;
pub mod rng;
pub mod sim;
pub mod word;

pub use bch::{BchCode, ComponentCodeSpec};
pub use eae::{eaed, eaedplus, EaeOutcome, Fill, FillPlan, TieRule};
pub use emp::{cn_update, CnInput, CnOutput, ComponentDecoder, LceaMode, UpdateRule};
pub use error::{Error, Result};
pub use graph::{DecoderConfig, FrameSeed, ProductCode, StaircaseCode};
pub use word::{BinaryWord, Ternary, TernaryWord};
