//! Keyless message authentication from an advantage in channel noise.
//!
//! Alice talks to Bob over a channel that is less noisy than the channel
//! available to the adversary Eve. With a suitable codebook and typical-set
//! decoding, Bob can decode Alice's messages and reject Eve's forgeries at
//! the same time, without any shared secret key. This crate provides:
//!
//! - [`info_theory`]: entropy, typicality, joint typicality and achievable
//!   rates — the numeric bedrock.
//! - [`channels`]: executable binary-symmetric and discrete memoryless
//!   channel models, including Eve's leak of Alice's input and an optional
//!   message-blocking interface.
//! - [`coding`]: random codebooks, typical-set and jointly-typical decoding,
//!   exact and Monte Carlo decoding-error / false-acceptance probabilities.
//! - [`framework`]: an executable miniature of the composable-security
//!   resource calculus — one-shot resources, converters, filters, the
//!   simulator, and exact distinguishing distances on small instances.
//! - [`cli`]: the batch front end behind the `noisy-auth` binary.
//!
//! The pure-math layer is generic over the floating-point scalar via
//! [`scalar::Scalar`]; concrete `f64` aliases live at the crate root.

pub mod channels;
pub mod cli;
pub mod coding;
pub mod error;
pub mod framework;
pub mod info_theory;
pub mod rng;
pub mod scalar;
pub mod word;

pub use error::{Error, Result};
pub use word::Word;

/// Probability distribution over a finite alphabet, `f64` entries.
pub type ProbVec = info_theory::ProbVector<f64>;
/// Joint probability mass function on a product alphabet, `f64` entries.
pub type JointPmf = info_theory::JointPmf<f64>;
/// Typicality parameters `(n, delta)` with an `f64` slack.
pub type TypicalityParams = info_theory::TypicalityParams<f64>;
