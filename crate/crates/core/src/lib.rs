//! Exact simulation of the alpha-Brownian bridge
//! `dX_t = -alpha X_t / (T - t) dt + dW_t`, the maximum likelihood estimator
//! of `alpha`, closed forms for the Wiener-chaos quantities that control its
//! normal approximation, and Monte Carlo checks of that approximation.
//!
//! * [`bridge_sim`]: exact Gaussian transitions on arbitrary grids.
//! * [`mle`]: the estimator and its chaos decomposition.
//! * [`chaos_kernels`]: norms, contractions and Berry-Esseen bound terms.
//! * [`mc_clt`]: Kolmogorov distances, moment checks, regime limits.
//! * [`cli`]: the experiment runner behind the `alpha-bridge` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bridge_sim;
pub mod chaos_kernels;
pub mod cli;
pub mod error;
pub mod mc_clt;
pub mod mle;
pub mod numeric;
pub mod quadrature;
pub mod record;
pub mod rng;

pub use bridge_sim::{simulate_path, BridgeParams, GridScheme, GridSpec, PathPlan, PathSample, TimeGrid};
pub use error::{Error, Result};
pub use mle::{decompose_error, mle_estimate, standardized_statistic, MleEstimate};
