//! Deterministic second-chaos quantities behind the CLT of the MLE.
//!
//! With `beta = 2 alpha - 1` and `lambda_t = |log(T - t)| / beta`, the
//! standardized error of the MLE is `I_2(f_t) / (I_2(g_t) + b_t)` for the
//! symmetric kernels
//!
//! ```text
//! f_t(u, v) = (T - u v v)^(alpha - 1) (T - u ^ v)^(-alpha) / (2 sqrt(lambda_t))
//! g_t(u, v) = (T - u)^-alpha (T - v)^-alpha [(T - u v v)^beta - (T - t)^beta] / |log(T - t)|
//! ```
//!
//! on `[0, t]^2`. Most computations run in the log-time coordinate
//! `s = log(T / (T - x))`, which maps `[0, t]` onto `[0, L]` with
//! `L = log T - log(T - t)`. Under the unitary map
//! `K(s, r) = k(x(s), x(r)) sqrt(x'(s) x'(r))` the kernels become
//!
//! ```text
//! F(s, r) = exp(-beta |s - r| / 2) / (2 sqrt(lambda))
//! G(s, r) = [exp(-beta |s - r| / 2) - exp(beta (s + r) / 2 - beta L)] / (beta lambda)
//! ```
//!
//! and every norm, inner product and contraction is preserved.

mod closed_form;
mod cross;
mod report;

pub use closed_form::{a1_a2, a1_a2_closed, f_contract_norm_sq, f_norm_sq, f_triple_inner, lambda_b, Remainders};
pub use cross::{g_cross_quantities, psi, GCross, PsiValues, PsiVariant};
pub use report::{asymptotic_report, lower_bound_conditions, AsymptoticResiduals, KernelReport, LowerBoundConditions};

use serde::Serialize;

use crate::bridge_sim::BridgeParams;
use crate::error::{Error, Result};
use crate::numeric::pow_from_log;

/// A time `t` close to `T`, stored through `ln(T - t)` so that gaps down to
/// `e^-200` and below are exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalPoint {
    pub params: BridgeParams,
    log_gap: f64,
}

impl EvalPoint {
    /// Point given by `ln(T - t)`. Requires `alpha > 1/2`, `T - t < 1` and `t >= 0`.
    pub fn from_log_gap(params: BridgeParams, log_gap: f64) -> Result<Self> {
        params.require_normal_regime()?;
        if !(log_gap < 0.0) {
            return Err(Error::InvalidWindow(format!(
                "kernel quantities need 0 < T - t < 1, got log(T - t) = {log_gap}"
            )));
        }
        if log_gap > params.horizon.ln() {
            return Err(Error::InvalidWindow(format!(
                "T - t = {} exceeds T = {}",
                log_gap.exp(),
                params.horizon
            )));
        }
        Ok(Self { params, log_gap })
    }

    pub fn from_time(params: BridgeParams, t: f64) -> Result<Self> {
        if !(t < params.horizon) {
            return Err(Error::InvalidWindow(format!("need t < T, got t = {t}")));
        }
        Self::from_log_gap(params, (params.horizon - t).ln())
    }

    /// `T - t = e^-k`.
    pub fn from_k(params: BridgeParams, k: f64) -> Result<Self> {
        Self::from_log_gap(params, -k)
    }

    /// The point whose normalization equals `lambda`.
    pub fn from_lambda(params: BridgeParams, lambda: f64) -> Result<Self> {
        params.require_normal_regime()?;
        Self::from_log_gap(params, -lambda * params.beta())
    }

    pub fn log_gap(&self) -> f64 {
        self.log_gap
    }

    pub fn gap(&self) -> f64 {
        self.log_gap.exp()
    }

    pub fn t(&self) -> f64 {
        self.params.horizon - self.gap()
    }

    /// `|log(T - t)|`.
    pub fn abs_log(&self) -> f64 {
        -self.log_gap
    }

    pub fn beta(&self) -> f64 {
        self.params.beta()
    }

    pub fn lambda(&self) -> f64 {
        self.abs_log() / self.beta()
    }

    /// Length of `[0, t]` in log time, `log(T / (T - t))`.
    pub fn log_span(&self) -> f64 {
        self.params.horizon.ln() - self.log_gap
    }

    /// `((T - t)/T)^beta = exp(-beta L)`.
    pub fn decay(&self) -> f64 {
        (-self.beta() * self.log_span()).exp()
    }

    /// The `g`-kernel quantities are only certified for `T - t < 1/e`.
    pub fn require_g_domain(&self) -> Result<()> {
        if self.log_gap < -1.0 {
            Ok(())
        } else {
            Err(Error::DomainError(format!(
                "g-kernel quantities need T - t < 1/e, got T - t = {}",
                self.gap()
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    F,
    G,
    /// Dominating kernel of `g`: the `-(T - t)^beta` term dropped.
    H,
}

/// One of the kernels `f_t`, `g_t`, `h_t` at a fixed point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelFn {
    pub kind: KernelKind,
    pub point: EvalPoint,
}

impl KernelFn {
    pub fn new(kind: KernelKind, point: EvalPoint) -> Self {
        Self { kind, point }
    }

    /// Value at times `(u, v)`; zero outside `[0, t]^2`.
    pub fn eval(&self, u: f64, v: f64) -> f64 {
        let horizon = self.point.params.horizon;
        self.eval_gaps(horizon - u, horizon - v)
    }

    /// Value at gaps `(T - u, T - v)`; zero outside `[T - t, T]^2`.
    pub fn eval_gaps(&self, gap_u: f64, gap_v: f64) -> f64 {
        let p = &self.point;
        let horizon = p.params.horizon;
        let gap_t = p.gap();
        let inside = |g: f64| g >= gap_t && g <= horizon;
        if !(inside(gap_u) && inside(gap_v)) {
            return 0.0;
        }
        let alpha = p.params.alpha;
        let beta = p.beta();
        let (near, far) = if gap_u <= gap_v { (gap_u, gap_v) } else { (gap_v, gap_u) };
        let (ln_near, ln_far) = (near.ln(), far.ln());
        match self.kind {
            KernelKind::F => {
                pow_from_log(ln_near, alpha - 1.0) * pow_from_log(ln_far, -alpha) / (2.0 * p.lambda().sqrt())
            }
            KernelKind::G | KernelKind::H => {
                let outer = pow_from_log(ln_near + ln_far, -alpha);
                let bracket = if self.kind == KernelKind::G {
                    // (near^beta - gap_t^beta) = near^beta (1 - (gap_t/near)^beta)
                    -pow_from_log(ln_near, beta) * (beta * (p.log_gap - ln_near)).exp_m1()
                } else {
                    pow_from_log(ln_near, beta)
                };
                outer * bracket / p.abs_log()
            }
        }
    }
}
