//! Maximum likelihood estimation of `alpha` from a discretely sampled path.
//!
//! Both integrals of the estimator are left-endpoint sums on the path grid:
//!
//! ```text
//! numerator   = sum_k X_k / (T - t_k) * (X_{k+1} - X_k)
//! denominator = sum_k X_k^2 / (T - t_k)^2 * (t_{k+1} - t_k)
//! alpha_hat   = -numerator / denominator
//! ```

use rand::Rng;
use serde::Serialize;

use crate::bridge_sim::{BridgeParams, PathPlan, PathSample, StepView, TimeGrid};
use crate::error::{Error, Result};

/// `lambda_t = |log(T - t)| / (2 alpha - 1)` for a time given through its gap.
pub fn lambda_at_gap(params: &BridgeParams, gap: f64) -> Result<f64> {
    params.require_normal_regime()?;
    if !(gap > 0.0 && gap < 1.0) {
        return Err(Error::InvalidWindow(format!(
            "lambda_t needs 0 < T - t < 1, got T - t = {gap}"
        )));
    }
    Ok(-gap.ln() / params.beta())
}

/// Running left-endpoint sums over one path.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ItoSums {
    /// `sum X/(T-t) dX`
    pub numerator: f64,
    /// `sum X^2/(T-t)^2 dt`
    pub denominator: f64,
    /// `sum X/(T-t) dW`
    pub noise: f64,
}

impl ItoSums {
    #[inline]
    pub fn push(&mut self, step: &StepView) {
        let w = step.x / step.gap;
        self.numerator += w * (step.x_next - step.x);
        self.denominator += w * w * step.dt;
        self.noise += w * step.dw;
    }

    /// Draw a fresh path from `plan` and return its sums without storing it.
    pub fn from_plan<R: Rng + ?Sized>(plan: &PathPlan, rng: &mut R) -> Result<Self> {
        let mut sums = ItoSums::default();
        plan.walk(rng, |s| sums.push(&s))?;
        Ok(sums)
    }

    fn from_path(grid: &TimeGrid, x: &[f64], w: Option<&[f64]>) -> Result<Self> {
        if x.len() != grid.len() || w.is_some_and(|w| w.len() != grid.len()) {
            return Err(Error::InvalidInput(format!(
                "path has {} values but the grid has {} points",
                x.len(),
                grid.len()
            )));
        }
        let gaps = grid.gaps();
        let mut sums = ItoSums::default();
        for k in 0..grid.len() - 1 {
            sums.push(&StepView {
                gap: gaps[k],
                dt: grid.step(k),
                x: x[k],
                x_next: x[k + 1],
                y_next: f64::NAN,
                dw: w.map_or(0.0, |w| w[k + 1] - w[k]),
            });
        }
        Ok(sums)
    }
}

/// The MLE together with the two sums it is built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MleEstimate {
    pub alpha_hat: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub t_end: f64,
    /// `T - t_end`, kept separately for precision near `T`.
    pub gap_end: f64,
}

impl MleEstimate {
    /// Estimate from observations `x` on `grid` (no driving noise needed).
    pub fn from_observations(grid: &TimeGrid, x: &[f64]) -> Result<Self> {
        let sums = ItoSums::from_path(grid, x, None)?;
        Self::from_sums(&sums, grid.t_end(), grid.gap_end())
    }

    pub fn from_sums(sums: &ItoSums, t_end: f64, gap_end: f64) -> Result<Self> {
        if !(sums.denominator > 0.0) {
            return Err(Error::DegeneratePath(sums.denominator));
        }
        Ok(Self {
            alpha_hat: -sums.numerator / sums.denominator,
            numerator: sums.numerator,
            denominator: sums.denominator,
            t_end,
            gap_end,
        })
    }
}

/// MLE from a simulated path.
pub fn mle_estimate(path: &PathSample) -> Result<MleEstimate> {
    MleEstimate::from_observations(&path.grid, &path.x)
}

/// `sqrt(lambda_t) (alpha - alpha_hat)`.
pub fn standardized_statistic(est: &MleEstimate, params: &BridgeParams) -> Result<f64> {
    let lambda = lambda_at_gap(params, est.gap_end)?;
    Ok(lambda.sqrt() * (params.alpha - est.alpha_hat))
}

/// The error `alpha - alpha_hat` split into its second-chaos numerator and
/// shifted second-chaos denominator, both sampled from the same path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorDecomposition {
    /// `lambda^{-1/2} sum X/(T-t) dW`, a sample of `I_2(f_t)`.
    pub chaos_numerator: f64,
    /// `lambda^{-1} sum X^2/(T-t)^2 dt`, a sample of `I_2(g_t) + b_t`.
    pub chaos_denominator: f64,
}

impl ErrorDecomposition {
    pub fn from_sums(sums: &ItoSums, lambda: f64) -> Self {
        Self {
            chaos_numerator: sums.noise / lambda.sqrt(),
            chaos_denominator: sums.denominator / lambda,
        }
    }

    /// Chaos-ratio form of the standardized error. `NaN` for a zero path.
    pub fn ratio(&self) -> f64 {
        self.chaos_numerator / self.chaos_denominator
    }
}

pub fn decompose_error(path: &PathSample, params: &BridgeParams) -> Result<ErrorDecomposition> {
    let lambda = lambda_at_gap(params, path.grid.gap_end())?;
    let sums = ItoSums::from_path(&path.grid, &path.x, Some(&path.w))?;
    Ok(ErrorDecomposition::from_sums(&sums, lambda))
}
