//! Limit laws of the MLE outside the normal regime.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use serde_json::Value;

use super::stats::two_sample_ks;
use super::{clt_report, run_parallel, CltConfig, CltReport, ReplicaSums};
use crate::error::{Error, Result};
use crate::numeric::quantile_sorted;
use crate::record::{num, opt, FlatRecord};
use crate::rng::{StreamDomain, StreamFactory};

/// Steps of the Euler scheme for the `alpha = 1/2` limit law.
pub const HALF_LIMIT_STEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `0 < alpha < 1/2`
    Cauchy,
    /// `alpha = 1/2`
    Half,
    /// `alpha > 1/2`
    Normal,
}

impl Regime {
    pub fn of(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::RegimeError(format!("alpha must be positive, got {alpha}")));
        }
        Ok(if alpha == 0.5 {
            Regime::Half
        } else if alpha < 0.5 {
            Regime::Cauchy
        } else {
            Regime::Normal
        })
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Cauchy => "cauchy",
            Regime::Half => "half",
            Regime::Normal => "normal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantileDiagnostics {
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    /// Distance to a simulated sample of the limit law (`alpha = 1/2` only).
    pub ks_two_sample: Option<f64>,
}

impl QuantileDiagnostics {
    fn of(samples: &[f64], ks_two_sample: Option<f64>) -> Self {
        let mut s = samples.to_vec();
        s.sort_by(f64::total_cmp);
        Self {
            median: quantile_sorted(&s, 0.5),
            q1: quantile_sorted(&s, 0.25),
            q3: quantile_sorted(&s, 0.75),
            ks_two_sample,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport {
    pub regime: Regime,
    pub alpha: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub k: f64,
    pub n_paths: usize,
    /// Scale of the limit law: `T^{alpha-1/2} (1 - 2 alpha)` for Cauchy,
    /// `1` otherwise.
    pub scaling: f64,
    /// Quantiles of the normalized error statistic.
    pub quantile_diagnostics: QuantileDiagnostics,
    pub clt: Option<CltReport>,
}

impl FlatRecord for RegimeReport {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        let q = &self.quantile_diagnostics;
        vec![
            ("regime", Value::from(self.regime.to_string())),
            ("alpha", num(self.alpha)),
            ("T", num(self.horizon)),
            ("k", num(self.k)),
            ("n_paths", Value::from(self.n_paths)),
            ("scaling", num(self.scaling)),
            ("median", num(q.median)),
            ("q1", num(q.q1)),
            ("q3", num(q.q3)),
            ("ks_two_sample", opt(q.ks_two_sample)),
            ("d_hat", opt(self.clt.map(|c| c.d_hat))),
            ("dkw", opt(self.clt.map(|c| c.dkw_halfwidth))),
        ]
    }
}

/// `n` draws of `int_0^1 B dB / int_0^1 B^2 ds` by left-point Euler sums
/// with `steps` uniform steps.
pub fn half_limit_sample(n: usize, steps: usize, seed: u64, workers: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::ConfigError("limit law needs at least one step".into()));
    }
    let streams = StreamFactory::new(seed, StreamDomain::LimitLaw);
    let h = 1.0 / steps as f64;
    let sd = h.sqrt();
    run_parallel(workers, n, |i| {
        let mut rng = streams.stream(i);
        let (mut b, mut ito, mut area) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..steps {
            let db = sd * rng.sample::<f64, _>(StandardNormal);
            ito += b * db;
            area += b * b * h;
            b += db;
        }
        if area > 0.0 {
            Ok(ito / area)
        } else {
            Err(Error::DegeneratePath(area))
        }
    })
}

/// Normalized MLE error at `t = T - e^{-k}` compared with its limit law.
///
/// * Cauchy: `(T-t)^{alpha-1/2} (alpha - alpha_hat)`, quartiles against
///   `T^{alpha-1/2} (1 - 2 alpha)` times a standard Cauchy.
/// * Half: `k (alpha - alpha_hat)`, two-sample KS against
///   [`half_limit_sample`] with [`HALF_LIMIT_STEPS`] steps.
/// * Normal: `sqrt(lambda_t) (alpha - alpha_hat)`, full [`CltReport`].
pub fn regime_check(cfg: &CltConfig, k: f64) -> Result<RegimeReport> {
    let p = cfg.params;
    let regime = Regime::of(p.alpha)?;
    let reps = ReplicaSums::simulate(cfg, k)?;
    let errors = reps.errors()?;
    let (scaling, stat, ks, clt) = match regime {
        Regime::Cauchy => {
            let scale = (-k * (p.alpha - 0.5)).exp();
            let stat: Vec<f64> = errors.iter().map(|e| scale * e).collect();
            (p.horizon.powf(p.alpha - 0.5) * (1.0 - 2.0 * p.alpha), stat, None, None)
        }
        Regime::Half => {
            let stat: Vec<f64> = errors.iter().map(|e| k * e).collect();
            let limit = half_limit_sample(cfg.n_paths, HALF_LIMIT_STEPS, cfg.seed, cfg.workers)?;
            let ks = two_sample_ks(&stat, &limit)?;
            (1.0, stat, Some(ks), None)
        }
        Regime::Normal => {
            let report = clt_report(cfg, k, &reps)?;
            (1.0, reps.standardized()?, None, Some(report))
        }
    };
    Ok(RegimeReport {
        regime,
        alpha: p.alpha,
        horizon: p.horizon,
        k,
        n_paths: cfg.n_paths,
        scaling,
        quantile_diagnostics: QuantileDiagnostics::of(&stat, ks),
        clt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge_sim::{BridgeParams, GridScheme, GridSpec};

    fn cfg(alpha: f64, n: usize) -> CltConfig {
        CltConfig::new(BridgeParams::new(alpha, 1.0).unwrap(), n, 5).with_grid(GridSpec {
            n: 200,
            scheme: GridScheme::Geometric,
        })
    }

    #[test]
    fn regime_matches_alpha() {
        assert_eq!(Regime::of(0.25).unwrap(), Regime::Cauchy);
        assert_eq!(Regime::of(0.5).unwrap(), Regime::Half);
        assert_eq!(Regime::of(0.75).unwrap(), Regime::Normal);
        assert!(Regime::of(0.0).is_err());
    }

    #[test]
    fn cauchy_scaling() {
        let r = regime_check(&cfg(0.25, 50), 10.0).unwrap();
        assert_eq!(r.regime, Regime::Cauchy);
        assert!((r.scaling - 0.5).abs() < 1e-15);
        assert!(r.clt.is_none() && r.quantile_diagnostics.ks_two_sample.is_none());
        let q = r.quantile_diagnostics;
        assert!(q.q1 <= q.median && q.median <= q.q3);
    }

    #[test]
    fn cauchy_scaling_depends_on_horizon() {
        let mut c = cfg(0.25, 10);
        c.params = BridgeParams::new(0.25, 4.0).unwrap();
        let r = regime_check(&c, 6.0).unwrap();
        assert!((r.scaling - 4f64.powf(-0.25) * 0.5).abs() < 1e-15);
    }

    #[test]
    fn half_and_normal_fill_their_fields() {
        let h = regime_check(&cfg(0.5, 40), 6.0).unwrap();
        assert_eq!(h.regime, Regime::Half);
        assert!(h.quantile_diagnostics.ks_two_sample.is_some());
        let n = regime_check(&cfg(1.0, 40), 6.0).unwrap();
        assert_eq!(n.regime, Regime::Normal);
        assert!(n.clt.is_some());
    }

    #[test]
    fn limit_sample_is_reproducible() {
        let a = half_limit_sample(20, 100, 1, 1).unwrap();
        assert_eq!(a, half_limit_sample(20, 100, 1, 2).unwrap());
        assert!(a.iter().all(|x| x.is_finite()));
    }
}
