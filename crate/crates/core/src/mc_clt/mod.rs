//! Monte Carlo checks of the normal approximation of the MLE.
//!
//! Every experiment point is addressed by `k`, with `T - t = e^{-k}`. Paths
//! are simulated in parallel, one counter-based stream per replica, and
//! collected in replica order, so every report depends on the seed alone.

mod regime;
mod stats;

pub use regime::{half_limit_sample, regime_check, QuantileDiagnostics, Regime, RegimeReport};
pub use stats::{dkw_halfwidth, kolmogorov_distance, two_sample_ks, Moments};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::bridge_sim::{BridgeParams, GridSpec, PathPlan, TimeGrid};
use crate::chaos_kernels::{a1_a2, f_triple_inner, lambda_b, psi, EvalPoint, PsiVariant};
use crate::error::{Error, Result};
use crate::mle::{lambda_at_gap, ErrorDecomposition, ItoSums, MleEstimate};
use crate::numeric::std_normal_cdf;
use crate::record::{num, opt, FlatRecord};
use crate::rng::{StreamDomain, StreamFactory};

/// Settings shared by all Monte Carlo experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CltConfig {
    pub params: BridgeParams,
    pub n_paths: usize,
    pub grid: GridSpec,
    pub seed: u64,
    /// Worker threads; `0` means all available cores.
    pub workers: usize,
    /// Confidence level parameter of the DKW band.
    pub delta: f64,
    pub psi_variant: PsiVariant,
}

impl CltConfig {
    pub fn new(params: BridgeParams, n_paths: usize, seed: u64) -> Self {
        Self {
            params,
            n_paths,
            grid: GridSpec::default(),
            seed,
            workers: 0,
            delta: 0.01,
            psi_variant: PsiVariant::default(),
        }
    }

    pub fn with_grid(mut self, grid: GridSpec) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_paths == 0 {
            return Err(Error::ConfigError("n_paths must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::ConfigError(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

/// `k = -log(T - t)` for a time `t < T`.
pub fn k_for_time(params: &BridgeParams, t: f64) -> Result<f64> {
    let gap = params.horizon - t;
    if !(gap > 0.0 && t > 0.0) {
        return Err(Error::InvalidWindow(format!("need 0 < t < T, got t = {t}")));
    }
    Ok(-gap.ln())
}

pub(crate) fn run_parallel<T, F>(workers: usize, n: usize, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::ConfigError(format!("cannot start worker pool: {e}")))?;
    pool.install(|| (0..n as u64).into_par_iter().map(&job).collect())
}

/// Path sums of `n_paths` replicas at one window.
#[derive(Debug, Clone)]
pub struct ReplicaSums {
    pub params: BridgeParams,
    pub grid: TimeGrid,
    pub sums: Vec<ItoSums>,
}

impl ReplicaSums {
    pub fn simulate(cfg: &CltConfig, k: f64) -> Result<Self> {
        cfg.validate()?;
        let gap = (-k).exp();
        let grid = TimeGrid::with_end_gap(cfg.params.horizon, gap, cfg.grid.n, cfg.grid.scheme)?;
        let plan = PathPlan::new(cfg.params, grid.clone())?;
        let streams = StreamFactory::new(cfg.seed, StreamDomain::Paths);
        let sums = run_parallel(cfg.workers, cfg.n_paths, |i| {
            ItoSums::from_plan(&plan, &mut streams.stream(i))
        })?;
        Ok(Self {
            params: cfg.params,
            grid,
            sums,
        })
    }

    /// `alpha - alpha_hat` per replica, with `alpha_hat` computed from the
    /// observed path alone.
    pub fn errors(&self) -> Result<Vec<f64>> {
        let (t_end, gap_end) = (self.grid.t_end(), self.grid.gap_end());
        self.sums
            .iter()
            .map(|s| Ok(self.params.alpha - MleEstimate::from_sums(s, t_end, gap_end)?.alpha_hat))
            .collect()
    }

    fn lambda(&self) -> Result<f64> {
        lambda_at_gap(&self.params, self.grid.gap_end())
    }

    /// `sqrt(lambda) (alpha - alpha_hat)` per replica.
    pub fn standardized(&self) -> Result<Vec<f64>> {
        let scale = self.lambda()?.sqrt();
        Ok(self.errors()?.into_iter().map(|e| scale * e).collect())
    }

    pub fn decompositions(&self) -> Result<Vec<ErrorDecomposition>> {
        let lambda = self.lambda()?;
        Ok(self
            .sums
            .iter()
            .map(|s| ErrorDecomposition::from_sums(s, lambda))
            .collect())
    }

    /// Samples of the second-chaos numerator `I_2(f_t)`.
    pub fn chaos_numerators(&self) -> Result<Vec<f64>> {
        Ok(self.decompositions()?.into_iter().map(|d| d.chaos_numerator).collect())
    }
}

/// Distance of the standardized MLE error to the standard normal at one `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CltReport {
    pub alpha: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub k: f64,
    pub t: f64,
    pub lambda: f64,
    pub n_paths: usize,
    pub grid_n: usize,
    pub d_hat: f64,
    pub dkw_halfwidth: f64,
    /// `d_hat * sqrt(k)`
    pub rate_product: f64,
    /// Moments of the chaos numerator samples.
    pub sample_moments: Moments,
    /// `max(psi_1, psi_2, psi_3)`, present when `T - t < 1/e`.
    pub psi_max: Option<f64>,
}

impl FlatRecord for CltReport {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        vec![
            ("alpha", num(self.alpha)),
            ("T", num(self.horizon)),
            ("k", num(self.k)),
            ("t", num(self.t)),
            ("lambda", num(self.lambda)),
            ("n_paths", Value::from(self.n_paths)),
            ("grid_n", Value::from(self.grid_n)),
            ("d_hat", num(self.d_hat)),
            ("dkw", num(self.dkw_halfwidth)),
            ("rate_product", num(self.rate_product)),
            ("mean", num(self.sample_moments.mean)),
            ("var", num(self.sample_moments.var)),
            ("m3", num(self.sample_moments.m3)),
            ("k4", num(self.sample_moments.k4)),
            ("psi_max", opt(self.psi_max)),
        ]
    }
}

pub(crate) fn clt_report(cfg: &CltConfig, k: f64, reps: &ReplicaSums) -> Result<CltReport> {
    let point = EvalPoint::from_k(cfg.params, k)?;
    let standardized = reps.standardized()?;
    let (d_hat, dkw) = kolmogorov_distance(&standardized, std_normal_cdf, cfg.delta)?;
    let (sample_moments, _) = Moments::sample(&reps.chaos_numerators()?)?;
    let psi_max = if point.require_g_domain().is_ok() {
        Some(psi(&point, cfg.psi_variant)?.max())
    } else {
        None
    };
    Ok(CltReport {
        alpha: cfg.params.alpha,
        horizon: cfg.params.horizon,
        k,
        t: point.t(),
        lambda: point.lambda(),
        n_paths: cfg.n_paths,
        grid_n: cfg.grid.n,
        d_hat,
        dkw_halfwidth: dkw,
        rate_product: d_hat * point.abs_log().sqrt(),
        sample_moments,
        psi_max,
    })
}

/// Simulate `n_paths` paths up to `t = T - e^{-k}` and compare the
/// standardized error `sqrt(lambda_t) (alpha - alpha_hat)` with `N(0, 1)`.
pub fn clt_experiment(cfg: &CltConfig, k: f64) -> Result<CltReport> {
    cfg.params.require_normal_regime()?;
    let reps = ReplicaSums::simulate(cfg, k)?;
    clt_report(cfg, k, &reps)
}

/// [`clt_experiment`] at each `k` in turn, all with the same seed.
pub fn rate_scan(cfg: &CltConfig, ks: &[f64]) -> Result<Vec<CltReport>> {
    cfg.params.require_normal_regime()?;
    ks.iter().map(|&k| clt_experiment(cfg, k)).collect()
}

/// Monte Carlo moments of the chaos numerator against their closed forms:
/// variance `b_t`, third moment `8 <f (x)_1 f, f>` and fourth cumulant
/// `48 ||f (x)_1 f||^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentCheck {
    pub alpha: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
    pub k: f64,
    pub n_paths: usize,
    pub grid_n: usize,
    pub sample: Moments,
    pub std_error: Moments,
    pub expected: Moments,
    /// `(sample - expected) / std_error`
    pub z: Moments,
}

impl MomentCheck {
    pub fn max_abs_z(&self) -> f64 {
        [self.z.mean, self.z.var, self.z.m3, self.z.k4]
            .iter()
            .fold(0.0, |m, z| m.max(z.abs()))
    }
}

impl FlatRecord for MomentCheck {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        let mut out = vec![
            ("alpha", num(self.alpha)),
            ("T", num(self.horizon)),
            ("k", num(self.k)),
            ("n_paths", Value::from(self.n_paths)),
            ("grid_n", Value::from(self.grid_n)),
        ];
        let rows: [(&[&'static str; 4], &Moments); 4] = [
            (&["mean", "var", "m3", "k4"], &self.sample),
            (&["mean_se", "var_se", "m3_se", "k4_se"], &self.std_error),
            (
                &["mean_expected", "var_expected", "m3_expected", "k4_expected"],
                &self.expected,
            ),
            (&["mean_z", "var_z", "m3_z", "k4_z"], &self.z),
        ];
        for (names, m) in rows {
            for (name, v) in names.iter().zip([m.mean, m.var, m.m3, m.k4]) {
                out.push((name, num(v)));
            }
        }
        out
    }
}

pub fn moment_check(cfg: &CltConfig, k: f64) -> Result<MomentCheck> {
    cfg.params.require_normal_regime()?;
    let point = EvalPoint::from_k(cfg.params, k)?;
    let reps = ReplicaSums::simulate(cfg, k)?;
    let (sample, std_error) = Moments::sample(&reps.chaos_numerators()?)?;
    let (_, b) = lambda_b(&point);
    let (a1, a2) = a1_a2(&point)?;
    let expected = Moments {
        mean: 0.0,
        var: b,
        m3: 8.0 * f_triple_inner(&point),
        k4: 48.0 * (a1 + a2),
    };
    Ok(MomentCheck {
        alpha: cfg.params.alpha,
        horizon: cfg.params.horizon,
        k,
        n_paths: cfg.n_paths,
        grid_n: cfg.grid.n,
        sample,
        std_error,
        z: sample.z_scores(&expected, &std_error),
        expected,
    })
}

/// `n` independent standard normal draws, bypassing the bridge entirely.
pub fn direct_normal_sample(n: usize, seed: u64, workers: usize) -> Result<Vec<f64>> {
    use rand::Rng;
    let streams = StreamFactory::new(seed, StreamDomain::Direct);
    run_parallel(workers, n, |i| {
        Ok(streams.stream(i).sample::<f64, _>(rand_distr::StandardNormal))
    })
}
