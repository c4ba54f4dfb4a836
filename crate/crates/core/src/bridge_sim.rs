//! Exact-in-law simulation of the alpha-Brownian bridge
//! `dX = -alpha X / (T - t) dt + dW`, `X_0 = 0`, on a grid in `[0, T)`.
//!
//! The bridge is `X_t = (T - t)^alpha Y_t` with the Gaussian martingale
//! `Y_t = int_0^t (T - s)^-alpha dW_s`. Over one grid step the pair
//! `(dW, dY)` is bivariate normal with closed-form moments, so drawing the
//! pair step by step reproduces the joint law of `(W, Y, X)` at the grid
//! points without any Euler bias.
//!
//! Time is carried as the gap `T - t` next to `t` itself so that points very
//! close to `T` keep full relative precision.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{expm1_over, pow_gap};

/// Drift exponent `alpha` and terminal time `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BridgeParams {
    pub alpha: f64,
    #[serde(rename = "T")]
    pub horizon: f64,
}

impl BridgeParams {
    pub fn new(alpha: f64, horizon: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidInput(format!("T must be positive, got {horizon}")));
        }
        Ok(Self { alpha, horizon })
    }

    /// Fails unless `alpha > 1/2`, the regime with a Gaussian limit.
    pub fn require_normal_regime(&self) -> Result<()> {
        if self.alpha > 0.5 {
            Ok(())
        } else {
            Err(Error::RegimeError(format!(
                "this operation requires alpha > 1/2, got alpha = {}",
                self.alpha
            )))
        }
    }

    /// `2 alpha - 1`.
    #[inline]
    pub fn beta(&self) -> f64 {
        2.0 * self.alpha - 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GridScheme {
    Uniform,
    #[default]
    Geometric,
}

impl std::str::FromStr for GridScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GridScheme::Uniform),
            "geometric" => Ok(GridScheme::Geometric),
            other => Err(Error::InvalidInput(format!("unknown grid scheme '{other}'"))),
        }
    }
}

impl std::fmt::Display for GridScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GridScheme::Uniform => "uniform",
            GridScheme::Geometric => "geometric",
        })
    }
}

/// Number of points and spacing rule. Used by the Monte Carlo drivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub scheme: GridScheme,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n: 2000,
            scheme: GridScheme::Geometric,
        }
    }
}

/// Strictly increasing observation times `0 = t_0 < ... < t_end < T`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
    gaps: Vec<f64>,
    horizon: f64,
}

impl TimeGrid {
    /// Grid for the window `[0, t_end]` of a bridge with terminal time `horizon`.
    pub fn build(horizon: f64, t_end: f64, n: usize, scheme: GridScheme) -> Result<Self> {
        if !(t_end > 0.0 && t_end < horizon) {
            return Err(Error::InvalidWindow(format!(
                "need 0 < t_end < T, got t_end = {t_end}, T = {horizon}"
            )));
        }
        Self::with_end_gap(horizon, horizon - t_end, n, scheme)
    }

    /// Grid ending at `T - t_end = gap_end`. Geometric spacing is computed
    /// from the gaps directly, so `gap_end` may be far below `T * EPSILON`
    /// only as long as the times stay distinguishable.
    pub fn with_end_gap(horizon: f64, gap_end: f64, n: usize, scheme: GridScheme) -> Result<Self> {
        if !(horizon > 0.0 && gap_end > 0.0 && gap_end < horizon) {
            return Err(Error::InvalidWindow(format!(
                "need 0 < T - t_end < T, got gap {gap_end}, T = {horizon}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        let last = (n - 1) as f64;
        let gaps: Vec<f64> = match scheme {
            GridScheme::Uniform => {
                let t_end = horizon - gap_end;
                (0..n)
                    .map(|k| {
                        if k == n - 1 {
                            gap_end
                        } else {
                            horizon - t_end * (k as f64 / last)
                        }
                    })
                    .collect()
            }
            GridScheme::Geometric => {
                let (lo, hi) = (gap_end.ln(), horizon.ln());
                (0..n)
                    .map(|k| match k {
                        0 => horizon,
                        k if k == n - 1 => gap_end,
                        k => (hi + (lo - hi) * (k as f64 / last)).exp(),
                    })
                    .collect()
            }
        };
        let times = gaps.iter().map(|g| horizon - g).collect();
        let grid = Self { times, gaps, horizon };
        grid.validate()?;
        Ok(grid)
    }

    /// Grid from explicit times. Gaps are derived as `T - t`.
    pub fn from_times(horizon: f64, times: Vec<f64>) -> Result<Self> {
        let gaps = times.iter().map(|t| horizon - t).collect();
        let grid = Self { times, gaps, horizon };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        if self.times.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                self.times.len()
            )));
        }
        if self.times[0] != 0.0 {
            return Err(Error::InvalidGrid("grid must start at 0".into()));
        }
        // Times may round to T near the end; the gaps carry the resolution.
        if self.gaps.windows(2).any(|w| !(w[1] < w[0])) || self.times.windows(2).any(|w| !(w[1] >= w[0])) {
            return Err(Error::InvalidGrid("times must be strictly increasing".into()));
        }
        let gap_end = *self.gaps.last().expect("len checked");
        if !(gap_end > 0.0) {
            return Err(Error::InvalidWindow(format!(
                "last grid time must be < T = {}",
                self.horizon
            )));
        }
        Ok(())
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// `T - t_k` for every grid point.
    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().expect("grid has at least two points")
    }

    pub fn gap_end(&self) -> f64 {
        *self.gaps.last().expect("grid has at least two points")
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Length of step `k`, i.e. `t_{k+1} - t_k`, computed from the gaps.
    #[inline]
    pub fn step(&self, k: usize) -> f64 {
        self.gaps[k] - self.gaps[k + 1]
    }
}

/// Second moments of `(W_u - W_s, Y_u - Y_s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepCov {
    pub var_dw: f64,
    pub var_dy: f64,
    pub cov_dw_dy: f64,
}

impl StepCov {
    fn from_gaps(params: &BridgeParams, gap_s: f64, gap_u: f64, dt: f64) -> Self {
        if dt == 0.0 {
            return StepCov {
                var_dw: 0.0,
                var_dy: 0.0,
                cov_dw_dy: 0.0,
            };
        }
        let a = params.alpha;
        // r = ln((T-s)/(T-u)) without forming the ratio of two close numbers
        let r = (dt / gap_u).ln_1p();
        StepCov {
            var_dw: dt,
            var_dy: pow_gap(gap_s, 1.0 - 2.0 * a) * expm1_over(2.0 * a - 1.0, r),
            cov_dw_dy: pow_gap(gap_u, 1.0 - a) * expm1_over(1.0 - a, r),
        }
    }
}

/// Covariance of the increments of `(W, Y)` over `[s, u]`.
pub fn step_covariance(params: &BridgeParams, s: f64, u: f64) -> Result<StepCov> {
    let horizon = params.horizon;
    if !(u < horizon) {
        return Err(Error::InvalidWindow(format!("need u < T, got u = {u}, T = {horizon}")));
    }
    if !(s >= 0.0 && u >= s) {
        return Err(Error::InvalidGrid(format!("need 0 <= s <= u, got s = {s}, u = {u}")));
    }
    Ok(StepCov::from_gaps(params, horizon - s, horizon - u, u - s))
}

/// `E[X_t^2] = (T - t)^{2 alpha} Var(Y_t)`.
pub fn marginal_variance(params: &BridgeParams, t: f64) -> Result<f64> {
    if !(t < params.horizon) {
        return Err(Error::InvalidWindow(format!(
            "need t < T, got t = {t}, T = {}",
            params.horizon
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidWindow(format!("need t >= 0, got {t}")));
    }
    Ok(marginal_variance_at_gap(params, params.horizon - t))
}

pub(crate) fn marginal_variance_at_gap(params: &BridgeParams, gap: f64) -> f64 {
    let horizon = params.horizon;
    if gap == horizon {
        return 0.0;
    }
    let cov = StepCov::from_gaps(params, horizon, gap, horizon - gap);
    pow_gap(gap, 2.0 * params.alpha) * cov.var_dy
}

/// Per-step Cholesky factors of the `(dW, dY)` covariance.
#[derive(Debug, Clone, Copy)]
struct StepFactor {
    sd_w: f64,
    /// `cov / sd_w`: loading of `dY` on the first normal.
    load: f64,
    /// Conditional standard deviation of `dY` given `dW`.
    sd_resid: f64,
}

/// Everything needed to draw paths on one grid, computed once.
#[derive(Debug, Clone)]
pub struct PathPlan {
    params: BridgeParams,
    grid: TimeGrid,
    factors: Vec<StepFactor>,
    /// `(T - t_k)^alpha`.
    x_scale: Vec<f64>,
}

/// Values seen by a streaming consumer on step `k -> k + 1`.
#[derive(Debug, Clone, Copy)]
pub struct StepView {
    pub gap: f64,
    pub dt: f64,
    pub x: f64,
    pub x_next: f64,
    pub y_next: f64,
    pub dw: f64,
}

impl PathPlan {
    pub fn new(params: BridgeParams, grid: TimeGrid) -> Result<Self> {
        if (grid.horizon() - params.horizon).abs() > 0.0 {
            return Err(Error::InvalidGrid(format!(
                "grid built for T = {} but params have T = {}",
                grid.horizon(),
                params.horizon
            )));
        }
        let gaps = grid.gaps();
        let mut factors = Vec::with_capacity(grid.len() - 1);
        for k in 0..grid.len() - 1 {
            let c = StepCov::from_gaps(&params, gaps[k], gaps[k + 1], grid.step(k));
            let bound = c.var_dw * c.var_dy;
            if !(c.cov_dw_dy * c.cov_dw_dy <= bound * (1.0 + 1e-10)) {
                return Err(Error::numerical(
                    format!(
                        "step {k} violates Cauchy-Schwarz: cov^2 = {}, bound {bound}",
                        c.cov_dw_dy.powi(2)
                    ),
                    c.cov_dw_dy.powi(2) / bound - 1.0,
                ));
            }
            let sd_w = c.var_dw.sqrt();
            let load = c.cov_dw_dy / sd_w;
            let resid = (c.var_dy - load * load).max(0.0);
            factors.push(StepFactor {
                sd_w,
                load,
                sd_resid: resid.sqrt(),
            });
        }
        let x_scale = gaps.iter().map(|&g| pow_gap(g, params.alpha)).collect();
        Ok(Self {
            params,
            grid,
            factors,
            x_scale,
        })
    }

    pub fn params(&self) -> &BridgeParams {
        &self.params
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    /// Draw one path, handing each step to `visit` without storing it.
    /// Two standard normals are consumed per step, `dW` first.
    pub fn walk<R: Rng + ?Sized, F: FnMut(StepView)>(&self, rng: &mut R, mut visit: F) -> Result<()> {
        let gaps = self.grid.gaps();
        let mut y = 0.0f64;
        let mut x = 0.0f64;
        for (k, f) in self.factors.iter().enumerate() {
            let z1: f64 = rng.sample(StandardNormal);
            let z2: f64 = rng.sample(StandardNormal);
            let dw = f.sd_w * z1;
            y += f.load * z1 + f.sd_resid * z2;
            let x_next = self.x_scale[k + 1] * y;
            if !x_next.is_finite() {
                return Err(Error::numerical(
                    format!("non-finite sample at step {k}"),
                    f64::INFINITY,
                ));
            }
            visit(StepView {
                gap: gaps[k],
                dt: self.grid.step(k),
                x,
                x_next,
                y_next: y,
                dw,
            });
            x = x_next;
        }
        Ok(())
    }

    /// Draw and store one full path.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<PathSample> {
        let n = self.grid.len();
        let mut w = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        let mut x = Vec::with_capacity(n);
        w.push(0.0);
        y.push(0.0);
        x.push(0.0);
        let mut k = 0usize;
        self.walk(rng, |step| {
            k += 1;
            w.push(w[k - 1] + step.dw);
            x.push(step.x_next);
            y.push(step.y_next);
        })?;
        Ok(PathSample {
            params: self.params,
            grid: self.grid.clone(),
            w,
            y,
            x,
        })
    }
}

/// Joint samples of `(W, Y, X)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    pub params: BridgeParams,
    pub grid: TimeGrid,
    pub w: Vec<f64>,
    pub y: Vec<f64>,
    pub x: Vec<f64>,
}

/// Simulate one path of `(W, Y, X)` on `grid`.
pub fn simulate_path<R: Rng + ?Sized>(params: &BridgeParams, grid: &TimeGrid, rng: &mut R) -> Result<PathSample> {
    PathPlan::new(*params, grid.clone())?.sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{StreamDomain, StreamFactory};

    fn p(alpha: f64, t: f64) -> BridgeParams {
        BridgeParams::new(alpha, t).unwrap()
    }

    #[test]
    fn grid_endpoints_only() {
        let g = TimeGrid::build(1.0, 0.5, 2, GridScheme::Uniform).unwrap();
        assert_eq!(g.times(), &[0.0, 0.5]);
    }

    #[test]
    fn geometric_grid_is_log_equidistant() {
        let g = TimeGrid::build(1.0, 1.0 - (-4.0f64).exp(), 5, GridScheme::Geometric).unwrap();
        for (k, gap) in g.gaps().iter().enumerate() {
            assert!((gap - (-(k as f64)).exp()).abs() < 1e-15, "k={k} gap={gap}");
        }
    }

    #[test]
    fn grid_errors() {
        assert!(matches!(
            TimeGrid::build(1.0, 1.5, 10, GridScheme::Uniform),
            Err(Error::InvalidWindow(_))
        ));
        assert!(matches!(
            TimeGrid::build(1.0, 0.5, 1, GridScheme::Uniform),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            TimeGrid::from_times(1.0, vec![0.0, 0.5, 0.5]),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            TimeGrid::from_times(1.0, vec![0.1, 0.5]),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn step_covariance_alpha_one() {
        let c = step_covariance(&p(1.0, 1.0), 0.0, 0.5).unwrap();
        assert!((c.var_dw - 0.5).abs() < 1e-15);
        assert!((c.var_dy - 1.0).abs() < 1e-14);
        assert!((c.cov_dw_dy - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn step_covariance_alpha_half() {
        let c = step_covariance(&p(0.5, 1.0), 0.0, 0.5).unwrap();
        assert!((c.var_dy - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((c.cov_dw_dy - 2.0 * (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn step_covariance_zero_step_and_errors() {
        let c = step_covariance(&p(1.7, 2.0), 0.3, 0.3).unwrap();
        assert_eq!((c.var_dw, c.var_dy, c.cov_dw_dy), (0.0, 0.0, 0.0));
        assert!(matches!(
            step_covariance(&p(1.0, 1.0), 0.0, 1.0),
            Err(Error::InvalidWindow(_))
        ));
        assert!(matches!(
            step_covariance(&p(1.0, 1.0), 0.6, 0.5),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn special_branches_match_generic_limit() {
        for &(center, s, u) in &[(0.5, 0.1, 0.7), (1.0, 0.0, 0.9), (0.5, 0.0, 0.999)] {
            let exact = step_covariance(&p(center, 1.0), s, u).unwrap();
            for d in [-1e-6, 1e-6] {
                let near = step_covariance(&p(center + d, 1.0), s, u).unwrap();
                assert!(((near.var_dy - exact.var_dy) / exact.var_dy).abs() < 1e-4);
                assert!(((near.cov_dw_dy - exact.cov_dw_dy) / exact.cov_dw_dy).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn marginal_variance_examples() {
        assert!((marginal_variance(&p(1.0, 1.0), 0.5).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(marginal_variance(&p(0.3, 2.0), 0.0).unwrap(), 0.0);
        let t = 1.0 - (-1.0f64).exp();
        let v = marginal_variance(&p(0.5, 1.0), t).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-15);
        assert!(matches!(
            marginal_variance(&p(1.0, 1.0), 1.0),
            Err(Error::InvalidWindow(_))
        ));
    }

    #[test]
    fn path_satisfies_construction_invariant() {
        let params = p(1.3, 2.0);
        let grid = TimeGrid::build(2.0, 1.99, 200, GridScheme::Geometric).unwrap();
        let mut rng = StreamFactory::new(1, StreamDomain::Paths).stream(0);
        let path = simulate_path(&params, &grid, &mut rng).unwrap();
        assert_eq!((path.w[0], path.y[0], path.x[0]), (0.0, 0.0, 0.0));
        for k in 0..grid.len() {
            let scale = pow_gap(grid.gaps()[k], params.alpha);
            assert_eq!(path.x[k], scale * path.y[k]);
        }
    }

    #[test]
    fn simulation_is_deterministic() {
        let params = p(1.0, 1.0);
        let grid = TimeGrid::build(1.0, 0.9, 50, GridScheme::Uniform).unwrap();
        let f = StreamFactory::new(99, StreamDomain::Paths);
        let a = simulate_path(&params, &grid, &mut f.stream(5)).unwrap();
        let b = simulate_path(&params, &grid, &mut f.stream(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mismatched_horizon_is_rejected() {
        let grid = TimeGrid::build(2.0, 0.5, 10, GridScheme::Uniform).unwrap();
        assert!(PathPlan::new(p(1.0, 1.0), grid).is_err());
    }
}
