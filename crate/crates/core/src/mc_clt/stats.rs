//! Distribution distances and moment estimates.

use serde::Serialize;

use crate::error::{Error, Result};

fn check_samples(samples: &[f64]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("no samples".into()));
    }
    if let Some(bad) = samples.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite sample {bad}")));
    }
    Ok(())
}

fn sorted_copy(samples: &[f64]) -> Vec<f64> {
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Dvoretzky-Kiefer-Wolfowitz half-width: with probability at least
/// `1 - delta`, the empirical CDF of `n` draws is within this distance of the
/// true CDF everywhere.
pub fn dkw_halfwidth(n: usize, delta: f64) -> f64 {
    ((2.0 / delta).ln() / (2.0 * n as f64)).sqrt()
}

/// Exact `sup_z |F_n(z) - F(z)|` for the empirical CDF of `samples`, paired
/// with the DKW half-width at level `delta`.
pub fn kolmogorov_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F, delta: f64) -> Result<(f64, f64)> {
    check_samples(samples)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidInput(format!("delta must lie in (0, 1), got {delta}")));
    }
    let sorted = sorted_copy(samples);
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let fx = cdf(x);
        let above = (i + 1) as f64 / n - fx;
        let below = fx - i as f64 / n;
        d = d.max(above.abs()).max(below.abs());
    }
    Ok((d.min(1.0), dkw_halfwidth(sorted.len(), delta)))
}

/// Two-sample Kolmogorov-Smirnov statistic `sup_z |F_a(z) - F_b(z)|`.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> Result<f64> {
    check_samples(a)?;
    check_samples(b)?;
    let (a, b) = (sorted_copy(a), sorted_copy(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let z = a[i].min(b[j]);
        while i < a.len() && a[i] <= z {
            i += 1;
        }
        while j < b.len() && b[j] <= z {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Mean, variance, third central moment and fourth cumulant. Used for
/// sample values, their standard errors and reference values alike.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub var: f64,
    pub m3: f64,
    /// `m4 - 3 var^2`
    pub k4: f64,
}

impl Moments {
    /// Plug-in sample moments and their standard errors from the influence
    /// function of each estimator.
    pub fn sample(samples: &[f64]) -> Result<(Self, Self)> {
        check_samples(samples)?;
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
        for &x in samples {
            let d = x - mean;
            let d2 = d * d;
            m2 += d2;
            m3 += d2 * d;
            m4 += d2 * d2;
        }
        m2 /= n;
        m3 /= n;
        m4 /= n;
        let (mut s_var, mut s_m3, mut s_k4) = (0.0, 0.0, 0.0);
        for &x in samples {
            let d = x - mean;
            let d2 = d * d;
            let if_var = d2 - m2;
            let if_m3 = d2 * d - m3 - 3.0 * m2 * d;
            let if_k4 = d2 * d2 - m4 - 4.0 * m3 * d - 6.0 * m2 * (d2 - m2);
            s_var += if_var * if_var;
            s_m3 += if_m3 * if_m3;
            s_k4 += if_k4 * if_k4;
        }
        let values = Self {
            mean,
            var: m2,
            m3,
            k4: m4 - 3.0 * m2 * m2,
        };
        let errors = Self {
            mean: (m2 / n).sqrt(),
            var: s_var.sqrt() / n,
            m3: s_m3.sqrt() / n,
            k4: s_k4.sqrt() / n,
        };
        Ok((values, errors))
    }

    /// Entry-wise `(self - reference) / se`.
    pub fn z_scores(&self, reference: &Self, se: &Self) -> Self {
        Self {
            mean: (self.mean - reference.mean) / se.mean,
            var: (self.var - reference.var) / se.var,
            m3: (self.m3 - reference.m3) / se.m3,
            k4: (self.k4 - reference.k4) / se.k4,
        }
    }
}
