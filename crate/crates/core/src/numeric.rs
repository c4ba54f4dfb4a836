//! Small numerical helpers shared by the simulation and kernel code.

/// `gap^power` evaluated as `exp(power * ln gap)`.
///
/// Gaps as small as `e^-200` stay representable through their logarithm, so
/// callers that already hold `ln gap` should use [`pow_from_log`] instead.
#[inline]
pub fn pow_gap(gap: f64, power: f64) -> f64 {
    (power * gap.ln()).exp()
}

#[inline]
pub fn pow_from_log(log_gap: f64, power: f64) -> f64 {
    (power * log_gap).exp()
}

/// `(e^{c r} - 1) / c`, continuous through `c = 0` where it equals `r`.
#[inline]
pub fn expm1_over(c: f64, r: f64) -> f64 {
    if c.abs() < 1e-8 {
        // second-order term keeps the branch seamless at the threshold
        r * (1.0 + 0.5 * c * r)
    } else {
        (c * r).exp_m1() / c
    }
}

/// Standard normal CDF.
#[inline]
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal quantile.
pub fn std_normal_quantile(p: f64) -> f64 {
    use statrs::distribution::{ContinuousCDF, Normal};
    Normal::standard().inverse_cdf(p)
}

/// Empirical quantile with linear interpolation between order statistics
/// (the "type 7" rule). `sorted` must be ascending and non-empty.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}
