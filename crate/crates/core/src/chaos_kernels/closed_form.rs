//! Exact expressions for the `f_t` quantities.
//!
//! In log time each of these quantities is an iterated integral of
//! exponentials over an ordered simplex in `[0, L]`, e.g.
//!
//! ```text
//! ||f||^2          = (1 / (2 lambda))       int_{s1<s2}           e^{beta (s1 - s2)}
//! <f (x)_1 f, f>   = (3 / (4 lambda^1.5))   int_{s1<s2<s3}        e^{beta (s1 - s3)}
//! A_1              = (1 / lambda^2)         int_{s1<s2<s3<s4}     e^{beta (s1 - s4)}
//! A_2              = (1 / (2 lambda^2))     int_{s1<s2<s3<s4}     e^{beta (s1 + s2 - s3 - s4)}
//! ```
//!
//! Writing `x = beta L` and `D = e^{-x}`, the simplex integrals are
//! polynomials in `x` and `D`. Differences such as `1 - D` go through
//! `expm1`.

use super::EvalPoint;
use crate::error::Result;
use crate::quadrature::Integrator;

/// `(lambda_t, b_t)`.
pub fn lambda_b(point: &EvalPoint) -> (f64, f64) {
    let beta = point.beta();
    let abs_log = point.abs_log();
    let one_minus_decay = -(-beta * point.log_span()).exp_m1();
    let b = 1.0 + point.params.horizon.ln() / abs_log - one_minus_decay / (beta * abs_log);
    (point.lambda(), b)
}

/// `b_t - 1 = 2 ||f_t||^2 - 1`, without the cancellation of `b - 1`.
pub(crate) fn b_minus_one(point: &EvalPoint) -> f64 {
    let beta = point.beta();
    let one_minus_decay = -(-beta * point.log_span()).exp_m1();
    (point.params.horizon.ln() - one_minus_decay / beta) / point.abs_log()
}

/// `||f_t||^2` over `[0, t]^2`.
pub fn f_norm_sq(point: &EvalPoint) -> f64 {
    let beta = point.beta();
    let span = point.log_span();
    let one_minus_decay = -(-beta * span).exp_m1();
    (span - one_minus_decay / beta) / (2.0 * point.abs_log())
}

/// `<f_t (x)_1 f_t, f_t>`.
pub fn f_triple_inner(point: &EvalPoint) -> f64 {
    let beta = point.beta();
    let lambda = point.lambda();
    let span = point.log_span();
    let decay = point.decay();
    let one_minus_decay = -(-beta * span).exp_m1();
    let bracket = span - 2.0 * one_minus_decay / beta + span * decay;
    3.0 * bracket / (4.0 * beta * beta * lambda.powf(1.5))
}

/// `(A_1, A_2)` in closed form.
pub fn a1_a2_closed(point: &EvalPoint) -> (f64, f64) {
    let beta = point.beta();
    let lambda = point.lambda();
    let x = beta * point.log_span();
    let b4 = beta.powi(4);
    let (j1, j2) = if x < 0.5 { a_brackets_series(x) } else { a_brackets(x) };
    (j1 / b4 / (lambda * lambda), j2 / b4 / (2.0 * lambda * lambda))
}

/// `x - 3 + D (3 + 2x + x^2/2)` and `x/2 - (1 - D^2)/4 - (1 - D (1 + x))`
/// with `D = e^{-x}`.
fn a_brackets(x: f64) -> (f64, f64) {
    let d = (-x).exp();
    let j1 = x + 3.0 * (-x).exp_m1() + d * (2.0 * x + 0.5 * x * x);
    let j2 = 0.5 * x + 0.25 * (-2.0 * x).exp_m1() + (-x).exp_m1() + d * x;
    (j1, j2)
}

/// Taylor series of [`a_brackets`]; both start at `x^4 / 24`.
fn a_brackets_series(x: f64) -> (f64, f64) {
    let (mut j1, mut j2) = (0.0, 0.0);
    let mut term = 1.0;
    for n in 1..=30 {
        term *= -x / n as f64;
        if n >= 4 {
            let m = n as f64;
            j1 += term * (m - 2.0) * (m - 3.0) / 2.0;
            j2 += term * (2f64.powi(n - 2) + 1.0 - m);
        }
    }
    (j1, j2)
}

/// `(A_1, A_2)` by iterated integration: the three inner integrals use
/// their antiderivatives, the outer one over log time is done by adaptive
/// quadrature.
pub fn a1_a2(point: &EvalPoint) -> Result<(f64, f64)> {
    let beta = point.beta();
    let lambda = point.lambda();
    let span = point.log_span();
    let q = Integrator::with_rel_tol(1e-12);
    let outer1 = |s: f64| {
        let e = (-beta * s).exp();
        -(-beta * s).exp_m1() / beta.powi(3) - s * e / (beta * beta) - s * s * e / (2.0 * beta)
    };
    let outer2 = |s: f64| -(-2.0 * beta * s).exp_m1() / (2.0 * beta.powi(3)) - s * (-beta * s).exp() / (beta * beta);
    let a1 = q.integrate(outer1, 0.0, span)?.value / (lambda * lambda);
    let a2 = q.integrate(outer2, 0.0, span)?.value / (2.0 * lambda * lambda);
    Ok((a1, a2))
}

/// `||f_t (x)_1 f_t||^2 = A_1 + A_2`.
pub fn f_contract_norm_sq(point: &EvalPoint) -> Result<f64> {
    let (a1, a2) = a1_a2(point)?;
    Ok(a1 + a2)
}

/// Each quantity minus its leading term, evaluated from the exact
/// expressions (no subtraction of nearly equal numbers).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Remainders {
    /// `2||f||^2 - 1 - (log T / (beta lambda) - 1 / (beta^2 lambda))`
    pub f1: f64,
    /// `b^2 - 1 - 2 (log T / (beta lambda) - 1 / (beta^2 lambda))`
    pub f2: f64,
    /// `<f (x)_1 f, f> - 3 / (4 beta sqrt(lambda))`
    pub f3: f64,
    /// `A_1 - 1 / (beta^2 lambda)`
    pub a1: f64,
    /// `A_2 - 1 / (4 beta^2 lambda)`
    pub a2: f64,
}

impl Remainders {
    pub fn at(point: &EvalPoint) -> Self {
        let beta = point.beta();
        let lambda = point.lambda();
        let ln_t = point.params.horizon.ln();
        let x = beta * point.log_span();
        let d = (-x).exp();
        let b2 = beta * beta;
        let b4 = b2 * b2;
        let lead = ln_t / beta - 1.0 / b2;
        let e = d / b2;
        let f1 = e / lambda;
        let f2 = 2.0 * e / lambda + (lead + e).powi(2) / (lambda * lambda);
        let f3 = 3.0 * (ln_t + 2.0 * (-x).exp_m1() / beta + point.log_span() * d) / (4.0 * b2 * lambda.powf(1.5));
        let a1 = (beta * ln_t - 3.0 + d * (3.0 + 2.0 * x + 0.5 * x * x)) / (b4 * lambda * lambda);
        let a2 = (0.5 * beta * ln_t + 0.25 * (-2.0 * x).exp_m1() - 1.0 + d * (1.0 + x)) / (2.0 * b4 * lambda * lambda);
        Self { f1, f2, f3, a1, a2 }
    }
}
