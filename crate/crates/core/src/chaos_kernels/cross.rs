//! Quantities involving `g_t` and the three `psi` functionals.
//!
//! Norms and inner products of `f` and `g` are 2-D adaptive quadratures in
//! log time, split along the diagonal where `|s - r|` has its kink. The
//! one-contractions `(g (x)_1 g)(s, r)` and `(f (x)_1 g)(s, r)` have
//! closed-form inner integrals (sums of exponentials), so their norms are
//! 2-D quadratures as well.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use super::closed_form::{a1_a2, f_norm_sq, lambda_b};
use super::EvalPoint;
use crate::error::{Error, Result};
use crate::quadrature::Integrator;

/// The four `g`-quantities entering the psi bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GCross {
    /// `||g||^2`
    pub g_norm_sq: f64,
    /// `||g (x)_1 g||`
    pub g_contract_norm: f64,
    /// `<f, g>`
    pub fg_inner: f64,
    /// `||f (x)_1 g||`
    pub fg_contract_norm: f64,
}

/// Log-time forms of `F`, `G` and their contractions at one point.
struct LogTimeKernels {
    /// `beta / 2`
    a: f64,
    span: f64,
    f_scale: f64,
    g_scale: f64,
    decay: f64,
}

impl LogTimeKernels {
    fn new(point: &EvalPoint) -> Self {
        Self {
            a: 0.5 * point.beta(),
            span: point.log_span(),
            f_scale: 0.5 / point.lambda().sqrt(),
            g_scale: 1.0 / point.abs_log(),
            decay: point.decay(),
        }
    }

    #[inline]
    fn f(&self, s: f64, r: f64) -> f64 {
        self.f_scale * (-self.a * (s - r).abs()).exp()
    }

    #[inline]
    fn g(&self, s: f64, r: f64) -> f64 {
        let a = self.a;
        self.g_scale * ((-a * (s - r).abs()).exp() - (a * (s + r) - 2.0 * a * self.span).exp())
    }

    /// `(1 - e^{-2 a y}) / (2a)`
    #[inline]
    fn ramp(&self, y: f64) -> f64 {
        -(-2.0 * self.a * y).exp_m1() / (2.0 * self.a)
    }

    /// `int_0^L e^{-a|s-w|} e^{-a|r-w|} dw`
    fn p(&self, s: f64, r: f64) -> f64 {
        let (lo, hi) = if s <= r { (s, r) } else { (r, s) };
        let d = hi - lo;
        (-self.a * d).exp() * (self.ramp(lo) + d + self.ramp(self.span - hi))
    }

    /// `int_0^L e^{-a|s-w|} e^{a(r+w) - 2aL} dw`
    fn q(&self, s: f64, r: f64) -> f64 {
        (self.a * (s + r) - 2.0 * self.a * self.span).exp() * (self.ramp(s) + self.span - s)
    }

    /// `int_0^L e^{a(s+w) - 2aL} e^{a(r+w) - 2aL} dw`
    fn rr(&self, s: f64, r: f64) -> f64 {
        (self.a * (s + r) - 2.0 * self.a * self.span).exp() * (1.0 - self.decay) / (2.0 * self.a)
    }

    fn gg(&self, s: f64, r: f64) -> f64 {
        self.g_scale * self.g_scale * (self.p(s, r) - self.q(s, r) - self.q(r, s) + self.rr(s, r))
    }

    fn fg(&self, s: f64, r: f64) -> f64 {
        self.f_scale * self.g_scale * (self.p(s, r) - self.q(s, r))
    }
}

/// `int_0^L ds int_{pieces(s)} dr h(s, r)` with the inner pieces chosen per `s`.
fn nested<H, P>(outer: &Integrator, inner: &Integrator, span: f64, h: H, pieces: P) -> Result<f64>
where
    H: Fn(f64, f64) -> f64,
    P: Fn(f64) -> Vec<f64>,
{
    let failure: Cell<Option<Error>> = Cell::new(None);
    let est = outer.integrate(
        |s| match inner.integrate_pieces(|r| h(s, r), &pieces(s)) {
            Ok(e) => e.value,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        },
        0.0,
        span,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(est?.value)
}

/// The `g`-quantities by quadrature. Needs `T - t < 1/e`.
pub fn g_cross_quantities(point: &EvalPoint) -> Result<GCross> {
    point.require_g_domain()?;
    let k = LogTimeKernels::new(point);
    let outer = Integrator::with_rel_tol(1e-9);
    let inner = Integrator::with_rel_tol(1e-10);
    let span = k.span;
    let lower = |s: f64| vec![0.0, s];
    let both = |s: f64| vec![0.0, s, span];

    let g_norm_sq = 2.0 * nested(&outer, &inner, span, |s, r| k.g(s, r).powi(2), lower)?;
    let fg_inner = 2.0 * nested(&outer, &inner, span, |s, r| k.f(s, r) * k.g(s, r), lower)?;
    let gg_sq = 2.0 * nested(&outer, &inner, span, |s, r| k.gg(s, r).powi(2), lower)?;
    let fg_sq = nested(&outer, &inner, span, |s, r| k.fg(s, r).powi(2), both)?;
    Ok(GCross {
        g_norm_sq,
        g_contract_norm: gg_sq.max(0.0).sqrt(),
        fg_inner,
        fg_contract_norm: fg_sq.max(0.0).sqrt(),
    })
}

/// How `||f (x)_1 g||` enters `psi_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PsiVariant {
    /// `sqrt(2 ||f (x)_1 g|| + <f, g>^2)`
    #[default]
    Printed,
    /// `sqrt(2 ||f (x)_1 g||^2 + <f, g>^2)`
    Squared,
}

impl std::str::FromStr for PsiVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(PsiVariant::Printed),
            "squared" => Ok(PsiVariant::Squared),
            other => Err(Error::InvalidInput(format!("unknown psi variant '{other}'"))),
        }
    }
}

impl std::fmt::Display for PsiVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PsiVariant::Printed => "printed",
            PsiVariant::Squared => "squared",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsiValues {
    pub psi1: f64,
    pub psi2: f64,
    pub psi3: f64,
}

impl PsiValues {
    pub fn from_parts(b: f64, f_norm_sq: f64, f_contract_norm_sq: f64, cross: &GCross, variant: PsiVariant) -> Self {
        let b2 = b * b;
        let psi1 = ((b2 - 2.0 * f_norm_sq).powi(2) + 8.0 * f_contract_norm_sq).sqrt() / b2;
        let contraction = match variant {
            PsiVariant::Printed => cross.fg_contract_norm,
            PsiVariant::Squared => cross.fg_contract_norm.powi(2),
        };
        let psi2 = 2.0 * (2.0 * contraction + cross.fg_inner.powi(2)).sqrt() / b2;
        let psi3 = 2.0 * (cross.g_norm_sq.powi(2) + 2.0 * cross.g_contract_norm.powi(2)).sqrt() / b2;
        Self { psi1, psi2, psi3 }
    }

    pub fn max(&self) -> f64 {
        self.psi1.max(self.psi2).max(self.psi3)
    }
}

/// `(psi_1, psi_2, psi_3)` at a point with `T - t < 1/e`.
pub fn psi(point: &EvalPoint, variant: PsiVariant) -> Result<PsiValues> {
    let cross = g_cross_quantities(point)?;
    let (_, b) = lambda_b(point);
    let (a1, a2) = a1_a2(point)?;
    Ok(PsiValues::from_parts(b, f_norm_sq(point), a1 + a2, &cross, variant))
}
