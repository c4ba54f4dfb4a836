use serde::Serialize;
use serde_json::Value;

use super::closed_form::{a1_a2, a1_a2_closed, b_minus_one, f_norm_sq, f_triple_inner, lambda_b, Remainders};
use super::cross::{g_cross_quantities, PsiValues, PsiVariant};
use super::EvalPoint;
use crate::error::Result;
use crate::record::{num, opt, FlatRecord};

/// Remainders of the four large-lambda expansions, each multiplied by the
/// inverse order of its expansion (`lambda` or `sqrt(lambda)`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticResiduals {
    /// `lambda |2||f||^2 - 1 - expansion|`
    pub f1: f64,
    /// `lambda |b^2 - 1 - expansion|`
    pub f2: f64,
    /// `sqrt(lambda) |<f (x)_1 f, f> - 3/(4 beta sqrt(lambda))|`
    pub f3: f64,
    /// `lambda |A_1 + A_2 - 5/(4 beta^2 lambda)|`
    pub f4: f64,
}

impl AsymptoticResiduals {
    pub fn at(point: &EvalPoint) -> Self {
        let r = Remainders::at(point);
        let lambda = point.lambda();
        Self {
            f1: lambda * r.f1.abs(),
            f2: lambda * r.f2.abs(),
            f3: lambda.sqrt() * r.f3.abs(),
            f4: lambda * (r.a1 + r.a2).abs(),
        }
    }
}

/// Everything deterministic about the CLT at one point. The `g`-dependent
/// fields are `None` when `T - t >= 1/e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelReport {
    pub lambda: f64,
    pub b: f64,
    pub f_norm_sq: f64,
    pub f_triple_inner: f64,
    pub f_contract_norm_sq: f64,
    pub a1: f64,
    pub a2: f64,
    pub g_norm_sq: Option<f64>,
    pub g_contract_norm: Option<f64>,
    pub fg_inner: Option<f64>,
    pub fg_contract_norm: Option<f64>,
    pub psi1: Option<f64>,
    pub psi2: Option<f64>,
    pub psi3: Option<f64>,
    pub asymptotic_residuals: AsymptoticResiduals,
}

impl KernelReport {
    pub fn psi_max(&self) -> Option<f64> {
        Some(self.psi1?.max(self.psi2?).max(self.psi3?))
    }
}

impl FlatRecord for KernelReport {
    fn fields(&self) -> Vec<(&'static str, Value)> {
        let r = &self.asymptotic_residuals;
        vec![
            ("lambda", num(self.lambda)),
            ("b", num(self.b)),
            ("f_norm_sq", num(self.f_norm_sq)),
            ("f_triple_inner", num(self.f_triple_inner)),
            ("f_contract_norm_sq", num(self.f_contract_norm_sq)),
            ("a1", num(self.a1)),
            ("a2", num(self.a2)),
            ("g_norm_sq", opt(self.g_norm_sq)),
            ("g_contract_norm", opt(self.g_contract_norm)),
            ("fg_inner", opt(self.fg_inner)),
            ("fg_contract_norm", opt(self.fg_contract_norm)),
            ("psi1", opt(self.psi1)),
            ("psi2", opt(self.psi2)),
            ("psi3", opt(self.psi3)),
            ("asymptotic_residuals_f1", num(r.f1)),
            ("asymptotic_residuals_f2", num(r.f2)),
            ("asymptotic_residuals_f3", num(r.f3)),
            ("asymptotic_residuals_f4", num(r.f4)),
        ]
    }
}

/// Assemble the full report at `point`.
pub fn asymptotic_report(point: &EvalPoint, variant: PsiVariant) -> Result<KernelReport> {
    let (lambda, b) = lambda_b(point);
    let fn2 = f_norm_sq(point);
    let (a1, a2) = a1_a2(point)?;
    let contract = a1 + a2;
    let cross = if point.require_g_domain().is_ok() {
        Some(g_cross_quantities(point)?)
    } else {
        None
    };
    let psi = cross.map(|c| PsiValues::from_parts(b, fn2, contract, &c, variant));
    Ok(KernelReport {
        lambda,
        b,
        f_norm_sq: fn2,
        f_triple_inner: f_triple_inner(point),
        f_contract_norm_sq: contract,
        a1,
        a2,
        g_norm_sq: cross.map(|c| c.g_norm_sq),
        g_contract_norm: cross.map(|c| c.g_contract_norm),
        fg_inner: cross.map(|c| c.fg_inner),
        fg_contract_norm: cross.map(|c| c.fg_contract_norm),
        psi1: psi.map(|p| p.psi1),
        psi2: psi.map(|p| p.psi2),
        psi3: psi.map(|p| p.psi3),
        asymptotic_residuals: AsymptoticResiduals::at(point),
    })
}

/// The three quantities whose limits give the lower Kolmogorov bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundConditions {
    /// `||f (x)_1 f||`, tends to 0.
    pub contract_norm: f64,
    /// `(2||f||^2 - 1) / <f (x)_1 f, f>`, tends to 0.
    pub excess_ratio: f64,
    /// `||f (x)_1 f|| / <f (x)_1 f, f>`, tends to `2 sqrt(5) / 3`.
    pub contract_ratio: f64,
    pub limits: [f64; 3],
}

pub fn lower_bound_conditions(point: &EvalPoint) -> LowerBoundConditions {
    let (a1, a2) = a1_a2_closed(point);
    let contract_norm = (a1 + a2).sqrt();
    let triple = f_triple_inner(point);
    LowerBoundConditions {
        contract_norm,
        excess_ratio: b_minus_one(point) / triple,
        contract_ratio: contract_norm / triple,
        limits: [0.0, 0.0, 2.0 * 5f64.sqrt() / 3.0],
    }
}
