//! Globally adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! Intervals are bisected in order of their error estimate until the summed
//! estimate meets `max(abs_tol, rel_tol * |I|)`. Nested calls give iterated
//! multi-dimensional integrals; integrands with kinks should be split at the
//! kinks with [`Integrator::integrate_pieces`].

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Tolerance settings for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_segments: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-300,
            max_segments: 4000,
        }
    }
}

impl Integrator {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    /// Integrate `f` over `[a, b]`. A reversed or empty interval integrates to
    /// zero with the usual sign convention.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> Result<Estimate> {
        self.integrate_with(&mut f, a, b)
    }

    fn integrate_with<F: FnMut(f64) -> f64>(&self, f: &mut F, a: f64, b: f64) -> Result<Estimate> {
        if a == b {
            return Ok(Estimate {
                value: 0.0,
                abs_error: 0.0,
                evaluations: 0,
            });
        }
        if b < a {
            let e = self.integrate_with(f, b, a)?;
            return Ok(Estimate { value: -e.value, ..e });
        }
        let first = gk15(f, a, b);
        let mut evaluations = 15;
        let mut total = first.value;
        let mut error = first.error;
        let mut heap = BinaryHeap::new();
        heap.push(first);
        while error > self.abs_tol.max(self.rel_tol * total.abs()) {
            if !total.is_finite() {
                return Err(Error::numerical("non-finite integrand", f64::INFINITY));
            }
            if heap.len() >= self.max_segments {
                return Err(Error::numerical(
                    format!("segment limit {} reached on [{a}, {b}]", self.max_segments),
                    error / total.abs().max(f64::MIN_POSITIVE),
                ));
            }
            let worst = heap.pop().expect("heap is never empty here");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                // Interval cannot be split further in floating point.
                return Err(Error::numerical(
                    "interval exhausted before reaching tolerance",
                    error / total.abs().max(f64::MIN_POSITIVE),
                ));
            }
            let left = gk15(f, worst.a, mid);
            let right = gk15(f, mid, worst.b);
            evaluations += 30;
            total += left.value + right.value - worst.value;
            error += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);
        }
        // Re-sum to shed accumulated cancellation from the running updates.
        let value = heap.iter().map(|s| s.value).sum::<f64>();
        let abs_error = heap.iter().map(|s| s.error).sum::<f64>();
        if !value.is_finite() {
            return Err(Error::numerical("non-finite integrand", f64::INFINITY));
        }
        Ok(Estimate {
            value,
            abs_error,
            evaluations,
        })
    }

    /// Integrate over consecutive pieces `[p0, p1], [p1, p2], ...`, each with
    /// the full tolerance. Breakpoints should sit on kinks of `f`.
    pub fn integrate_pieces<F: FnMut(f64) -> f64>(&self, mut f: F, points: &[f64]) -> Result<Estimate> {
        let mut out = Estimate {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        };
        for w in points.windows(2) {
            let e = self.integrate_with(&mut f, w[0], w[1])?;
            out.value += e.value;
            out.abs_error += e.abs_error;
            out.evaluations += e.evaluations;
        }
        Ok(out)
    }
}
