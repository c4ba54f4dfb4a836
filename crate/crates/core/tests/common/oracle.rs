//! Brute-force reference values for the chaos quantities.
//!
//! The kernels are evaluated literally from their time-domain formulas and
//! integrated with composite Gauss-Legendre rules after the substitution
//! `T - x = T e^{-s}`, which makes them smooth between the diagonal kinks.
//! The ordered-simplex integrals are integrated as linear ODE chains with
//! classical RK4. Nothing here calls the library's closed forms or its
//! quadrature.

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Composite rule over consecutive pieces, each cut into panels no wider
/// than `panel`.
pub struct Rule {
    nodes: Vec<(f64, f64)>,
    panel: f64,
}

impl Rule {
    pub fn new(order: usize, panel: f64) -> Self {
        Self {
            nodes: gauss_legendre(order),
            panel,
        }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, points: &[f64], mut f: F) -> f64 {
        let mut total = 0.0;
        for w in points.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            let m = ((b - a) / self.panel).ceil().max(1.0) as usize;
            let h = (b - a) / m as f64;
            for j in 0..m {
                let c = a + (j as f64 + 0.5) * h;
                for &(x, wt) in &self.nodes {
                    total += wt * 0.5 * h * f(c + 0.5 * h * x);
                }
            }
        }
        total
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub alpha: f64,
    pub horizon: f64,
    /// `T - t`
    pub gap_t: f64,
    pub lambda: f64,
    abs_log: f64,
    /// `log(T / (T - t))`
    pub span: f64,
}

impl Oracle {
    pub fn new(alpha: f64, horizon: f64, lambda: f64) -> Self {
        let abs_log = (2.0 * alpha - 1.0) * lambda;
        let gap_t = (-abs_log).exp();
        assert!(gap_t < horizon);
        Self {
            alpha,
            horizon,
            gap_t,
            lambda,
            abs_log,
            span: horizon.ln() + abs_log,
        }
    }

    fn gap(&self, s: f64) -> f64 {
        self.horizon * (-s).exp()
    }

    /// `f_t` at gaps `T - u`, `T - v`.
    pub fn f_gaps(&self, gu: f64, gv: f64) -> f64 {
        let (later, earlier) = (gu.min(gv), gu.max(gv));
        later.powf(self.alpha - 1.0) * earlier.powf(-self.alpha) / (2.0 * self.lambda.sqrt())
    }

    /// `g_t` at gaps `T - u`, `T - v`.
    pub fn g_gaps(&self, gu: f64, gv: f64) -> f64 {
        let later = gu.min(gv);
        let beta = 2.0 * self.alpha - 1.0;
        gu.powf(-self.alpha) * gv.powf(-self.alpha) * (later.powf(beta) - self.gap_t.powf(beta)) / self.abs_log
    }

    /// Kernel in log time with the square-root Jacobians folded in, so that
    /// `L^2` products become plain integrals over `[0, span]`.
    fn weighted<K: Fn(&Self, f64, f64) -> f64>(&self, kernel: K, s: f64, r: f64) -> f64 {
        let (gs, gr) = (self.gap(s), self.gap(r));
        kernel(self, gs, gr) * (gs * gr).sqrt()
    }

    pub fn phi(&self, s: f64, r: f64) -> f64 {
        self.weighted(Self::f_gaps, s, r)
    }

    pub fn gamma(&self, s: f64, r: f64) -> f64 {
        self.weighted(Self::g_gaps, s, r)
    }

    fn rule(&self) -> Rule {
        Rule::new(12, 1.0)
    }

    fn inner_pieces(&self, a: f64, b: f64) -> [f64; 4] {
        [0.0, a.min(b), a.max(b), self.span]
    }

    /// `int_0^L int_0^L k(s, r)^2`.
    pub fn norm_sq<K: Fn(f64, f64) -> f64>(&self, k: K) -> f64 {
        let q = self.rule();
        q.integrate(&[0.0, self.span], |s| {
            q.integrate(&[0.0, s, self.span], |r| k(s, r).powi(2))
        })
    }

    /// `int_0^L int_0^L a(s, r) b(s, r)`.
    pub fn inner<A: Fn(f64, f64) -> f64, B: Fn(f64, f64) -> f64>(&self, a: A, b: B) -> f64 {
        let q = self.rule();
        q.integrate(&[0.0, self.span], |s| {
            q.integrate(&[0.0, s, self.span], |r| a(s, r) * b(s, r))
        })
    }

    /// `(a (x)_1 b)(s, r) = int a(s, w) b(w, r) dw`.
    pub fn contract<A: Fn(f64, f64) -> f64, B: Fn(f64, f64) -> f64>(&self, a: &A, b: &B, s: f64, r: f64) -> f64 {
        self.rule().integrate(&self.inner_pieces(s, r), |w| a(s, w) * b(w, r))
    }

    /// `||a (x)_1 b||^2` over the full square.
    pub fn contract_norm_sq<A: Fn(f64, f64) -> f64, B: Fn(f64, f64) -> f64>(&self, a: A, b: B) -> f64 {
        let q = self.rule();
        q.integrate(&[0.0, self.span], |s| {
            q.integrate(&[0.0, s, self.span], |r| self.contract(&a, &b, s, r).powi(2))
        })
    }

    pub fn f_norm_sq(&self) -> f64 {
        self.norm_sq(|s, r| self.phi(s, r))
    }

    /// `int f(x1, x2) f(x2, x3) f(x3, x1)`.
    pub fn f_triple_inner(&self) -> f64 {
        let phi = |s, r| self.phi(s, r);
        let q = self.rule();
        q.integrate(&[0.0, self.span], |s1| {
            q.integrate(&[0.0, s1, self.span], |s3| {
                self.contract(&phi, &phi, s1, s3) * phi(s3, s1)
            })
        })
    }

    pub fn f_contract_norm_sq(&self) -> f64 {
        self.contract_norm_sq(|s, r| self.phi(s, r), |s, r| self.phi(s, r))
    }

    pub fn g_norm_sq(&self) -> f64 {
        self.norm_sq(|s, r| self.gamma(s, r))
    }

    pub fn g_contract_norm(&self) -> f64 {
        self.contract_norm_sq(|s, r| self.gamma(s, r), |s, r| self.gamma(s, r))
            .sqrt()
    }

    pub fn fg_inner(&self) -> f64 {
        self.inner(|s, r| self.phi(s, r), |s, r| self.gamma(s, r))
    }

    pub fn fg_contract_norm(&self) -> f64 {
        self.contract_norm_sq(|s, r| self.phi(s, r), |s, r| self.gamma(s, r))
            .sqrt()
    }

    /// `int_{0 < x_1 < ... < x_4 < t} prod_i (T - x_i)^{p_i} dx`, solved as
    /// `y_i' = w_i y_{i-1}` in log time.
    pub fn simplex(&self, powers: [f64; 4]) -> f64 {
        let steps = 20_000;
        let coarse = self.simplex_rk4(powers, steps);
        let fine = self.simplex_rk4(powers, 2 * steps);
        (16.0 * fine - coarse) / 15.0
    }

    fn simplex_rk4(&self, powers: [f64; 4], steps: usize) -> f64 {
        let weights = |s: f64| {
            let g = self.gap(s);
            powers.map(|p| g.powf(p) * g)
        };
        let rhs = |s: f64, y: [f64; 4]| {
            let w = weights(s);
            [w[0], w[1] * y[0], w[2] * y[1], w[3] * y[2]]
        };
        let h = self.span / steps as f64;
        let mut y = [0.0; 4];
        for i in 0..steps {
            let s = i as f64 * h;
            let k1 = rhs(s, y);
            let k2 = rhs(s + 0.5 * h, std::array::from_fn(|j| y[j] + 0.5 * h * k1[j]));
            let k3 = rhs(s + 0.5 * h, std::array::from_fn(|j| y[j] + 0.5 * h * k2[j]));
            let k4 = rhs(s + h, std::array::from_fn(|j| y[j] + h * k3[j]));
            for j in 0..4 {
                y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            }
        }
        y[3]
    }

    /// Ordered chain `x_1 < x_2 < x_3 < x_4` of the fourth power of `f`.
    pub fn a1(&self) -> f64 {
        let a = self.alpha;
        self.simplex([-2.0 * a, -1.0, -1.0, 2.0 * a - 2.0]) / self.lambda.powi(2)
    }

    /// Interleaved chain `x_1 < x_3 < x_2 < x_4`.
    pub fn a2(&self) -> f64 {
        let a = self.alpha;
        self.simplex([-2.0 * a, -2.0 * a, 2.0 * a - 2.0, 2.0 * a - 2.0]) / (2.0 * self.lambda.powi(2))
    }
}
