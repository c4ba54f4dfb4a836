use alpha_bridge::bridge_sim::{marginal_variance, step_covariance};
use alpha_bridge::rng::{StreamDomain, StreamFactory};
use alpha_bridge::{BridgeParams, GridScheme, PathPlan, TimeGrid};

fn moments(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    (mean, var, ((m4 - var * var) / n).sqrt())
}

fn sample_at(params: BridgeParams, grid: TimeGrid, index: usize, n: u64, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let plan = PathPlan::new(params, grid).unwrap();
    let streams = StreamFactory::new(seed, StreamDomain::Paths);
    (0..n)
        .map(|i| {
            let path = plan.sample(&mut streams.stream(i)).unwrap();
            (path.x[index], path.w[index])
        })
        .unzip()
}

#[test]
fn variance_at_half_matches_closed_form() {
    let p = BridgeParams::new(1.0, 1.0).unwrap();
    let grid = TimeGrid::build(1.0, 0.5, 11, GridScheme::Uniform).unwrap();
    let (x, _) = sample_at(p, grid, 10, 20_000, 3);
    let (mean, var, se_var) = moments(&x);
    assert!(mean.abs() < 4.0 * (var / x.len() as f64).sqrt(), "mean {mean}");
    assert!((var - 0.25).abs() < 4.0 * se_var, "var {var} +- {se_var}");
}

#[test]
fn variance_and_cross_covariance_on_geometric_grid() {
    let p = BridgeParams::new(0.75, 2.0).unwrap();
    let grid = TimeGrid::with_end_gap(2.0, (-3.0f64).exp(), 60, GridScheme::Geometric).unwrap();
    let t = grid.t_end();
    let idx = grid.len() - 1;
    let (x, w) = sample_at(p, grid, idx, 20_000, 4);
    let (_, var, se_var) = moments(&x);
    let expected = marginal_variance(&p, t).unwrap();
    assert!((var - expected).abs() < 4.0 * se_var, "var {var} vs {expected}");
    // E[W_t X_t] = (T - t)^alpha int_0^t (T - u)^-alpha du
    let gap: f64 = 2.0 - t;
    let cov_expected = gap.powf(0.75) * (2f64.powf(0.25) - gap.powf(0.25)) / 0.25;
    let prods: Vec<f64> = x.iter().zip(&w).map(|(a, b)| a * b).collect();
    let (cov, v, _) = moments(&prods);
    assert!(
        (cov - cov_expected).abs() < 4.0 * (v / prods.len() as f64).sqrt(),
        "cov {cov} vs {cov_expected}"
    );
}

#[test]
fn refinement_keeps_the_law_at_shared_points() {
    let p = BridgeParams::new(1.7, 1.0).unwrap();
    let coarse = TimeGrid::with_end_gap(1.0, (-6.0f64).exp(), 7, GridScheme::Geometric).unwrap();
    let fine = TimeGrid::with_end_gap(1.0, (-6.0f64).exp(), 61, GridScheme::Geometric).unwrap();
    let var_y = |g: &TimeGrid| {
        let mut acc = vec![0.0];
        for w in g.times().windows(2) {
            acc.push(acc.last().unwrap() + step_covariance(&p, w[0], w[1]).unwrap().var_dy);
        }
        acc
    };
    let (vc, vf) = (var_y(&coarse), var_y(&fine));
    for (i, &t) in coarse.times().iter().enumerate() {
        let j = fine.times().iter().position(|&s| (s - t).abs() < 1e-14).unwrap();
        assert!((vc[i] - vf[j]).abs() <= 1e-12 * vc[i].max(1e-300), "t = {t}");
    }
}

#[test]
fn extreme_windows_stay_finite() {
    for alpha in [0.05, 0.5, 1.0, 2.0] {
        let p = BridgeParams::new(alpha, 1.0).unwrap();
        let grid = TimeGrid::with_end_gap(1.0, (-200.0f64).exp(), 2000, GridScheme::Geometric).unwrap();
        let plan = PathPlan::new(p, grid).unwrap();
        let path = plan
            .sample(&mut StreamFactory::new(1, StreamDomain::Paths).stream(0))
            .unwrap();
        assert!(
            path.x.iter().chain(&path.y).chain(&path.w).all(|v| v.is_finite()),
            "alpha {alpha}"
        );
        assert_eq!(path.x[0], 0.0);
    }
}

#[test]
fn overflowing_y_is_reported() {
    // sd(Y) grows like (T - t)^{1/2 - alpha}, beyond f64 range here
    let p = BridgeParams::new(5.0, 1.0).unwrap();
    let grid = TimeGrid::with_end_gap(1.0, (-200.0f64).exp(), 2000, GridScheme::Geometric).unwrap();
    let err = PathPlan::new(p, grid)
        .unwrap()
        .sample(&mut StreamFactory::new(1, StreamDomain::Paths).stream(0))
        .unwrap_err();
    assert!(matches!(err, alpha_bridge::Error::NumericalFailure { .. }));
}
