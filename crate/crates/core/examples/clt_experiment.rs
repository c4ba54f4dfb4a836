//! Kolmogorov distance of the standardized MLE error to N(0, 1).
//!
//! cargo run --release --example clt_experiment -- [k] [n_paths]

use alpha_bridge::mc_clt::{clt_experiment, CltConfig};
use alpha_bridge::{BridgeParams, GridScheme, GridSpec};

fn main() -> alpha_bridge::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: f64 = args.next().map_or(6.0, |s| s.parse().expect("k"));
    let n_paths: usize = args.next().map_or(20_000, |s| s.parse().expect("n_paths"));
    let cfg = CltConfig::new(BridgeParams::new(1.0, 1.0)?, n_paths, 7).with_grid(GridSpec {
        n: 4000,
        scheme: GridScheme::Geometric,
    });
    let r = clt_experiment(&cfg, k)?;
    println!("k = {k}, lambda = {:.3}, n_paths = {}", r.lambda, r.n_paths);
    println!("d_hat = {:.5} (DKW half-width {:.5})", r.d_hat, r.dkw_halfwidth);
    println!("d_hat * sqrt(k) = {:.4}", r.rate_product);
    if let Some(p) = r.psi_max {
        println!("max psi = {p:.4}");
    }
    let m = r.sample_moments;
    println!(
        "chaos numerator: mean {:.4}, var {:.4}, m3 {:.4}, k4 {:.4}",
        m.mean, m.var, m.m3, m.k4
    );
    Ok(())
}
