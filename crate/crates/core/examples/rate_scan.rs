//! Kolmogorov distance against `k` and the product `d_hat sqrt(k)`.
//!
//! cargo run --release --example rate_scan -- [n_paths]

use alpha_bridge::mc_clt::{rate_scan, CltConfig};
use alpha_bridge::{BridgeParams, GridScheme, GridSpec};

fn main() -> alpha_bridge::Result<()> {
    let n_paths: usize = std::env::args().nth(1).map_or(20_000, |s| s.parse().expect("n_paths"));
    let cfg = CltConfig::new(BridgeParams::new(1.0, 1.0)?, n_paths, 7).with_grid(GridSpec {
        n: 4000,
        scheme: GridScheme::Geometric,
    });
    println!("{:>4} {:>9} {:>9} {:>9}", "k", "d_hat", "dkw", "d sqrt k");
    for r in rate_scan(&cfg, &[4.0, 6.0, 10.0, 14.0])? {
        println!(
            "{:>4} {:>9.5} {:>9.5} {:>9.4}",
            r.k, r.d_hat, r.dkw_halfwidth, r.rate_product
        );
    }
    Ok(())
}
