//! The error law on each side of `alpha = 1/2`.
//!
//! cargo run --release --example regime_check -- [n_paths]

use alpha_bridge::mc_clt::{regime_check, CltConfig};
use alpha_bridge::{BridgeParams, GridScheme, GridSpec};

fn main() -> alpha_bridge::Result<()> {
    let n_paths: usize = std::env::args().nth(1).map_or(10_000, |s| s.parse().expect("n_paths"));
    for (alpha, k) in [(0.25, 10.0), (0.5, 10.0), (1.0, 10.0)] {
        let cfg = CltConfig::new(BridgeParams::new(alpha, 1.0)?, n_paths, 31).with_grid(GridSpec {
            n: 4000,
            scheme: GridScheme::Geometric,
        });
        let r = regime_check(&cfg, k)?;
        let q = r.quantile_diagnostics;
        print!(
            "alpha {alpha}: {} regime, scale {:.3}, quartiles {:.3} / {:.3} / {:.3}",
            r.regime, r.scaling, q.q1, q.median, q.q3
        );
        if let Some(ks) = q.ks_two_sample {
            print!(", KS vs limit {ks:.4}");
        }
        if let Some(c) = r.clt {
            print!(", d_hat {:.4}", c.d_hat);
        }
        println!();
    }
    Ok(())
}
