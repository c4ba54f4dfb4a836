//! The MLE of `alpha` from single paths, with its chaos decomposition.
//!
//! cargo run --release --example estimate_mle -- [alpha] [k]

use alpha_bridge::rng::{StreamDomain, StreamFactory};
use alpha_bridge::{
    decompose_error, mle_estimate, standardized_statistic, BridgeParams, GridScheme, PathPlan, TimeGrid,
};

fn main() -> alpha_bridge::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(1.0, |s| s.parse().expect("alpha"));
    let k: f64 = args.next().map_or(10.0, |s| s.parse().expect("k"));
    let params = BridgeParams::new(alpha, 1.0)?;
    let plan = PathPlan::new(
        params,
        TimeGrid::with_end_gap(1.0, (-k).exp(), 4000, GridScheme::Geometric)?,
    )?;
    let streams = StreamFactory::new(11, StreamDomain::Paths);
    println!(
        "{:>8} {:>10} {:>12} {:>12}",
        "replica", "alpha_hat", "standardized", "chaos ratio"
    );
    for i in 0..8 {
        let path = plan.sample(&mut streams.stream(i))?;
        let est = mle_estimate(&path)?;
        let z = standardized_statistic(&est, &params)?;
        let ratio = decompose_error(&path, &params)?.ratio();
        println!("{i:>8} {:>10.5} {z:>12.5} {ratio:>12.5}", est.alpha_hat);
    }
    Ok(())
}
