//! One path of the bridge on a geometric grid approaching `T`.
//!
//! cargo run --example simulate_path -- [alpha] [k]

use alpha_bridge::rng::{StreamDomain, StreamFactory};
use alpha_bridge::{simulate_path, BridgeParams, GridScheme, TimeGrid};

fn main() -> alpha_bridge::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(1.0, |s| s.parse().expect("alpha"));
    let k: f64 = args.next().map_or(8.0, |s| s.parse().expect("k"));
    let params = BridgeParams::new(alpha, 1.0)?;
    let grid = TimeGrid::with_end_gap(1.0, (-k).exp(), 20, GridScheme::Geometric)?;
    let path = simulate_path(
        &params,
        &grid,
        &mut StreamFactory::new(3, StreamDomain::Paths).stream(0),
    )?;
    println!("{:>12} {:>12} {:>10} {:>10}", "t", "T - t", "W", "X");
    for i in 0..grid.len() {
        println!(
            "{:>12.8} {:>12.4e} {:>10.5} {:>10.5}",
            grid.times()[i],
            grid.gaps()[i],
            path.w[i],
            path.x[i]
        );
    }
    Ok(())
}
