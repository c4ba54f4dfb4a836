//! Sample moments of the chaos numerator against their closed forms.
//!
//! cargo run --release --example moment_check -- [k] [n_paths]

use alpha_bridge::mc_clt::{moment_check, CltConfig};
use alpha_bridge::{BridgeParams, GridScheme, GridSpec};

fn main() -> alpha_bridge::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: f64 = args.next().map_or(4.0, |s| s.parse().expect("k"));
    let n_paths: usize = args.next().map_or(50_000, |s| s.parse().expect("n_paths"));
    let cfg = CltConfig::new(BridgeParams::new(1.0, 1.0)?, n_paths, 2024).with_grid(GridSpec {
        n: 4000,
        scheme: GridScheme::Geometric,
    });
    let m = moment_check(&cfg, k)?;
    let rows = [
        ("mean", m.sample.mean, m.expected.mean, m.z.mean),
        ("variance", m.sample.var, m.expected.var, m.z.var),
        ("third", m.sample.m3, m.expected.m3, m.z.m3),
        ("cumulant 4", m.sample.k4, m.expected.k4, m.z.k4),
    ];
    println!("{:>10} {:>10} {:>10} {:>7}", "", "sample", "exact", "z");
    for (name, s, e, z) in rows {
        println!("{name:>10} {s:>10.5} {e:>10.5} {z:>7.2}");
    }
    Ok(())
}
