//! Drive the command-line pipeline from code: resolve a config, render the
//! artifact in memory and print it.
//!
//! cargo run --example run_config

use alpha_bridge::cli::{parse_args, render_artifact};

fn main() {
    let line = "alpha-bridge kernels --alpha 0.75 --k 3,6,12 --format json";
    let cfg = parse_args(line.split_whitespace()).unwrap_or_else(|f| panic!("{f}"));
    let bytes = render_artifact(&cfg).unwrap_or_else(|f| panic!("{f}"));
    println!("{}", String::from_utf8_lossy(&bytes));
}
