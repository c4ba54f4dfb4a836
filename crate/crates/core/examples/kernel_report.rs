//! Deterministic kernel quantities and their large-`lambda` behaviour.
//!
//! cargo run --release --example kernel_report -- [alpha]

use alpha_bridge::chaos_kernels::{asymptotic_report, lower_bound_conditions, EvalPoint, PsiVariant};
use alpha_bridge::BridgeParams;

fn main() -> alpha_bridge::Result<()> {
    let alpha: f64 = std::env::args().nth(1).map_or(1.0, |s| s.parse().expect("alpha"));
    let params = BridgeParams::new(alpha, 1.0)?;
    println!(
        "{:>6} {:>8} {:>8} {:>9} {:>9} {:>9} {:>9}",
        "k", "b", "triple", "contr sq", "psi max", "excess", "c ratio"
    );
    for k in [2.0, 4.0, 8.0, 16.0, 64.0, 256.0] {
        let p = EvalPoint::from_k(params, k)?;
        let r = asymptotic_report(&p, PsiVariant::Printed)?;
        let lb = lower_bound_conditions(&p);
        let psi = r.psi_max().map_or("-".into(), |v| format!("{v:.5}"));
        println!(
            "{k:>6} {:>8.5} {:>8.5} {:>9.5} {psi:>9} {:>9.5} {:>9.5}",
            r.b, r.f_triple_inner, r.f_contract_norm_sq, lb.excess_ratio, lb.contract_ratio
        );
    }
    println!("contract ratio limit {:.5}", 2.0 * 5f64.sqrt() / 3.0);
    Ok(())
}
