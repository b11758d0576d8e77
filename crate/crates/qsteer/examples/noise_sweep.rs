//! Sweep the depolarizing family and print where each copy's steering
//! certificate lives.
//!
//! ```sh
//! cargo run --example noise_sweep
//! ```

use qsteer::cloning::{make_family, LambdaFamily};
use qsteer::explorer::run_threshold;
use qsteer::qudit::Dimension;
use qsteer::steering::no_cloning_report;

fn main() -> qsteer::Result<()> {
    let d = Dimension::new(2)?;
    println!("p      sum_ab   sum_ac   total    AB  AC");
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let lam = make_family(&LambdaFamily::Depolarizing(p), d)?;
        let r = no_cloning_report(&lam)?;
        println!(
            "{p:<6.2} {:<8.4} {:<8.4} {:<8.4} {:<3} {}",
            r.sum_ab,
            r.sum_ac,
            r.total,
            if r.steerable_ab { "yes" } else { "no" },
            if r.steerable_ac { "yes" } else { "no" },
        );
    }
    let threshold = run_threshold(d)?;
    println!(
        "\nAB certificate survives up to p* = {:.6} (q1 = {:.6})",
        threshold.p_star, threshold.q1[0]
    );
    Ok(())
}
