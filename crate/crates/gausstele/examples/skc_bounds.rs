//! Finite-round secret-key-rate bounds: the pure-loss bound approaches
//! −log₂(1−η) as the number of channel uses grows.
//!
//! Run with: cargo run --example skc_bounds

use gausstele::skc::{c_epsilon, pure_loss_bound, thermal_bound};

fn main() -> gausstele::Result<()> {
    let epsilon = 0.1;
    println!("C({epsilon}) = {:.10}\n", c_epsilon(epsilon)?);

    let eta = 0.5f64;
    println!(
        "pure-loss η={eta}: asymptote −log₂(1−η) = {:.6}",
        -(1.0 - eta).log2()
    );
    println!("{:>10}  {:>14}", "n", "bound [bits]");
    for n in [1u64, 10, 100, 1_000, 10_000, 1_000_000] {
        println!("{n:>10}  {:>14.8}", pure_loss_bound(eta, n, epsilon)?);
    }

    let terms = thermal_bound(0.5, 1.0, 100, epsilon, Some(2.0))?;
    println!(
        "\nthermal η=0.5, N_B=1, n=100, V=2: total {:.8}",
        terms.total()
    );
    println!(
        "  leading {:.6} | entropy {:.6} | second-order {:.6} | finite-n {:.6}",
        terms.leading, terms.entropy_correction, terms.second_order, terms.finite_n
    );
    Ok(())
}
