//! Expected values of assets under a density operator.
//!
//! Builds the coherent market state ρ = ½(I + Δσ_x) and the asset
//! S = I + qσ_x, and sweeps the coherence parameters: the expectation is
//! 1 + qΔ, above or below the classical value 1 depending on the signs.
//!
//! Run with: cargo run -p qap --example expected_values

use qap::hermitian::{sigma_x, HermitianOperator};
use qap::market::{classical_embedding, expected_value};

fn main() -> qap::Result<()> {
    println!("E[S] = tr(rho S) for rho = (I + d*sx)/2, S = I + q*sx\n");
    println!("{:>6} {:>6} {:>10}", "q", "delta", "E[S]");
    for &q in &[-1.0, -0.5, 0.0, 0.5, 1.0] {
        for &delta in &[-0.8, 0.0, 0.8] {
            let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(delta)).scale(0.5);
            let s = &HermitianOperator::identity(2) + &sigma_x().scale(q);
            let e = expected_value(&rho, &s)?;
            println!("{q:>6.2} {delta:>6.2} {e:>10.4}");
        }
    }

    // Classical payoff vectors embed as diagonal operators; expectations
    // reduce to dot products against the diagonal of rho.
    let asset = classical_embedding("two-outcome", &[1.0, 2.0])?;
    let rho = HermitianOperator::diagonal(&[0.3, 0.7]);
    println!(
        "\nclassical embedding diag(1, 2) under p = (0.3, 0.7): E = {}",
        expected_value(&rho, asset.payoff())?
    );
    Ok(())
}
