//! Risk-neutral density operators: verification and the canonical search.
//!
//! A density operator ρ* is risk-neutral when tr{ρ* S_i/(1+r)} = π_i for
//! every asset. For the two-outcome asset with coherence q, the candidate
//! ρ* = diag(p, 1−p) + Δσ_x misprices the asset by exactly 2qΔ/(1+r), so
//! coherence in both the asset and the candidate shifts the fair price.
//! The canonical certificate maximizes the minimum support eigenvalue,
//! which also certifies equivalence with the market state.
//!
//! Run with: cargo run -p qap --example risk_neutral_certificates

use qap::arbitrage::{find_risk_neutral, verify_risk_neutral};
use qap::hermitian::{sigma_x, HermitianOperator, PauliCoefficients};
use qap::market::{ArbitrageSemantics, MarketModel, PriceSystem, QuantumAsset};
use qap::solver::SolverConfig;

fn main() -> qap::Result<()> {
    let (a, b, price, q) = (1.0, 2.0, 1.5, 0.4);
    let payoff = PauliCoefficients::new(0.5 * (a + b), q, 0.0, 0.5 * (a - b)).to_operator();
    let asset = QuantumAsset::new("S", payoff)?;
    let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(0.5)).scale(0.5);
    let market = MarketModel::new(
        PriceSystem::new(1.0, 0.0, vec![price], vec![asset])?,
        rho,
        ArbitrageSemantics::full_trace(),
    )?;

    let p = (b - price) / (b - a);
    println!("asset pays {a} or {b} with coherence q = {q}, price {price}, r = 0");
    println!("candidate rho* = diag({p}, {}) + delta*sx\n", 1.0 - p);
    println!("{:>8} {:>14} {:>14}", "delta", "residual", "2*q*delta");
    for &delta in &[-0.4, -0.2, 0.0, 0.2, 0.4] {
        let candidate = &HermitianOperator::diagonal(&[p, 1.0 - p]) + &sigma_x().scale(delta);
        let check = verify_risk_neutral(&market, &candidate)?;
        println!(
            "{delta:>8.2} {:>14.6} {:>14.6}",
            check.price_residuals[0],
            2.0 * q * delta
        );
    }
    println!("\nonly delta = 0 prices the asset back; with coherent candidates the");
    println!("market price would need the adjustment pi + 2*q*delta/(1+r).");

    let cert = find_risk_neutral(&market, &SolverConfig::default())?;
    println!("\ncanonical certificate (largest minimum support eigenvalue):");
    for j in 0..2 {
        println!(
            "  [{:+.6}{:+.6}i, {:+.6}{:+.6}i]",
            cert.rho_star.entry(j, 0).re,
            cert.rho_star.entry(j, 0).im,
            cert.rho_star.entry(j, 1).re,
            cert.rho_star.entry(j, 1).im
        );
    }
    println!("  min support eigenvalue: {:.6}", cert.min_support_eigen);
    println!("  pricing residual: {:.2e}", cert.price_residuals[0].abs());
    let check = verify_risk_neutral(&market, &cert.rho_star)?;
    println!("  equivalent to the market state: {}", check.equivalent);
    Ok(())
}
