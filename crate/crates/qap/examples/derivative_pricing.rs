//! Fair pricing of derivatives under a risk-neutral operator.
//!
//! The asset pays 1 or 2 with strong coherence q = 0.8 and trades at
//! 1.9 = 1.5 + 2η (η = 0.2): the coherence raises its price over the purely
//! diagonal 1.5. The risk-neutral operator ρ* = ½I + (η/q)σ_x prices it
//! back exactly, and prices the "half as quantum" derivative (coherence
//! q/2) at 1.5 + η = 1.7. Eigenvalue payoff maps build derivatives like
//! call options directly from an asset.
//!
//! Run with: cargo run -p qap --example derivative_pricing

use qap::arbitrage::verify_risk_neutral;
use qap::hermitian::{sigma_x, HermitianOperator, PauliCoefficients};
use qap::market::{ArbitrageSemantics, MarketModel, PriceSystem, QuantumAsset};
use qap::pricing::{fair_price, function_of_asset, Derivative};

fn main() -> qap::Result<()> {
    let payoff = PauliCoefficients::new(1.5, 0.8, 0.0, -0.5).to_operator();
    let asset = QuantumAsset::new("S", payoff.clone())?;
    let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(0.5)).scale(0.5);
    let market = MarketModel::new(
        PriceSystem::new(1.0, 0.0, vec![1.9], vec![asset.clone()])?,
        rho,
        ArbitrageSemantics::full_trace(),
    )?;

    let rho_star = &HermitianOperator::diagonal(&[0.5, 0.5]) + &sigma_x().scale(0.25);
    let check = verify_risk_neutral(&market, &rho_star)?;
    println!(
        "rho* = I/2 + 0.25 sx: pricing residual {:.2e}, equivalent: {}",
        check.max_abs_residual, check.equivalent
    );

    let as_derivative = Derivative::new("S", payoff)?;
    println!(
        "fair price of the asset itself: {:.9}  (its market price is 1.9)",
        fair_price(&rho_star, &as_derivative, 0.0)?
    );

    let half_quantum = Derivative::new(
        "V",
        PauliCoefficients::new(1.5, 0.4, 0.0, -0.5).to_operator(),
    )?;
    println!(
        "fair price of the half-as-quantum derivative: {:.9}",
        fair_price(&rho_star, &half_quantum, 0.0)?
    );

    // Derivatives as functions of an asset: the map acts on eigenvalues.
    let strike = 1.5;
    let call = function_of_asset("call", &asset, |x| (x - strike).max(0.0))?;
    println!(
        "\ncall payoff max(S - {strike}, 0) has eigenvalues {:?}",
        call.payoff()
            .eigh()?
            .eigenvalues
            .iter()
            .map(|l| {
                let r = (l * 1e6).round() / 1e6;
                if r == 0.0 {
                    0.0
                } else {
                    r
                }
            })
            .collect::<Vec<_>>()
    );
    println!("fair call price: {:.9}", fair_price(&rho_star, &call, 0.0)?);
    Ok(())
}
