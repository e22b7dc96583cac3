//! Classifying portfolios into the arbitrage condition sets.
//!
//! `B` holds the portfolios with nonpositive cost today. `C1`/`C2` test the
//! classical arbitrage conditions on basis events with positive
//! probability, `Q1`/`Q2` the quantum conditions over all states; the
//! arbitrage sets are the intersections `CA = C1 ∩ C2` and `QA = Q1 ∩ Q2`,
//! with `Q1 ⊆ C1` and `C2 ⊆ Q2` always.
//!
//! Run with: cargo run -p qap --example portfolio_sets

use qap::hermitian::{sigma_x, HermitianOperator, PauliCoefficients};
use qap::market::{ArbitrageSemantics, MarketModel, Portfolio, PriceSystem, QuantumAsset};

fn flag(b: bool) -> &'static str {
    if b {
        "x"
    } else {
        "."
    }
}

fn main() -> qap::Result<()> {
    // Cheap dominating asset: pays 1.5 or 2 with coherence 0.2 at price 1.
    let payoff = PauliCoefficients::new(1.75, 0.2, 0.0, -0.25).to_operator();
    let asset = QuantumAsset::new("S", payoff)?;
    let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(0.5)).scale(0.5);
    let market = MarketModel::new(
        PriceSystem::new(1.0, 0.0, vec![1.0], vec![asset])?,
        rho,
        ArbitrageSemantics::full_trace(),
    )?;

    let portfolios = [
        ("long bond only", Portfolio::new(1.0, vec![0.0])?),
        ("fund the asset", Portfolio::new(-1.0, vec![1.0])?),
        ("short the asset", Portfolio::new(1.0, vec![-1.0])?),
        ("over-borrow", Portfolio::new(-1.5, vec![1.0])?),
        ("flat", Portfolio::new(0.0, vec![0.0])?),
    ];

    println!(
        "{:>16} {:>8} {:>3} {:>3} {:>3} {:>3} {:>3} {:>3} {:>3}",
        "portfolio", "cost", "B", "C1", "C2", "Q1", "Q2", "CA", "QA"
    );
    for (label, p) in &portfolios {
        let cost = market.portfolio_value(p)?;
        let c = market.classify_portfolio(p)?;
        println!(
            "{label:>16} {cost:>8.3} {:>3} {:>3} {:>3} {:>3} {:>3} {:>3} {:>3}",
            flag(c.in_b),
            flag(c.in_c1),
            flag(c.in_c2),
            flag(c.in_q1),
            flag(c.in_q2),
            flag(c.in_ca),
            flag(c.in_qa)
        );
    }
    println!(
        "\n`fund the asset` is both a classical and a quantum arbitrage; \
         `over-borrow` keeps the classical gain but loses on some states \
         (Q1 fails), so only the classical investor calls it riskless."
    );
    Ok(())
}
