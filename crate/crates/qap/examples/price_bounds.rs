//! No-arbitrage price intervals and quote consistency.
//!
//! The risk-neutral set is usually not a single operator; ranging the fair
//! price over it yields the interval of prices compatible with no
//! arbitrage. A payoff the martingale constraints pin exactly gets a point
//! interval; a payoff aligned with the free coherence direction gets a wide
//! one. Quoting inside the interval keeps the extended market
//! arbitrage-free, quoting outside creates arbitrage.
//!
//! Run with: cargo run -p qap --example price_bounds

use qap::hermitian::{sigma_x, HermitianOperator, PauliCoefficients};
use qap::market::{ArbitrageSemantics, MarketModel, PriceSystem, QuantumAsset};
use qap::pricing::{price_bounds, price_consistency, Derivative};
use qap::scenario::verdict_name;
use qap::solver::SolverConfig;

fn main() -> qap::Result<()> {
    let cfg = SolverConfig::default();
    // Asset diag(1, 2) at price 1.5, r = 0, coherent market state.
    let payoff = PauliCoefficients::new(1.5, 0.0, 0.0, -0.5).to_operator();
    let asset = QuantumAsset::new("S", payoff)?;
    let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(0.5)).scale(0.5);
    let market = MarketModel::new(
        PriceSystem::new(1.0, 0.0, vec![1.5], vec![asset])?,
        rho,
        ArbitrageSemantics::full_trace(),
    )?;

    let pinned = Derivative::new("event claim", HermitianOperator::diagonal(&[1.0, 0.0]))?;
    let wide = Derivative::new("coherence claim", &HermitianOperator::identity(2) + &sigma_x())?;

    for v in [&pinned, &wide] {
        let interval = price_bounds(&market, v, &cfg)?;
        println!(
            "{:>16}: price interval [{:.6}, {:.6}]",
            v.name(),
            interval.lower,
            interval.upper
        );
    }

    println!("\nquoting the coherence claim:");
    for quote in [0.2, 1.0, 1.8, 2.2] {
        let report = price_consistency(&market, &wide, quote, &cfg)?;
        println!("  quote {quote:>4}: extended market is {}", verdict_name(report.verdict));
    }
    Ok(())
}
