//! Arbitrage that only exists on a restricted set of states.
//!
//! With a = b = 1+r the asset pays the riskless rate in both classical
//! events, yet carries coherence q. Over the full state space the portfolio
//! (−1, 1) gains on |+⟩ and loses on |−⟩ — no arbitrage. Restricting the
//! allowable states to |ψ₊|² ≥ |ψ₋|² removes every losing state, so the
//! same portfolio becomes an arbitrage for q > 0. Restricted sets are
//! evaluated by direct state payoffs; the detector quantifies over the full
//! sphere (or the support of ρ).
//!
//! Run with: cargo run -p qap --example restricted_state_sets

use num_complex::Complex64;
use qap::arbitrage::detect;
use qap::hermitian::{minus_state, normalize_state, plus_state, HermitianOperator, sigma_x};
use qap::market::{ArbitrageSemantics, MarketModel, Portfolio, PriceSystem, QuantumAsset};
use qap::scenario::verdict_name;
use qap::solver::SolverConfig;

fn main() -> qap::Result<()> {
    let q = 0.5;
    let payoff = &HermitianOperator::identity(2) + &sigma_x().scale(q);
    let asset = QuantumAsset::new("S", payoff)?;
    let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(0.5)).scale(0.5);
    let market = MarketModel::new(
        PriceSystem::new(1.0, 0.0, vec![1.0], vec![asset])?,
        rho,
        ArbitrageSemantics::full_trace(),
    )?;
    let portfolio = Portfolio::new(-1.0, vec![1.0])?;

    println!("asset pays 1 in both events with coherence q = {q}; portfolio (-1, 1)\n");
    let mut states: Vec<(String, Vec<Complex64>)> = vec![
        ("|+>".into(), plus_state()),
        ("|->".into(), minus_state()),
    ];
    // A few states inside the half-space |psi_+|^2 >= |psi_-|^2.
    for w in [0.9f64, 0.7, 0.55] {
        let plus = plus_state();
        let minus = minus_state();
        let mixed: Vec<Complex64> = plus
            .iter()
            .zip(&minus)
            .map(|(p, m)| w.sqrt() * p + (1.0 - w).sqrt() * m)
            .collect();
        states.push((format!("mix w={w}"), normalize_state(&mixed)?));
    }
    println!("{:>10} {:>10} {:>12}", "state", "payoff", "rho-overlap");
    for (label, psi) in &states {
        let (payoff, overlap) = market.state_payoff(&portfolio, psi)?;
        println!("{label:>10} {payoff:>10.4} {overlap:>12.4}");
    }

    let report = detect(&market, &SolverConfig::default())?;
    println!(
        "\nfull-state-space detector: {} (|-> provides the losing state)",
        verdict_name(report.verdict)
    );
    println!(
        "restricted to the half-space, every payoff above is nonnegative and \
         |+> is strictly positive: an arbitrage for the restricted investor"
    );
    Ok(())
}
