//! Arbitrage detection across the coherence threshold.
//!
//! The asset pays a = 1.5 or b = 2 with off-diagonal coherence q and trades
//! at price 1 with r = 0 — it beats the riskless asset in both classical
//! events, so classical detection always finds arbitrage. Quantum detection
//! over the full state space flags arbitrage only while |q| < √0.5 keeps
//! the discounted net gain positive semidefinite; beyond that some state
//! loses against the riskless asset.
//!
//! Run with: cargo run -p qap --example arbitrage_detection

use qap::arbitrage::{detect, Certificate};
use qap::hermitian::{sigma_x, HermitianOperator, PauliCoefficients};
use qap::market::{ArbitrageSemantics, MarketModel, PriceSystem, QuantumAsset};
use qap::scenario::verdict_name;
use qap::solver::SolverConfig;

fn band_market(q: f64, semantics: ArbitrageSemantics) -> qap::Result<MarketModel> {
    let payoff = PauliCoefficients::new(1.75, q, 0.0, -0.25).to_operator();
    let asset = QuantumAsset::new("S", payoff)?;
    let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(0.5)).scale(0.5);
    MarketModel::new(PriceSystem::new(1.0, 0.0, vec![1.0], vec![asset])?, rho, semantics)
}

fn main() -> qap::Result<()> {
    let cfg = SolverConfig::default();
    println!("asset pays 1.5 or 2 with coherence q, price 1, r = 0");
    println!("threshold: sqrt(0.5) = {:.6}\n", 0.5f64.sqrt());
    println!("{:>6} {:>16} {:>16}", "q", "classical", "full quantum");
    for &q in &[0.0, 0.3, 0.6, 0.7, 0.72, 1.0, 1.5] {
        let classical = detect(&band_market(q, ArbitrageSemantics::classical())?, &cfg)?;
        let quantum = detect(&band_market(q, ArbitrageSemantics::full_trace())?, &cfg)?;
        println!(
            "{q:>6.2} {:>16} {:>16}",
            verdict_name(classical.verdict),
            verdict_name(quantum.verdict)
        );
    }

    // Inspect one certificate of each kind.
    let report = detect(&band_market(0.2, ArbitrageSemantics::full_trace())?, &cfg)?;
    if let Some(Certificate::Arbitrage(cert)) = &report.certificate {
        println!(
            "\nq = 0.2 arbitrage: hold {:+.3} riskless, {:+.3} risky; worst payoff {:.4}",
            cert.portfolio.xi0, cert.portfolio.xi[0], cert.payoff_min
        );
    }
    let report = detect(&band_market(1.0, ArbitrageSemantics::full_trace())?, &cfg)?;
    if let Some(Certificate::RiskNeutral(cert)) = &report.certificate {
        println!(
            "q = 1.0 arbitrage-free: rho* has minimum support eigenvalue {:.4} \
             and pricing residual {:.2e}",
            cert.min_support_eigen,
            cert.price_residuals[0].abs()
        );
    }
    Ok(())
}
