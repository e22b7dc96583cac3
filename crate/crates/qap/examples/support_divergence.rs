//! The divergence regime of rank-deficient market states.
//!
//! With ρ = |0⟩⟨0| and net gain Y = [[1, 1], [1, 0]], no portfolio makes
//! ξ·Y positive semidefinite on the whole space (its determinant is −ξ²),
//! so full-space semantics reports arbitrage-free. Yet no risk-neutral
//! operator with the same support exists either — the compressed constraint
//! reads 1 = 0. The two sides of the fundamental theorem genuinely diverge
//! here. Restricting the allowable states to the support of ρ closes the
//! gap: the compressed gain is the scalar 1 > 0, an arbitrage.
//!
//! Run with: cargo run -p qap --example support_divergence

use qap::arbitrage::{detect, ftqap_round_trip};
use qap::hermitian::HermitianOperator;
use qap::market::{ArbitrageSemantics, MarketModel, PriceSystem, QuantumAsset};
use qap::scenario::verdict_name;
use qap::solver::SolverConfig;

fn main() -> qap::Result<()> {
    let cfg = SolverConfig::default();
    let s = HermitianOperator::from_real(2, &[2.0, 1.0, 1.0, 1.0])?;
    let rho = HermitianOperator::basis_projector(2, 0);
    let build = |sem| -> qap::Result<MarketModel> {
        MarketModel::new(
            PriceSystem::new(1.0, 0.0, vec![1.0], vec![QuantumAsset::new("S", s.clone())?])?,
            rho.clone(),
            sem,
        )
    };

    println!("rho = |0><0| (rank one), S = [[2,1],[1,1]] at price 1, r = 0\n");
    for (label, sem) in [
        ("full / trace", ArbitrageSemantics::full_trace()),
        ("full / state", ArbitrageSemantics::full_state()),
        ("support", ArbitrageSemantics::support()),
    ] {
        let market = build(sem)?;
        let report = detect(&market, &cfg)?;
        println!("{label:>14}: verdict {}", verdict_name(report.verdict));
        if let Some(note) = &report.diagnostics.divergence {
            println!("{:>14}  {note}", "");
        }
        let rt = ftqap_round_trip(&market, &cfg)?;
        println!(
            "{:>14}  round trip: arbitrage={}, risk-neutral={}, exactly one={}, divergence={}",
            "", rt.arbitrage_found, rt.risk_neutral_found, rt.exactly_one, rt.divergence
        );
    }
    println!(
        "\nfor full-rank market states the round trip always produces exactly \
         one certificate; the divergence is specific to nullspaces under \
         full-space semantics."
    );
    Ok(())
}
