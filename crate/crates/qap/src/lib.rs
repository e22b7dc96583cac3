//! Arbitrage theory and derivative pricing for single-period markets whose
//! uncertainty is described by a density operator instead of a probability
//! vector.
//!
//! Assets are positive semidefinite Hermitian payoff operators `S` traded
//! today at prices `π > 0` next to a riskless asset with rate `r`; the
//! market state is a density operator `ρ` (PSD, unit trace). Expectations
//! are traces, `E^ρ[S] = tr{ρS}`, and a portfolio `ξ̄` is an arbitrage
//! opportunity when it costs nothing today, never pays negatively on
//! allowable states with positive `ρ`-overlap, and pays strictly positively
//! in the configured sense.
//!
//! The crate provides:
//!
//! * [`hermitian`] — dense complex Hermitian linear algebra: a cyclic Jacobi
//!   eigensolver, spectral functions, support projectors, and the Pauli
//!   parameterization at `K = 2`;
//! * [`market`] — price systems, portfolios, payoffs, classical embeddings,
//!   and the portfolio set calculus (`B`, `C1`, `C2`, `Q1`, `Q2`);
//! * [`measure`] — absolute continuity, equivalence, and the
//!   density-operator Radon–Nikodym superoperator
//!   `φ(σ,ρ)[X] = σ^{1/2}ρ^{−1/2} X ρ^{−1/2}σ^{1/2}`;
//! * [`solver`] — PSD-cone/affine feasibility by projection splitting,
//!   max-min-eigenvalue, and linear extrema over spectrahedra;
//! * [`arbitrage`] — the detector and the dual certificate pair: an
//!   arbitrage portfolio with witness state, or a risk-neutral density
//!   operator `ρ* ≈ ρ` with `tr{ρ* S_i/(1+r)} = π_i`;
//! * [`pricing`] — fair prices of derivatives under `ρ*`, no-arbitrage
//!   price bounds, and quote-consistency checks;
//! * [`scenario`] / [`demos`] — JSON scenario and report formats and the
//!   bundled demonstration fixtures used by the `qap` command-line tool.
//!
//! # Example
//!
//! ```
//! use qap::hermitian::{HermitianOperator, PauliCoefficients, sigma_x};
//! use qap::market::{ArbitrageSemantics, MarketModel, PriceSystem, QuantumAsset};
//! use qap::arbitrage::{detect, Verdict};
//! use qap::solver::SolverConfig;
//!
//! // Asset paying 1.5 or 2 with coherence q = 0.2, priced at 1 with r = 0:
//! // cheap enough to dominate the riskless asset on every state.
//! let payoff = PauliCoefficients::new(1.75, 0.2, 0.0, -0.25).to_operator();
//! let asset = QuantumAsset::new("S", payoff)?;
//! let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(0.5)).scale(0.5);
//! let market = MarketModel::new(
//!     PriceSystem::new(1.0, 0.0, vec![1.0], vec![asset])?,
//!     rho,
//!     ArbitrageSemantics::default(),
//! )?;
//!
//! let report = detect(&market, &SolverConfig::default())?;
//! assert_eq!(report.verdict, Verdict::Arbitrage);
//! # Ok::<(), qap::Error>(())
//! ```

pub mod arbitrage;
pub mod demos;
pub mod error;
pub mod hermitian;
pub mod market;
pub mod measure;
pub mod pricing;
pub mod scenario;
pub mod solver;

pub use error::{Error, Result};
pub use hermitian::{
    ComplexMatrix, HermitianOperator, PauliCoefficients, Spectrum, SupportProjector,
};
pub use market::{
    ArbitrageSemantics, Condition2Mode, HhatMode, MarketModel, Portfolio,
    PortfolioClassification, PriceSystem, QuantumAsset,
};
pub use arbitrage::{
    ArbitrageCertificate, ArbitrageReport, Certificate, NoArbitrageCertificate, Verdict,
};
pub use measure::MeasureChange;
pub use pricing::{Derivative, PriceInterval};
pub use solver::SolverConfig;
