//! Single-period market model.
//!
//! A market couples a price system — one riskless asset with rate `r` and `d`
//! risky assets with PSD payoff operators — to a market density operator `ρ`
//! and an arbitrage-semantics configuration. Portfolios are real holding
//! vectors over the riskless and risky assets; expected values are traces
//! against `ρ`; discounted net gains `Y_i = S_i/(1+r) − π_i·I` drive the
//! arbitrage machinery.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::{linear_combination, HermitianOperator, SPECTRAL_TOL};

/// Absolute tolerance for portfolio-value and payoff comparisons.
pub const VALUE_TOL: f64 = 1e-9;

/// A basis event `ω` counts as classically supported when `⟨ω|ρ|ω⟩` exceeds
/// this cutoff.
pub const CLASSICAL_SUPPORT_CUTOFF: f64 = 1e-12;

/// A tradeable asset: a PSD payoff operator plus a label.
///
/// The payoff in state `|ψ⟩` is the quadratic form `⟨ψ|S|ψ⟩ ≥ 0`.
#[derive(Debug, Clone)]
pub struct QuantumAsset {
    payoff: HermitianOperator,
    name: String,
}

impl QuantumAsset {
    /// Validates positive semidefiniteness (within the spectral tolerance,
    /// scaled by the operator norm).
    pub fn new(name: impl Into<String>, payoff: HermitianOperator) -> Result<Self> {
        let scale = payoff.frobenius_norm().max(1.0);
        if !payoff.is_psd(SPECTRAL_TOL * scale)? {
            return Err(Error::Domain(format!(
                "asset payoff is not positive semidefinite (min eigenvalue {:.3e})",
                payoff.min_eigenvalue()?
            )));
        }
        Ok(Self {
            payoff,
            name: name.into(),
        })
    }

    pub fn payoff(&self) -> &HermitianOperator {
        &self.payoff
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.payoff.dim()
    }
}

/// Embeds a classical payoff vector as the diagonal matrix `diag(payoffs)`.
///
/// Classical assets must pay nonnegative amounts in every event.
pub fn classical_embedding(name: impl Into<String>, payoffs: &[f64]) -> Result<QuantumAsset> {
    if payoffs.is_empty() {
        return Err(Error::Dimension("empty payoff vector".into()));
    }
    if let Some(bad) = payoffs.iter().find(|&&p| !(p >= 0.0)) {
        return Err(Error::Domain(format!(
            "classical payoff must be nonnegative, got {bad}"
        )));
    }
    QuantumAsset::new(name, HermitianOperator::diagonal(payoffs))
}

/// Today's prices and tomorrow's payoff operators.
///
/// The riskless asset is implicit: price `π₀` and deterministic payoff
/// `(1+r)·π₀·I`, so only risky assets are stored.
#[derive(Debug, Clone)]
pub struct PriceSystem {
    riskless_price: f64,
    rate: f64,
    risky_prices: Vec<f64>,
    risky_assets: Vec<QuantumAsset>,
}

impl PriceSystem {
    pub fn new(
        riskless_price: f64,
        rate: f64,
        risky_prices: Vec<f64>,
        risky_assets: Vec<QuantumAsset>,
    ) -> Result<Self> {
        if !(riskless_price > 0.0) || !riskless_price.is_finite() {
            return Err(Error::Domain(format!(
                "riskless price must be positive, got {riskless_price}"
            )));
        }
        if !(rate > -1.0) || !rate.is_finite() {
            return Err(Error::Domain(format!(
                "interest rate must exceed -1, got {rate}"
            )));
        }
        if risky_prices.len() != risky_assets.len() {
            return Err(Error::Dimension(format!(
                "{} prices against {} assets",
                risky_prices.len(),
                risky_assets.len()
            )));
        }
        if let Some(bad) = risky_prices.iter().find(|&&p| !(p > 0.0) || !p.is_finite()) {
            return Err(Error::Domain(format!(
                "asset prices must be positive, got {bad}"
            )));
        }
        if let Some(first) = risky_assets.first() {
            let dim = first.dim();
            if risky_assets.iter().any(|a| a.dim() != dim) {
                return Err(Error::Dimension(
                    "all assets must share one Hilbert space dimension".into(),
                ));
            }
        }
        Ok(Self {
            riskless_price,
            rate,
            risky_prices,
            risky_assets,
        })
    }

    pub fn riskless_price(&self) -> f64 {
        self.riskless_price
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn risky_prices(&self) -> &[f64] {
        &self.risky_prices
    }

    pub fn risky_assets(&self) -> &[QuantumAsset] {
        &self.risky_assets
    }

    /// Number of risky assets.
    pub fn num_risky(&self) -> usize {
        self.risky_assets.len()
    }
}

/// The set of allowable states the arbitrage conditions quantify over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HhatMode {
    /// Computational basis states only (the classical limit).
    Classical,
    /// The full unit sphere of the Hilbert space.
    Full,
    /// Unit states inside the support of `ρ`.
    Support,
}

/// How the strict-positivity condition of an arbitrage opportunity is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition2Mode {
    /// `tr{ρ · ξ̄·S̄} > 0` — the reading used when certifying against a
    /// risk-neutral operator.
    Trace,
    /// Some allowable state with positive `ρ`-overlap has strictly positive
    /// payoff. For a PSD payoff this is equivalent to `λ_max > 0`.
    State,
}

/// Arbitrage semantics: which states count, and which strict-positivity
/// reading applies. The two condition-2 readings differ only when `ρ` is
/// rank-deficient; classical mode ignores the flag because both coincide on
/// basis states with positive probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArbitrageSemantics {
    pub hhat_mode: HhatMode,
    pub condition2_mode: Condition2Mode,
}

impl Default for ArbitrageSemantics {
    fn default() -> Self {
        Self {
            hhat_mode: HhatMode::Full,
            condition2_mode: Condition2Mode::Trace,
        }
    }
}

impl ArbitrageSemantics {
    pub fn classical() -> Self {
        Self {
            hhat_mode: HhatMode::Classical,
            condition2_mode: Condition2Mode::Trace,
        }
    }

    pub fn full_trace() -> Self {
        Self::default()
    }

    pub fn full_state() -> Self {
        Self {
            hhat_mode: HhatMode::Full,
            condition2_mode: Condition2Mode::State,
        }
    }

    pub fn support() -> Self {
        Self {
            hhat_mode: HhatMode::Support,
            condition2_mode: Condition2Mode::Trace,
        }
    }
}

/// Holdings vector `ξ̄ = (ξ₀, ξ)` over the riskless asset and the risky
/// assets. Negative entries are loans or short positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Portfolio {
    pub xi0: f64,
    pub xi: Vec<f64>,
}

impl Portfolio {
    pub fn new(xi0: f64, xi: Vec<f64>) -> Result<Self> {
        if !xi0.is_finite() || xi.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("portfolio entries must be finite".into()));
        }
        Ok(Self { xi0, xi })
    }
}

/// Membership of a portfolio in the base and arbitrage-condition sets.
///
/// `B` collects portfolios with nonpositive cost; `C1`/`C2` test the
/// classical (basis-state) arbitrage conditions, `Q1`/`Q2` the quantum ones
/// over the full state space; `CA = C1 ∩ C2` and `QA = Q1 ∩ Q2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PortfolioClassification {
    pub in_b: bool,
    pub in_c1: bool,
    pub in_c2: bool,
    pub in_q1: bool,
    pub in_q2: bool,
    pub in_ca: bool,
    pub in_qa: bool,
}

/// Expected value `E^ρ[A] = tr{ρ A}` of an observable under a density
/// operator.
pub fn expected_value(rho: &HermitianOperator, a: &HermitianOperator) -> Result<f64> {
    rho.trace_inner(a)
}

/// A price system together with the market density operator and the
/// configured arbitrage semantics.
#[derive(Debug, Clone)]
pub struct MarketModel {
    price_system: PriceSystem,
    rho: HermitianOperator,
    semantics: ArbitrageSemantics,
}

/// Checks the density-operator conditions: PSD within the spectral tolerance
/// and unit trace.
pub fn validate_density(rho: &HermitianOperator) -> Result<()> {
    let scale = rho.frobenius_norm().max(1.0);
    if !rho.is_psd(SPECTRAL_TOL * scale)? {
        return Err(Error::Domain(format!(
            "density operator is not PSD (min eigenvalue {:.3e})",
            rho.min_eigenvalue()?
        )));
    }
    let tr = rho.trace();
    if (tr - 1.0).abs() > SPECTRAL_TOL {
        return Err(Error::Domain(format!(
            "density operator trace is {tr}, expected 1"
        )));
    }
    Ok(())
}

impl MarketModel {
    pub fn new(
        price_system: PriceSystem,
        rho: HermitianOperator,
        semantics: ArbitrageSemantics,
    ) -> Result<Self> {
        validate_density(&rho)?;
        if let Some(first) = price_system.risky_assets().first() {
            if first.dim() != rho.dim() {
                return Err(Error::Dimension(format!(
                    "assets have dimension {} but rho has dimension {}",
                    first.dim(),
                    rho.dim()
                )));
            }
        }
        Ok(Self {
            price_system,
            rho,
            semantics,
        })
    }

    pub fn price_system(&self) -> &PriceSystem {
        &self.price_system
    }

    pub fn rho(&self) -> &HermitianOperator {
        &self.rho
    }

    pub fn semantics(&self) -> ArbitrageSemantics {
        self.semantics
    }

    /// Returns a copy of the model with different semantics.
    pub fn with_semantics(&self, semantics: ArbitrageSemantics) -> Self {
        Self {
            semantics,
            ..self.clone()
        }
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn num_risky(&self) -> usize {
        self.price_system.num_risky()
    }

    pub fn rate(&self) -> f64 {
        self.price_system.rate()
    }

    fn check_portfolio_len(&self, p: &Portfolio) -> Result<()> {
        if p.xi.len() != self.num_risky() {
            return Err(Error::Dimension(format!(
                "portfolio holds {} risky positions but the market has {}",
                p.xi.len(),
                self.num_risky()
            )));
        }
        Ok(())
    }

    /// Today's cost `ξ̄ · π̄` of a portfolio.
    pub fn portfolio_value(&self, p: &Portfolio) -> Result<f64> {
        self.check_portfolio_len(p)?;
        let mut v = p.xi0 * self.price_system.riskless_price();
        for (x, pi) in p.xi.iter().zip(self.price_system.risky_prices()) {
            v += x * pi;
        }
        Ok(v)
    }

    /// Tomorrow's payoff operator `ξ̄ · S̄ = ξ₀(1+r)π₀·I + Σ ξ_i S_i`.
    ///
    /// Hermitian, but in general not PSD.
    pub fn payoff_operator(&self, p: &Portfolio) -> Result<HermitianOperator> {
        self.check_portfolio_len(p)?;
        let dim = self.dim();
        let riskless = p.xi0 * (1.0 + self.rate()) * self.price_system.riskless_price();
        let mut acc = HermitianOperator::identity(dim).scale(riskless);
        for (x, asset) in p.xi.iter().zip(self.price_system.risky_assets()) {
            acc = acc.add(&asset.payoff().scale(*x))?;
        }
        Ok(acc)
    }

    /// Payoff `⟨ψ|ξ̄·S̄|ψ⟩` and overlap `⟨ψ|ρ|ψ⟩` for a unit state.
    pub fn state_payoff(&self, p: &Portfolio, psi: &[Complex64]) -> Result<(f64, f64)> {
        let norm = crate::hermitian::state_norm(psi);
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "state must be normalized (norm {norm})"
            )));
        }
        let payoff = self.payoff_operator(p)?.expectation(psi)?;
        let overlap = self.rho.expectation(psi)?;
        Ok((payoff, overlap))
    }

    /// Discounted net gains `Y_i = S_i/(1+r) − π_i·I` per risky asset.
    pub fn discounted_net_gains(&self) -> Vec<HermitianOperator> {
        let dim = self.dim();
        let discount = 1.0 / (1.0 + self.rate());
        self.price_system
            .risky_assets()
            .iter()
            .zip(self.price_system.risky_prices())
            .map(|(asset, &pi)| {
                &asset.payoff().scale(discount) - &HermitianOperator::identity(dim).scale(pi)
            })
            .collect()
    }

    /// Net gain of a risky position: `ξ · Y`.
    pub fn net_gain_operator(&self, xi: &[f64]) -> Result<HermitianOperator> {
        if xi.len() != self.num_risky() {
            return Err(Error::Dimension(format!(
                "{} coordinates against {} risky assets",
                xi.len(),
                self.num_risky()
            )));
        }
        linear_combination(xi, &self.discounted_net_gains())
    }

    /// Completes risky holdings to a zero-cost portfolio by borrowing or
    /// lending `ξ₀ = −ξ·π / π₀`.
    pub fn risky_to_full(&self, xi: &[f64]) -> Result<Portfolio> {
        if xi.len() != self.num_risky() {
            return Err(Error::Dimension(format!(
                "{} coordinates against {} risky assets",
                xi.len(),
                self.num_risky()
            )));
        }
        let cost: f64 = xi
            .iter()
            .zip(self.price_system.risky_prices())
            .map(|(x, pi)| x * pi)
            .sum();
        Portfolio::new(-cost / self.price_system.riskless_price(), xi.to_vec())
    }

    /// Basis indices with classical support: `⟨ω|ρ|ω⟩` above the cutoff.
    pub fn classical_support(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&j| self.rho.entry(j, j).re > CLASSICAL_SUPPORT_CUTOFF)
            .collect()
    }

    /// Classifies a portfolio into the base set and the classical/quantum
    /// arbitrage-condition sets. The quantum sets are evaluated over the full
    /// state space: condition 1 as global PSD-ness of the payoff (states with
    /// positive `ρ`-overlap are dense on the unit sphere), condition 2 as
    /// `λ_max > 0`.
    pub fn classify_portfolio(&self, p: &Portfolio) -> Result<PortfolioClassification> {
        let value = self.portfolio_value(p)?;
        let payoff = self.payoff_operator(p)?;
        let in_b = value <= VALUE_TOL;

        let support = self.classical_support();
        let diag = payoff.diagonal_entries();
        let c1_cond = support.iter().all(|&j| diag[j] >= -VALUE_TOL);
        let c2_cond = support.iter().any(|&j| diag[j] > VALUE_TOL);

        let spectrum = payoff.eigh()?;
        let q1_cond = spectrum.eigenvalues[0] >= -VALUE_TOL;
        let q2_cond = *spectrum.eigenvalues.last().expect("dim >= 1") > VALUE_TOL;

        let in_c1 = in_b && c1_cond;
        let in_c2 = in_b && c2_cond;
        let in_q1 = in_b && q1_cond;
        let in_q2 = in_b && q2_cond;
        Ok(PortfolioClassification {
            in_b,
            in_c1,
            in_c2,
            in_q1,
            in_q2,
            in_ca: in_c1 && in_c2,
            in_qa: in_q1 && in_q2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{minus_state, plus_state, sigma_x, sigma_z};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    /// Two-outcome asset `(a+b)/2·I + (a-b)/2·σ_z + q·σ_x` with one price.
    fn band_market(a: f64, b: f64, q: f64, rate: f64, price: f64, delta: f64) -> MarketModel {
        let s = PauliCoefficients::new(0.5 * (a + b), q, 0.0, 0.5 * (a - b)).to_operator();
        let asset = QuantumAsset::new("S", s).unwrap();
        let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(delta)).scale(0.5);
        let ps = PriceSystem::new(1.0, rate, vec![price], vec![asset]).unwrap();
        MarketModel::new(ps, rho, ArbitrageSemantics::default()).unwrap()
    }

    use crate::hermitian::PauliCoefficients;

    #[test]
    fn expected_value_coherence_payout() {
        // ρ = ½(I+Δσ_x), S = I + qσ_x with Δ=0.5, q=0.4 → 1 + qΔ = 1.2.
        let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(0.5)).scale(0.5);
        let s = &HermitianOperator::identity(2) + &sigma_x().scale(0.4);
        assert_close(expected_value(&rho, &s).unwrap(), 1.2, 1e-14);
        // A = I always has expectation 1.
        assert_close(
            expected_value(&rho, &HermitianOperator::identity(2)).unwrap(),
            1.0,
            1e-15,
        );
        // Diagonal case is a dot product.
        let rho_d = HermitianOperator::diagonal(&[0.3, 0.7]);
        let a = HermitianOperator::diagonal(&[2.0, 4.0]);
        assert_close(expected_value(&rho_d, &a).unwrap(), 3.4, 1e-15);
    }

    #[test]
    fn classical_embedding_examples() {
        // (1+r, 1+r) with r = 0.05 is 1.05·I.
        let a = classical_embedding("riskfree", &[1.05, 1.05]).unwrap();
        assert!(a
            .payoff()
            .sub(&HermitianOperator::identity(2).scale(1.05))
            .unwrap()
            .is_zero(0.0));
        let b = classical_embedding("cl", &[1.0, 2.0]).unwrap();
        assert_eq!(b.payoff().diagonal_entries(), vec![1.0, 2.0]);
        // All-zero payoffs sit on the cone boundary and are allowed.
        assert!(classical_embedding("zero", &[0.0, 0.0, 0.0]).is_ok());
        // Negative payoffs are not.
        assert!(classical_embedding("bad", &[1.0, -0.1]).is_err());
    }

    #[test]
    fn payoff_operator_examples() {
        let s = &HermitianOperator::diagonal(&[1.5, 2.0]) + &sigma_x().scale(0.2);
        let asset = QuantumAsset::new("S", s.clone()).unwrap();
        let ps = PriceSystem::new(1.0, 0.0, vec![1.0], vec![asset]).unwrap();
        let rho = HermitianOperator::identity(2).scale(0.5);
        let m = MarketModel::new(ps, rho, ArbitrageSemantics::default()).unwrap();

        // Riskless only: (1+r)π₀·I.
        let p0 = Portfolio::new(1.0, vec![0.0]).unwrap();
        assert!(m
            .payoff_operator(&p0)
            .unwrap()
            .sub(&HermitianOperator::identity(2))
            .unwrap()
            .is_zero(0.0));

        // Short the bond, long the asset.
        let p1 = Portfolio::new(-1.0, vec![1.0]).unwrap();
        let expect = &HermitianOperator::diagonal(&[0.5, 1.0]) + &sigma_x().scale(0.2);
        assert!(m.payoff_operator(&p1).unwrap().sub(&expect).unwrap().is_zero(1e-15));

        // Empty position pays nothing.
        let p2 = Portfolio::new(0.0, vec![0.0]).unwrap();
        assert_close(m.payoff_operator(&p2).unwrap().frobenius_norm(), 0.0, 0.0);
    }

    #[test]
    fn state_payoff_plus_minus() {
        // a = b = 1, π = 1, r = 0, q = 0.5: payoff of (−1, 1) at |+⟩ is 0.5.
        let m = band_market(1.0, 1.0, 0.5, 0.0, 1.0, 0.5);
        let p = Portfolio::new(-1.0, vec![1.0]).unwrap();
        let (payoff, overlap) = m.state_payoff(&p, &plus_state()).unwrap();
        assert_close(payoff, 0.5, 1e-12);
        assert_close(overlap, 0.75, 1e-12);
        let (payoff_minus, _) = m.state_payoff(&p, &minus_state()).unwrap();
        assert_close(payoff_minus, -0.5, 1e-12);
    }

    #[test]
    fn state_payoff_classical_event() {
        // a=1, b=2, r=0, π=1.5: holding one unit pays a = 1 in event ω₁.
        let m = band_market(1.0, 2.0, 0.0, 0.0, 1.5, 0.5);
        let p = Portfolio::new(0.0, vec![1.0]).unwrap();
        let omega1 = crate::hermitian::basis_state(2, 0);
        let (payoff, _) = m.state_payoff(&p, &omega1).unwrap();
        assert_close(payoff, 1.0, 1e-12);
    }

    #[test]
    fn state_payoff_rejects_unnormalized() {
        let m = band_market(1.0, 2.0, 0.0, 0.0, 1.5, 0.0);
        let p = Portfolio::new(0.0, vec![1.0]).unwrap();
        let psi = vec![Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)];
        assert!(matches!(m.state_payoff(&p, &psi), Err(Error::Domain(_))));
    }

    #[test]
    fn discounted_net_gains_examples() {
        let m = band_market(1.0, 2.0, 0.0, 0.0, 1.5, 0.0);
        let y = m.discounted_net_gains();
        assert!(y[0]
            .sub(&HermitianOperator::diagonal(&[-0.5, 0.5]))
            .unwrap()
            .is_zero(1e-15));

        // A fairly priced riskless clone has zero net gain.
        let clone = QuantumAsset::new("B", HermitianOperator::identity(2).scale(1.05)).unwrap();
        let ps = PriceSystem::new(1.0, 0.05, vec![1.0], vec![clone]).unwrap();
        let m2 = MarketModel::new(
            ps,
            HermitianOperator::identity(2).scale(0.5),
            ArbitrageSemantics::default(),
        )
        .unwrap();
        assert_close(m2.discounted_net_gains()[0].frobenius_norm(), 0.0, 1e-15);

        let m3 = band_market(1.5, 2.0, 0.2, 0.0, 1.0, 0.0);
        let expect = &HermitianOperator::diagonal(&[0.5, 1.0]) + &sigma_x().scale(0.2);
        assert!(m3.discounted_net_gains()[0].sub(&expect).unwrap().is_zero(1e-15));
    }

    #[test]
    fn classify_quantum_and_classical_arbitrage() {
        // a=1.5, b=2, r=0, π=1, q=0.2: (−1, 1) is in every arbitrage set.
        let m = band_market(1.5, 2.0, 0.2, 0.0, 1.0, 0.5);
        let p = Portfolio::new(-1.0, vec![1.0]).unwrap();
        let c = m.classify_portfolio(&p).unwrap();
        assert!(c.in_b && c.in_c1 && c.in_c2 && c.in_q1 && c.in_q2 && c.in_ca && c.in_qa);
    }

    #[test]
    fn classify_positive_cost_is_outside_base_set() {
        let m = band_market(1.0, 2.0, 0.0, 0.0, 1.5, 0.0);
        let p = Portfolio::new(1.0, vec![0.0]).unwrap();
        let c = m.classify_portfolio(&p).unwrap();
        assert!(!c.in_b && !c.in_qa && !c.in_ca);
    }

    #[test]
    fn classify_mixed_sign_payoff() {
        // a=1, b=2, r=0, π=1.5, q=0: payoff of (−1.5, 1) is diag(−0.5, 0.5).
        let m = band_market(1.0, 2.0, 0.0, 0.0, 1.5, 0.5);
        let p = Portfolio::new(-1.5, vec![1.0]).unwrap();
        let c = m.classify_portfolio(&p).unwrap();
        assert!(c.in_b && c.in_c2 && c.in_q2);
        assert!(!c.in_c1 && !c.in_q1);
    }

    #[test]
    fn risky_to_full_zeroes_value() {
        let m = band_market(1.0, 2.0, 0.0, 0.0, 1.5, 0.0);
        let p = m.risky_to_full(&[1.0]).unwrap();
        assert_close(p.xi0, -1.5, 0.0);
        assert_close(m.portfolio_value(&p).unwrap(), 0.0, 0.0);
        let p_zero = m.risky_to_full(&[0.0]).unwrap();
        assert_close(p_zero.xi0, 0.0, 0.0);
    }

    #[test]
    fn risky_to_full_two_assets() {
        let s1 = QuantumAsset::new("A", HermitianOperator::diagonal(&[1.0, 1.0])).unwrap();
        let s2 = QuantumAsset::new("B", HermitianOperator::diagonal(&[3.0, 3.0])).unwrap();
        let ps = PriceSystem::new(2.0, 0.0, vec![1.0, 3.0], vec![s1, s2]).unwrap();
        let m = MarketModel::new(
            ps,
            HermitianOperator::identity(2).scale(0.5),
            ArbitrageSemantics::default(),
        )
        .unwrap();
        let p = m.risky_to_full(&[2.0, -1.0]).unwrap();
        assert_close(p.xi0, 0.5, 0.0);
        assert_close(m.portfolio_value(&p).unwrap(), 0.0, 0.0);
    }

    #[test]
    fn rejects_invalid_density() {
        let asset = QuantumAsset::new("S", HermitianOperator::identity(2)).unwrap();
        let ps = PriceSystem::new(1.0, 0.0, vec![1.0], vec![asset]).unwrap();
        let not_unit_trace = HermitianOperator::diagonal(&[0.7, 0.7]);
        assert!(MarketModel::new(ps.clone(), not_unit_trace, ArbitrageSemantics::default()).is_err());
        let indefinite = &sigma_z().scale(0.8) + &HermitianOperator::identity(2).scale(0.5);
        assert!(MarketModel::new(ps, indefinite, ArbitrageSemantics::default()).is_err());
    }

    #[test]
    fn rejects_negative_prices_and_bad_rate() {
        let asset = QuantumAsset::new("S", HermitianOperator::identity(2)).unwrap();
        assert!(PriceSystem::new(1.0, 0.0, vec![-1.0], vec![asset.clone()]).is_err());
        assert!(PriceSystem::new(1.0, -1.0, vec![1.0], vec![asset.clone()]).is_err());
        assert!(PriceSystem::new(0.0, 0.0, vec![1.0], vec![asset]).is_err());
    }

    #[test]
    fn classical_support_respects_cutoff() {
        let rho = HermitianOperator::basis_projector(2, 0);
        let asset = QuantumAsset::new("S", HermitianOperator::identity(2)).unwrap();
        let ps = PriceSystem::new(1.0, 0.0, vec![1.0], vec![asset]).unwrap();
        let m = MarketModel::new(ps, rho, ArbitrageSemantics::default()).unwrap();
        assert_eq!(m.classical_support(), vec![0]);
    }
}
