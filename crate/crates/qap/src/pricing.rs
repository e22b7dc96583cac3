//! Derivative pricing under risk-neutral density operators.
//!
//! A derivative is an asset without a quoted price. Given any risk-neutral
//! density operator `ρ*` the fair price is the discounted expectation
//! `tr{ρ* V}/(1+r)`; ranging over the whole risk-neutral set yields the
//! no-arbitrage price interval. A quoted price is consistent with the market
//! exactly when extending the market by the derivative at that quote stays
//! arbitrage-free.

use crate::arbitrage::{detect, find_risk_neutral, ArbitrageReport};
use crate::error::{Error, Result};
use crate::hermitian::{HermitianOperator, SPECTRAL_TOL};
use crate::market::{validate_density, MarketModel, PriceSystem, QuantumAsset};
use crate::solver::{linear_extremum, AffineSpectralProblem, Direction, SolverConfig, SolverStatus};

/// A payoff operator without a current price.
#[derive(Debug, Clone)]
pub struct Derivative {
    payoff: HermitianOperator,
    name: String,
}

impl Derivative {
    pub fn new(name: impl Into<String>, payoff: HermitianOperator) -> Result<Self> {
        let scale = payoff.frobenius_norm().max(1.0);
        if !payoff.is_psd(SPECTRAL_TOL * scale)? {
            return Err(Error::Domain(format!(
                "derivative payoff is not positive semidefinite (min eigenvalue {:.3e})",
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
}

/// No-arbitrage price interval.
///
/// The extrema are taken over the closure of the risk-neutral set (support
/// contained in the support of `ρ` instead of the open equivalence
/// condition); `closure_note` records that convention.
#[derive(Debug, Clone, Copy)]
pub struct PriceInterval {
    pub lower: f64,
    pub upper: f64,
    pub closure_note: bool,
}

/// Fair price `tr{ρ* V}/(1+r)` of a derivative under a risk-neutral density
/// operator.
pub fn fair_price(rho_star: &HermitianOperator, v: &Derivative, rate: f64) -> Result<f64> {
    validate_density(rho_star)?;
    if !(rate > -1.0) {
        return Err(Error::Domain(format!("rate must exceed -1, got {rate}")));
    }
    Ok(rho_star.trace_inner(v.payoff())? / (1.0 + rate))
}

/// Builds the derivative `v(S)`: the scalar map applied to the eigenvalues
/// of the asset in its own eigenbasis.
pub fn function_of_asset(
    name: impl Into<String>,
    s: &QuantumAsset,
    v: impl Fn(f64) -> f64,
) -> Result<Derivative> {
    let spectrum = s.payoff().eigh()?;
    for &lambda in &spectrum.eigenvalues {
        let mapped = v(lambda);
        if !(mapped >= 0.0) || !mapped.is_finite() {
            return Err(Error::Domain(format!(
                "payoff map produces {mapped} at eigenvalue {lambda}; derivatives must pay ≥ 0"
            )));
        }
    }
    Derivative::new(name, spectrum.assemble_with(v))
}

/// No-arbitrage price bounds of a derivative: the extrema of
/// `tr{X V}/(1+r)` over the closure of the risk-neutral set
/// `{X ⪰ 0 on supp(ρ), tr X = 1, tr{X Y_i} = 0}`.
///
/// Requires an arbitrage-free model; a strictly positive risk-neutral
/// certificate is located first (errors propagate as
/// [`Error::NoCertificate`] or [`Error::Degenerate`]).
pub fn price_bounds(m: &MarketModel, v: &Derivative, config: &SolverConfig) -> Result<PriceInterval> {
    if v.payoff().dim() != m.dim() {
        return Err(Error::Dimension(format!(
            "derivative has dimension {}, market has {}",
            v.payoff().dim(),
            m.dim()
        )));
    }
    // Establishes that the (open) risk-neutral set is nonempty.
    find_risk_neutral(m, config)?;

    let iso = crate::arbitrage::support_isometry(m.rho())?;
    let rank = iso.cols();
    let mut constraints = vec![(HermitianOperator::identity(rank), 1.0)];
    for y in m.discounted_net_gains() {
        constraints.push((y.conjugate_with(&iso.adjoint())?, 0.0));
    }
    let objective = v.payoff().conjugate_with(&iso.adjoint())?;
    let problem =
        AffineSpectralProblem::on_full_space(rank, constraints).with_objective(objective);

    let discount = 1.0 / (1.0 + m.rate());
    let lower = match linear_extremum(&problem, config, Direction::Minimize)?.status {
        SolverStatus::ObjectiveValue(val) => val * discount,
        _ => return Err(Error::Numerical("extremization returned no value".into())),
    };
    let upper = match linear_extremum(&problem, config, Direction::Maximize)?.status {
        SolverStatus::ObjectiveValue(val) => val * discount,
        _ => return Err(Error::Numerical("extremization returned no value".into())),
    };
    if lower > upper + config.feas_tol {
        return Err(Error::Numerical(format!(
            "price bounds crossed: [{lower}, {upper}]"
        )));
    }
    Ok(PriceInterval {
        lower,
        upper,
        closure_note: true,
    })
}

/// Tests whether quoting the derivative at `quote` keeps the market
/// arbitrage-free: the market is extended by `(quote, V)` and re-run through
/// the detector. Quotes on a bound inherit the solver's boundary policy and
/// come back degenerate.
pub fn price_consistency(
    m: &MarketModel,
    v: &Derivative,
    quote: f64,
    config: &SolverConfig,
) -> Result<ArbitrageReport> {
    if !(quote > 0.0) || !quote.is_finite() {
        return Err(Error::Domain(format!(
            "quoted price must be positive, got {quote}"
        )));
    }
    let ps = m.price_system();
    let mut prices = ps.risky_prices().to_vec();
    let mut assets = ps.risky_assets().to_vec();
    prices.push(quote);
    assets.push(QuantumAsset::new(v.name(), v.payoff().clone())?);
    let extended = MarketModel::new(
        PriceSystem::new(ps.riskless_price(), ps.rate(), prices, assets)?,
        m.rho().clone(),
        m.semantics(),
    )?;
    detect(&extended, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arbitrage::Verdict;
    use crate::hermitian::{sigma_x, sigma_z, PauliCoefficients};
    use crate::market::ArbitrageSemantics;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn band_market(a: f64, b: f64, q: f64, rate: f64, price: f64, delta: f64) -> MarketModel {
        let s = PauliCoefficients::new(0.5 * (a + b), q, 0.0, 0.5 * (a - b)).to_operator();
        let asset = QuantumAsset::new("S", s).unwrap();
        let rho = (&HermitianOperator::identity(2) + &sigma_x().scale(delta)).scale(0.5);
        let ps = PriceSystem::new(1.0, rate, vec![price], vec![asset]).unwrap();
        MarketModel::new(ps, rho, ArbitrageSemantics::full_trace()).unwrap()
    }

    #[test]
    fn fair_price_half_quantum_derivative() {
        // ρ* = diag(0.5, 0.5) + 0.25σ_x prices V = 1.5I − 0.5σ_z + 0.4σ_x at
        // 1.5 + 0.2 = 1.7 with r = 0.
        let rho_star = &HermitianOperator::diagonal(&[0.5, 0.5]) + &sigma_x().scale(0.25);
        let v = Derivative::new(
            "V",
            PauliCoefficients::new(1.5, 0.4, 0.0, -0.5).to_operator(),
        )
        .unwrap();
        assert_close(fair_price(&rho_star, &v, 0.0).unwrap(), 1.7, 1e-12);

        // The riskless payoff (1+r)·I always prices at 1.
        let riskless = Derivative::new("B", HermitianOperator::identity(2).scale(1.07)).unwrap();
        assert_close(fair_price(&rho_star, &riskless, 0.07).unwrap(), 1.0, 1e-12);

        // The zero payoff prices at zero.
        let zero = Derivative::new("Z", HermitianOperator::zeros(2)).unwrap();
        assert_close(fair_price(&rho_star, &zero, 0.0).unwrap(), 0.0, 0.0);
    }

    #[test]
    fn function_of_asset_examples() {
        let s = QuantumAsset::new("S", HermitianOperator::diagonal(&[1.0, 2.0])).unwrap();
        // Identity map reproduces the asset.
        let ident = function_of_asset("id", &s, |x| x).unwrap();
        assert!(ident.payoff().sub(s.payoff()).unwrap().is_zero(1e-12));
        // Call-style payoff on the eigenvalues.
        let call = function_of_asset("call", &s, |x| (x - 1.5).max(0.0)).unwrap();
        assert!(call
            .payoff()
            .sub(&HermitianOperator::diagonal(&[0.0, 0.5]))
            .unwrap()
            .is_zero(1e-12));
        // Squaring in the eigenbasis equals the matrix square.
        let sq = PauliCoefficients::new(1.5, 0.8, 0.0, -0.5).to_operator();
        let asset = QuantumAsset::new("S", sq.clone()).unwrap();
        let squared = function_of_asset("sq", &asset, |x| x * x).unwrap();
        let prod = sq.to_matrix().mul(&sq.to_matrix()).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                let d = squared.payoff().entry(j, k) - prod.entry(j, k);
                assert!(d.norm() <= 1e-9, "entry ({j},{k}) differs by {}", d.norm());
            }
        }
    }

    #[test]
    fn function_of_asset_rejects_negative_map() {
        let s = QuantumAsset::new("S", HermitianOperator::diagonal(&[1.0, 2.0])).unwrap();
        assert!(function_of_asset("bad", &s, |x| x - 1.5).is_err());
    }

    #[test]
    fn price_bounds_pinned_and_free_directions() {
        let cfg = SolverConfig::default();
        let m = band_market(1.0, 2.0, 0.0, 0.0, 1.5, 0.5);
        // diag(1, 0): the martingale constraint pins p = 0.5 and the
        // off-diagonal freedom is invisible to a diagonal payoff.
        let v1 = Derivative::new("V1", HermitianOperator::diagonal(&[1.0, 0.0])).unwrap();
        let b1 = price_bounds(&m, &v1, &cfg).unwrap();
        assert_close(b1.lower, 0.5, 1e-6);
        assert_close(b1.upper, 0.5, 1e-6);
        // I + σ_x: price 1 + 2β with β ∈ [−½, ½].
        let v2 = Derivative::new("V2", &HermitianOperator::identity(2) + &sigma_x()).unwrap();
        let b2 = price_bounds(&m, &v2, &cfg).unwrap();
        assert_close(b2.lower, 0.0, 1e-6);
        assert_close(b2.upper, 2.0, 1e-6);
        assert!(b2.closure_note);
        // The riskless payoff replicates exactly.
        let v3 = Derivative::new("B", HermitianOperator::identity(2)).unwrap();
        let b3 = price_bounds(&m, &v3, &cfg).unwrap();
        assert_close(b3.lower, 1.0, 1e-6);
        assert_close(b3.upper, 1.0, 1e-6);
    }

    #[test]
    fn price_bounds_rejects_arbitrage_model() {
        let cfg = SolverConfig::default();
        let m = band_market(1.5, 2.0, 0.2, 0.0, 1.0, 0.5);
        let v = Derivative::new("V", HermitianOperator::diagonal(&[1.0, 0.0])).unwrap();
        assert!(matches!(
            price_bounds(&m, &v, &cfg),
            Err(Error::NoCertificate(_))
        ));
    }

    #[test]
    fn price_consistency_inside_and_outside() {
        let cfg = SolverConfig::default();
        let m = band_market(1.0, 2.0, 0.0, 0.0, 1.5, 0.5);
        let v = Derivative::new("V", HermitianOperator::diagonal(&[1.0, 0.0])).unwrap();
        // Exactly priced by ρ* = I/2.
        let at_fair = price_consistency(&m, &v, 0.5, &cfg).unwrap();
        assert_eq!(at_fair.verdict, Verdict::ArbitrageFree);
        // Below the lower bound: the extended market admits arbitrage.
        let below = price_consistency(&m, &v, 0.2, &cfg).unwrap();
        assert_eq!(below.verdict, Verdict::Arbitrage);
    }

    #[test]
    fn price_consistency_wide_interval_quote() {
        let cfg = SolverConfig::default();
        let m = band_market(1.0, 2.0, 0.0, 0.0, 1.5, 0.5);
        let v = Derivative::new("V", &HermitianOperator::identity(2) + &sigma_x()).unwrap();
        let inside = price_consistency(&m, &v, 1.3, &cfg).unwrap();
        assert_eq!(inside.verdict, Verdict::ArbitrageFree);
        let outside = price_consistency(&m, &v, 2.5, &cfg).unwrap();
        assert_eq!(outside.verdict, Verdict::Arbitrage);
    }

    #[test]
    fn derivative_requires_psd_payoff() {
        assert!(Derivative::new("bad", sigma_z()).is_err());
    }
}
