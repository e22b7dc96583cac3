//! Scenario and report files.
//!
//! Scenarios are JSON documents describing a market: dimension, rate,
//! prices, payoff operators (dense complex matrices as row-major nested
//! arrays of `[re, im]` pairs, or Pauli coefficients when `dim = 2`), the
//! market density operator, the arbitrage semantics, and optionally a
//! derivative, a quoted price, and tolerance overrides. Reports mirror the
//! detector output: verdict, certificate, residuals, and the digest of the
//! input they were produced from.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arbitrage::{ArbitrageReport, Certificate, Verdict};
use crate::error::{Error, Result};
use crate::hermitian::{HermitianOperator, PauliCoefficients};
use crate::market::{
    ArbitrageSemantics, Condition2Mode, HhatMode, MarketModel, Portfolio, PriceSystem,
    QuantumAsset,
};
use crate::pricing::{Derivative, PriceInterval};
use crate::solver::SolverConfig;

/// Row-major complex matrix: entries are `[re, im]` pairs.
pub type MatrixData = Vec<Vec<[f64; 2]>>;

fn matrix_to_operator(data: &MatrixData, dim: usize) -> Result<HermitianOperator> {
    if data.len() != dim || data.iter().any(|row| row.len() != dim) {
        return Err(Error::Scenario(format!(
            "matrix must be {dim}x{dim} to match the scenario dimension"
        )));
    }
    let entries: Vec<Complex64> = data
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    HermitianOperator::new(dim, entries)
        .map_err(|e| Error::Scenario(format!("invalid operator: {e}")))
}

fn operator_to_matrix(op: &HermitianOperator) -> MatrixData {
    let n = op.dim();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let z = op.entry(j, k);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect()
}

/// Pauli form of a 2x2 Hermitian operator.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliSpec {
    pub i: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PauliSpec {
    fn to_operator(self) -> HermitianOperator {
        PauliCoefficients::new(self.i, self.x, self.y, self.z).to_operator()
    }
}

fn resolve_operator(
    what: &str,
    matrix: &Option<MatrixData>,
    pauli: &Option<PauliSpec>,
    dim: usize,
) -> Result<HermitianOperator> {
    match (matrix, pauli) {
        (Some(m), None) => matrix_to_operator(m, dim),
        (None, Some(p)) => {
            if dim != 2 {
                return Err(Error::Scenario(format!(
                    "{what}: the pauli form needs dim = 2, scenario has dim = {dim}"
                )));
            }
            Ok(p.to_operator())
        }
        (Some(_), Some(_)) => Err(Error::Scenario(format!(
            "{what}: give exactly one of `matrix` or `pauli`, not both"
        ))),
        (None, None) => Err(Error::Scenario(format!(
            "{what}: give exactly one of `matrix` or `pauli`"
        ))),
    }
}

/// A risky asset entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub price: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<PauliSpec>,
}

/// The market density operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<PauliSpec>,
}

impl OperatorSpec {
    pub fn from_operator(op: &HermitianOperator) -> Self {
        Self {
            matrix: Some(operator_to_matrix(op)),
            pauli: None,
        }
    }

    pub fn to_operator(&self, what: &str, dim: usize) -> Result<HermitianOperator> {
        resolve_operator(what, &self.matrix, &self.pauli, dim)
    }
}

/// An unpriced derivative entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivativeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<PauliSpec>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum HhatName {
    Classical,
    #[default]
    Full,
    Support,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum Condition2Name {
    #[default]
    Trace,
    State,
}

/// Arbitrage semantics selection; defaults to full mode with the trace
/// condition.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, Default, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct SemanticsSpec {
    pub hhat: HhatName,
    pub condition2: Condition2Name,
}

impl SemanticsSpec {
    pub fn to_semantics(self) -> ArbitrageSemantics {
        ArbitrageSemantics {
            hhat_mode: match self.hhat {
                HhatName::Classical => HhatMode::Classical,
                HhatName::Full => HhatMode::Full,
                HhatName::Support => HhatMode::Support,
            },
            condition2_mode: match self.condition2 {
                Condition2Name::Trace => Condition2Mode::Trace,
                Condition2Name::State => Condition2Mode::State,
            },
        }
    }

    pub fn from_semantics(sem: ArbitrageSemantics) -> Self {
        Self {
            hhat: match sem.hhat_mode {
                HhatMode::Classical => HhatName::Classical,
                HhatMode::Full => HhatName::Full,
                HhatMode::Support => HhatName::Support,
            },
            condition2: match sem.condition2_mode {
                Condition2Mode::Trace => Condition2Name::Trace,
                Condition2Mode::State => Condition2Name::State,
            },
        }
    }
}

/// Optional tolerance overrides.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feas_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bisection_tol: Option<f64>,
}

fn default_riskless_price() -> f64 {
    1.0
}

/// A complete scenario file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub dim: usize,
    pub rate: f64,
    #[serde(default = "default_riskless_price")]
    pub riskless_price: f64,
    pub assets: Vec<AssetSpec>,
    pub rho: OperatorSpec,
    #[serde(default)]
    pub semantics: SemanticsSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivative: Option<DerivativeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quote: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceSpec>,
}

/// Everything a scenario resolves to.
pub struct ScenarioBundle {
    pub market: MarketModel,
    pub derivative: Option<Derivative>,
    pub quote: Option<f64>,
    pub config: SolverConfig,
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Scenario(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }

    /// Validates the file against the market invariants and builds the model.
    pub fn build(&self) -> Result<ScenarioBundle> {
        let dim = self.dim;
        if dim == 0 {
            return Err(Error::Scenario("dim must be at least 1".into()));
        }
        let mut prices = Vec::with_capacity(self.assets.len());
        let mut assets = Vec::with_capacity(self.assets.len());
        for (idx, spec) in self.assets.iter().enumerate() {
            let label = spec.name.clone().unwrap_or_else(|| format!("S{}", idx + 1));
            let payoff = resolve_operator(
                &format!("asset `{label}`"),
                &spec.matrix,
                &spec.pauli,
                dim,
            )?;
            let asset = QuantumAsset::new(label, payoff)
                .map_err(|e| Error::Scenario(e.to_string()))?;
            prices.push(spec.price);
            assets.push(asset);
        }
        let rho = self.rho.to_operator("rho", dim)?;
        let price_system = PriceSystem::new(self.riskless_price, self.rate, prices, assets)
            .map_err(|e| Error::Scenario(e.to_string()))?;
        let market = MarketModel::new(price_system, rho, self.semantics.to_semantics())
            .map_err(|e| Error::Scenario(e.to_string()))?;

        let derivative = match &self.derivative {
            None => None,
            Some(spec) => {
                let label = spec.name.clone().unwrap_or_else(|| "V".to_string());
                let payoff = resolve_operator(
                    &format!("derivative `{label}`"),
                    &spec.matrix,
                    &spec.pauli,
                    dim,
                )?;
                Some(
                    Derivative::new(label, payoff)
                        .map_err(|e| Error::Scenario(e.to_string()))?,
                )
            }
        };

        let mut config = SolverConfig::default();
        if let Some(tol) = &self.tolerances {
            if let Some(f) = tol.feas_tol {
                config.feas_tol = f;
            }
            if let Some(m) = tol.max_iter {
                config.max_iter = m;
            }
            if let Some(b) = tol.bisection_tol {
                config.bisection_tol = b;
            }
        }
        config
            .validate()
            .map_err(|e| Error::Scenario(e.to_string()))?;
        if let Some(q) = self.quote {
            if !(q > 0.0) || !q.is_finite() {
                return Err(Error::Scenario(format!("quote must be positive, got {q}")));
            }
        }
        Ok(ScenarioBundle {
            market,
            derivative,
            quote: self.quote,
            config,
        })
    }
}

/// SHA-256 digest (hex) of a scenario's bytes, recorded in every report.
pub fn input_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortfolioSpec {
    pub xi0: f64,
    pub xi: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateSpec {
    Arbitrage {
        portfolio: PortfolioSpec,
        witness_state: Vec<[f64; 2]>,
        payoff_min: f64,
        witness_payoff: f64,
        witness_overlap: f64,
    },
    RiskNeutral {
        rho_star: MatrixData,
        min_support_eigen: f64,
        price_residuals: Vec<f64>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct ResidualBlock {
    /// Absent when the solver left no finite residual (inconsistent affine
    /// system, or an undecided run).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver_residual: Option<f64>,
    pub solver_iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub price_residuals: Option<Vec<f64>>,
}

/// Machine-readable detector report.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSpec>,
    pub residuals: ResidualBlock,
    pub semantics_used: SemanticsSpec,
    pub tool_version: String,
    pub input_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divergence: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<String>,
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Arbitrage => "arbitrage",
        Verdict::ArbitrageFree => "arbitrage_free",
        Verdict::Degenerate => "degenerate",
    }
}

impl ReportFile {
    pub fn from_report(report: &ArbitrageReport, tool_version: &str, digest: &str) -> Self {
        let certificate = report.certificate.as_ref().map(|c| match c {
            Certificate::Arbitrage(cert) => CertificateSpec::Arbitrage {
                portfolio: PortfolioSpec {
                    xi0: cert.portfolio.xi0,
                    xi: cert.portfolio.xi.clone(),
                },
                witness_state: cert.witness_state.iter().map(|z| [z.re, z.im]).collect(),
                payoff_min: cert.payoff_min,
                witness_payoff: cert.witness_payoff,
                witness_overlap: cert.witness_overlap,
            },
            Certificate::RiskNeutral(cert) => CertificateSpec::RiskNeutral {
                rho_star: operator_to_matrix(&cert.rho_star),
                min_support_eigen: cert.min_support_eigen,
                price_residuals: cert.price_residuals.clone(),
            },
        });
        let price_residuals = match &report.certificate {
            Some(Certificate::RiskNeutral(cert)) => Some(cert.price_residuals.clone()),
            _ => None,
        };
        Self {
            verdict: verdict_name(report.verdict).to_string(),
            certificate,
            residuals: ResidualBlock {
                solver_residual: report
                    .diagnostics
                    .residual
                    .is_finite()
                    .then_some(report.diagnostics.residual),
                solver_iterations: report.diagnostics.solver_iterations,
                price_residuals,
            },
            semantics_used: SemanticsSpec::from_semantics(report.semantics_used),
            tool_version: tool_version.to_string(),
            input_digest: digest.to_string(),
            divergence: report.diagnostics.divergence.clone(),
            degenerate: report.diagnostics.degenerate.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Scenario(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Extracts the risk-neutral operator from a report, if present.
    pub fn rho_star(&self) -> Result<Option<HermitianOperator>> {
        match &self.certificate {
            Some(CertificateSpec::RiskNeutral { rho_star, .. }) => {
                let dim = rho_star.len();
                Ok(Some(matrix_to_operator(rho_star, dim)?))
            }
            _ => Ok(None),
        }
    }

    /// Extracts the arbitrage portfolio, if present.
    pub fn portfolio(&self) -> Option<Portfolio> {
        match &self.certificate {
            Some(CertificateSpec::Arbitrage { portfolio, .. }) => {
                Portfolio::new(portfolio.xi0, portfolio.xi.clone()).ok()
            }
            _ => None,
        }
    }
}

/// Machine-readable price-bounds report.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsReport {
    pub lower: f64,
    pub upper: f64,
    pub closure_note: bool,
    pub tool_version: String,
    pub input_digest: String,
}

impl BoundsReport {
    pub fn new(interval: &PriceInterval, tool_version: &str, digest: &str) -> Self {
        Self {
            lower: interval.lower,
            upper: interval.upper,
            closure_note: interval.closure_note,
            tool_version: tool_version.to_string(),
            input_digest: digest.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// A bare operator file (used by the measure-change command and accepted by
/// verify-rnd as a candidate).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<PauliSpec>,
}

impl OperatorFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Scenario(e.to_string()))
    }

    pub fn from_operator(op: &HermitianOperator) -> Self {
        Self {
            dim: Some(op.dim()),
            matrix: Some(operator_to_matrix(op)),
            pauli: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("operator serialization cannot fail")
    }

    pub fn to_operator(&self) -> Result<HermitianOperator> {
        let dim = match (self.dim, &self.matrix) {
            (Some(d), _) => d,
            (None, Some(m)) => m.len(),
            (None, None) => 2,
        };
        resolve_operator("operator", &self.matrix, &self.pauli, dim)
    }
}
