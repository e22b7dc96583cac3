//! Arbitrage detection and the dual certificate pair.
//!
//! A portfolio is an arbitrage opportunity when it costs nothing (or less)
//! today, never pays negative amounts on allowable states with positive
//! `ρ`-overlap, and pays strictly positively in the configured sense. The
//! detector reduces each semantics mode to a conic feasibility problem over
//! the discounted net gains `Y_i = S_i/(1+r) − π_i·I`:
//!
//! * `classical` — a sign-feasibility problem on the supported diagonal
//!   entries of `ξ·Y`;
//! * `full` (state or trace condition) — existence of `ξ` with `ξ·Y ⪰ 0`
//!   together with `ξ·Y ≠ 0` resp. a nonzero support compression;
//! * `support` — the same alternative on the support subspace of `ρ`.
//!
//! When no arbitrage portfolio exists, the detector searches for the
//! canonical risk-neutral density operator: the support-restricted solution
//! of `tr{ρ* Y_i} = 0`, `tr ρ* = 1` maximizing the minimum support
//! eigenvalue. Strict positivity of that maximum certifies equivalence
//! `ρ* ≈ ρ`. Exactly one of the two certificates exists away from the
//! feasibility boundary; boundary models are reported as degenerate rather
//! than resolved by guessing.
//!
//! For rank-deficient `ρ` under `full` semantics the two sides can genuinely
//! diverge (no arbitrage portfolio and no equivalent risk-neutral operator);
//! the report flags that regime instead of hiding it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::{
    default_support_cutoff, normalize_state, ComplexMatrix, HermitianOperator,
};
use crate::market::{ArbitrageSemantics, Condition2Mode, HhatMode, MarketModel, Portfolio};
use crate::measure::{is_equivalent, CONTINUITY_CUTOFF};
use crate::solver::{
    feasibility, max_min_eigen, project_affine, AffineSpectralProblem, SolverConfig, SolverOutcome,
    SolverStatus,
};

/// Detection verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Arbitrage,
    ArbitrageFree,
    Degenerate,
}

/// A state witnessing the strict-positivity condition: positive payoff and
/// positive `ρ`-overlap.
#[derive(Debug, Clone)]
pub struct Witness {
    pub state: Vec<Complex64>,
    pub payoff: f64,
    pub overlap: f64,
}

/// An arbitrage portfolio with its verification data.
#[derive(Debug, Clone)]
pub struct ArbitrageCertificate {
    /// Zero-cost portfolio (largest risky coordinate normalized to one).
    pub portfolio: Portfolio,
    /// Unit state with positive payoff and positive `ρ`-overlap.
    pub witness_state: Vec<Complex64>,
    /// Minimum payoff over the allowable states of the active mode.
    pub payoff_min: f64,
    pub witness_payoff: f64,
    pub witness_overlap: f64,
}

/// A risk-neutral density operator equivalent to the market `ρ`.
#[derive(Debug, Clone)]
pub struct NoArbitrageCertificate {
    pub rho_star: HermitianOperator,
    /// Minimum eigenvalue of `ρ*` on the support of `ρ` — strictly positive,
    /// which certifies the equivalence `ρ* ≈ ρ`.
    pub min_support_eigen: f64,
    /// Per-asset pricing residuals `tr{ρ* S_i/(1+r)} − π_i`.
    pub price_residuals: Vec<f64>,
}

/// Exactly one certificate backs a non-degenerate verdict; the divergence
/// regime (see module docs) leaves an arbitrage-free verdict without one.
#[derive(Debug, Clone)]
pub enum Certificate {
    Arbitrage(ArbitrageCertificate),
    RiskNeutral(NoArbitrageCertificate),
}

/// Solver telemetry attached to a report.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    pub solver_iterations: usize,
    pub residual: f64,
    /// Explanation when an arbitrage-free verdict has no risk-neutral
    /// certificate.
    pub divergence: Option<String>,
    /// Explanation of a degenerate verdict.
    pub degenerate: Option<String>,
}

/// Outcome of [`detect`].
#[derive(Debug, Clone)]
pub struct ArbitrageReport {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub semantics_used: ArbitrageSemantics,
    pub diagnostics: Diagnostics,
}

impl ArbitrageReport {
    pub fn arbitrage_certificate(&self) -> Option<&ArbitrageCertificate> {
        match &self.certificate {
            Some(Certificate::Arbitrage(c)) => Some(c),
            _ => None,
        }
    }

    pub fn risk_neutral_certificate(&self) -> Option<&NoArbitrageCertificate> {
        match &self.certificate {
            Some(Certificate::RiskNeutral(c)) => Some(c),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Support compression
// ---------------------------------------------------------------------------

/// Isometry onto the support of a PSD operator: the columns are the
/// eigenvectors with eigenvalue above the shared relative cutoff.
pub(crate) fn support_isometry(rho: &HermitianOperator) -> Result<ComplexMatrix> {
    let spectrum = rho.eigh()?;
    let cutoff = default_support_cutoff(spectrum.max_abs_eigenvalue());
    let columns: Vec<Vec<Complex64>> = spectrum
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > cutoff)
        .map(|(idx, _)| spectrum.vectors.column(idx))
        .collect();
    if columns.is_empty() {
        return Err(Error::Domain(
            "operator has empty support at the working cutoff".into(),
        ));
    }
    ComplexMatrix::from_columns(&columns)
}

/// Compresses an operator onto the support subspace: `V† A V`.
fn compress(op: &HermitianOperator, isometry: &ComplexMatrix) -> Result<HermitianOperator> {
    op.conjugate_with(&isometry.adjoint())
}

/// The net-gain operator of a risky position, compressed the way the active
/// semantics mode looks at it: unchanged for `full/state`, sandwiched by the
/// support projector for `full/trace`, compressed onto the support for
/// `support`, and restricted to the supported diagonal for `classical`.
pub fn mode_compressed_net_gain(m: &MarketModel, xi: &[f64]) -> Result<HermitianOperator> {
    let gain = m.net_gain_operator(xi)?;
    match m.semantics().hhat_mode {
        HhatMode::Full => match m.semantics().condition2_mode {
            Condition2Mode::State => Ok(gain),
            Condition2Mode::Trace => {
                let support = m.rho().support_projector_default()?;
                gain.conjugate_with(&support.projector.to_matrix())
            }
        },
        HhatMode::Support => {
            let iso = support_isometry(m.rho())?;
            compress(&gain, &iso)
        }
        HhatMode::Classical => {
            let support = m.classical_support();
            let diag = gain.diagonal_entries();
            let restricted: Vec<f64> = support.iter().map(|&j| diag[j]).collect();
            Ok(HermitianOperator::diagonal(&restricted))
        }
    }
}

/// Minimum payoff of an operator over the allowable states of the active
/// mode: the smallest supported diagonal entry in classical mode, the
/// minimum eigenvalue (of the support compression, for support mode)
/// otherwise.
pub fn mode_min_payoff(m: &MarketModel, payoff: &HermitianOperator) -> Result<f64> {
    match m.semantics().hhat_mode {
        HhatMode::Classical => {
            let diag = payoff.diagonal_entries();
            Ok(m.classical_support()
                .iter()
                .map(|&j| diag[j])
                .fold(f64::INFINITY, f64::min))
        }
        HhatMode::Full => payoff.min_eigenvalue(),
        HhatMode::Support => {
            let iso = support_isometry(m.rho())?;
            compress(payoff, &iso)?.min_eigenvalue()
        }
    }
}

// ---------------------------------------------------------------------------
// Witness construction
// ---------------------------------------------------------------------------

/// Searches for a unit state with `⟨ψ|ρ|ψ⟩ > tol` and `⟨ψ|X|ψ⟩ > tol`.
///
/// When `tr{ρX} > tol` an eigenvector of `ρ` with positive eigenvalue and
/// positive payoff exists and is returned. Otherwise the eigenvectors of `X`
/// with positive eigenvalue are scanned for `ρ`-overlap, and as a last step
/// small mixtures of the top `X`-eigenvector with the top `ρ`-eigenvector
/// are tried, which succeed whenever `X` is PSD with `λ_max > tol`.
pub fn witness_state(
    rho: &HermitianOperator,
    x: &HermitianOperator,
    tol: f64,
) -> Result<Option<Witness>> {
    let rho_spec = rho.eigh()?;
    let dim = rho.dim();
    for idx in (0..dim).rev() {
        let lambda = rho_spec.eigenvalues[idx];
        if lambda <= tol {
            break;
        }
        let v = rho_spec.vectors.column(idx);
        let payoff = x.expectation(&v)?;
        if payoff > tol {
            return Ok(Some(Witness {
                state: v,
                payoff,
                overlap: lambda,
            }));
        }
    }

    let x_spec = x.eigh()?;
    for idx in (0..dim).rev() {
        let lambda = x_spec.eigenvalues[idx];
        if lambda <= tol {
            break;
        }
        let v = x_spec.vectors.column(idx);
        let overlap = rho.expectation(&v)?;
        if overlap > tol {
            return Ok(Some(Witness {
                state: v,
                payoff: lambda,
                overlap,
            }));
        }
    }

    // Mixtures ψ ∝ v_X + ε·phase·u_ρ keep most of the top payoff while
    // acquiring quadratic overlap mass from the top of ρ.
    let top_x = x_spec.eigenvalues[dim - 1];
    let top_rho = rho_spec.eigenvalues[dim - 1];
    if top_x > tol && top_rho > tol {
        let vx = x_spec.vectors.column(dim - 1);
        let ur = rho_spec.vectors.column(dim - 1);
        let phases = [
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
        ];
        for eps in [0.1, 0.2, 0.3] {
            for phase in phases {
                let mixed: Vec<Complex64> = vx
                    .iter()
                    .zip(&ur)
                    .map(|(a, b)| a + eps * phase * b)
                    .collect();
                let psi = normalize_state(&mixed)?;
                let payoff = x.expectation(&psi)?;
                let overlap = rho.expectation(&psi)?;
                if payoff > tol && overlap > tol {
                    return Ok(Some(Witness {
                        state: psi,
                        payoff,
                        overlap,
                    }));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Risk-neutral search
// ---------------------------------------------------------------------------

/// The canonical risk-neutral certificate: among density operators with the
/// same support as `ρ` satisfying `tr{ρ* Y_i} = 0`, the one maximizing the
/// minimum support eigenvalue. Errors with [`Error::NoCertificate`] when the
/// set is empty and [`Error::Degenerate`] when the maximum cannot be told
/// apart from zero.
pub fn find_risk_neutral(m: &MarketModel, config: &SolverConfig) -> Result<NoArbitrageCertificate> {
    config.validate()?;
    let iso = support_isometry(m.rho())?;
    let rank = iso.cols();
    let gains = m.discounted_net_gains();
    let mut constraints = vec![(HermitianOperator::identity(rank), 1.0)];
    for y in &gains {
        constraints.push((compress(y, &iso)?, 0.0));
    }
    let problem = AffineSpectralProblem::on_full_space(rank, constraints);
    let outcome = match max_min_eigen(&problem, config) {
        Ok(out) => out,
        Err(Error::InfeasibleAffine(msg)) => {
            return Err(Error::NoCertificate(format!(
                "no risk-neutral density operator exists on the support of rho ({msg})"
            )))
        }
        Err(e) => return Err(e),
    };
    let SolverStatus::ObjectiveValue(t_star) = outcome.status else {
        return Err(Error::Numerical("max_min_eigen returned no value".into()));
    };
    if t_star.abs() <= config.feas_tol {
        return Err(Error::Degenerate(format!(
            "best support eigenvalue {t_star:.3e} lies within the feasibility tolerance"
        )));
    }
    if t_star < 0.0 {
        return Err(Error::NoCertificate(format!(
            "every support-restricted candidate has minimum eigenvalue ≤ {t_star:.3e} < 0"
        )));
    }

    let raw = outcome
        .point
        .ok_or_else(|| Error::Numerical("solver returned no point".into()))?;
    // One exact affine projection tightens the pricing residuals; keep it
    // only if it leaves the operator strictly positive on the support.
    let polished = project_affine(&problem, &raw, config.feas_tol)?;
    let (x_tilde, min_eig) = match polished.min_eigenvalue()? {
        t if t > config.feas_tol => (polished, t),
        _ => {
            let t = raw.min_eigenvalue()?;
            (raw, t)
        }
    };
    let rho_star_raw = x_tilde.conjugate_with(&iso)?;
    let rho_star = rho_star_raw.scale(1.0 / rho_star_raw.trace());

    let discount = 1.0 / (1.0 + m.rate());
    let mut price_residuals = Vec::with_capacity(m.num_risky());
    for (asset, &pi) in m
        .price_system()
        .risky_assets()
        .iter()
        .zip(m.price_system().risky_prices())
    {
        price_residuals.push(rho_star.trace_inner(asset.payoff())? * discount - pi);
    }
    let worst = price_residuals.iter().fold(0.0f64, |a, r| a.max(r.abs()));
    if worst > 100.0 * config.feas_tol {
        return Err(Error::Numerical(format!(
            "risk-neutral candidate re-verification failed (residual {worst:.3e})"
        )));
    }
    Ok(NoArbitrageCertificate {
        rho_star,
        min_support_eigen: min_eig,
        price_residuals,
    })
}

/// Residual report for a candidate risk-neutral operator.
#[derive(Debug, Clone)]
pub struct RiskNeutralCheck {
    /// `tr{ρ* S_i/(1+r)} − π_i` per risky asset.
    pub price_residuals: Vec<f64>,
    pub max_abs_residual: f64,
    /// Whether the candidate is equivalent to the market `ρ`.
    pub equivalent: bool,
}

impl RiskNeutralCheck {
    pub fn is_risk_neutral(&self, tol: f64) -> bool {
        self.max_abs_residual <= tol
    }
}

/// Checks a candidate `ρ*` against the defining pricing equations and the
/// equivalence requirement. Independent of the solver path.
pub fn verify_risk_neutral(m: &MarketModel, rho_star: &HermitianOperator) -> Result<RiskNeutralCheck> {
    crate::market::validate_density(rho_star)?;
    if rho_star.dim() != m.dim() {
        return Err(Error::Dimension(format!(
            "rho_star has dimension {}, market has {}",
            rho_star.dim(),
            m.dim()
        )));
    }
    let discount = 1.0 / (1.0 + m.rate());
    let mut price_residuals = Vec::with_capacity(m.num_risky());
    for (asset, &pi) in m
        .price_system()
        .risky_assets()
        .iter()
        .zip(m.price_system().risky_prices())
    {
        price_residuals.push(rho_star.trace_inner(asset.payoff())? * discount - pi);
    }
    let max_abs_residual = price_residuals.iter().fold(0.0f64, |a, r| a.max(r.abs()));
    let equivalent = is_equivalent(rho_star, m.rho(), CONTINUITY_CUTOFF)?;
    Ok(RiskNeutralCheck {
        price_residuals,
        max_abs_residual,
        equivalent,
    })
}

// ---------------------------------------------------------------------------
// Detection
// ---------------------------------------------------------------------------

struct ModeProblem {
    problem: AffineSpectralProblem,
    basis: Vec<HermitianOperator>,
}

fn build_mode_problem(m: &MarketModel) -> Result<ModeProblem> {
    let gains = m.discounted_net_gains();
    let sem = m.semantics();
    match sem.hhat_mode {
        HhatMode::Full => {
            let normalizer = match sem.condition2_mode {
                Condition2Mode::State => HermitianOperator::identity(m.dim()),
                Condition2Mode::Trace => m.rho().support_projector_default()?.projector,
            };
            Ok(ModeProblem {
                problem: AffineSpectralProblem::in_span(
                    m.dim(),
                    gains.clone(),
                    vec![(normalizer, 1.0)],
                ),
                basis: gains,
            })
        }
        HhatMode::Support => {
            let iso = support_isometry(m.rho())?;
            let rank = iso.cols();
            let compressed: Vec<HermitianOperator> = gains
                .iter()
                .map(|y| compress(y, &iso))
                .collect::<Result<_>>()?;
            Ok(ModeProblem {
                problem: AffineSpectralProblem::in_span(
                    rank,
                    compressed.clone(),
                    vec![(HermitianOperator::identity(rank), 1.0)],
                ),
                basis: compressed,
            })
        }
        HhatMode::Classical => {
            let support = m.classical_support();
            let s = support.len();
            if s == 0 {
                return Err(Error::Domain(
                    "density operator has no classically supported event".into(),
                ));
            }
            let restricted: Vec<HermitianOperator> = gains
                .iter()
                .map(|y| {
                    let diag = y.diagonal_entries();
                    HermitianOperator::diagonal(
                        &support.iter().map(|&j| diag[j]).collect::<Vec<_>>(),
                    )
                })
                .collect();
            Ok(ModeProblem {
                problem: AffineSpectralProblem::in_span(
                    s,
                    restricted.clone(),
                    vec![(HermitianOperator::identity(s), 1.0)],
                ),
                basis: restricted,
            })
        }
    }
}

fn build_arbitrage_certificate(
    m: &MarketModel,
    coordinates: &[f64],
    config: &SolverConfig,
) -> Result<ArbitrageCertificate> {
    let scale = coordinates.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if scale <= f64::MIN_POSITIVE {
        return Err(Error::Numerical(
            "feasible arbitrage point has vanishing coordinates".into(),
        ));
    }
    let xi: Vec<f64> = coordinates.iter().map(|x| x / scale).collect();
    let portfolio = m.risky_to_full(&xi)?;
    let payoff = m.payoff_operator(&portfolio)?;
    let payoff_scale = 1.0 + payoff.frobenius_norm();

    let value = m.portfolio_value(&portfolio)?;
    if value > config.feas_tol {
        return Err(Error::Numerical(format!(
            "certificate portfolio has positive cost {value:.3e}"
        )));
    }
    let payoff_min = mode_min_payoff(m, &payoff)?;
    if payoff_min < -10.0 * config.feas_tol * payoff_scale {
        return Err(Error::Numerical(format!(
            "certificate payoff fails the mode positivity check (min {payoff_min:.3e})"
        )));
    }

    let witness = match m.semantics().hhat_mode {
        HhatMode::Classical => {
            let diag = payoff.diagonal_entries();
            let support = m.classical_support();
            let best = support
                .iter()
                .copied()
                .max_by(|&a, &b| diag[a].partial_cmp(&diag[b]).expect("finite payoffs"))
                .expect("nonempty classical support");
            let state = crate::hermitian::basis_state(m.dim(), best);
            let overlap = m.rho().entry(best, best).re;
            Witness {
                state,
                payoff: diag[best],
                overlap,
            }
        }
        HhatMode::Full => witness_state(m.rho(), &payoff, config.feas_tol)?.ok_or_else(|| {
            Error::Numerical("no witness state found for the arbitrage certificate".into())
        })?,
        HhatMode::Support => {
            let iso = support_isometry(m.rho())?;
            let rho_c = compress(m.rho(), &iso)?;
            let payoff_c = compress(&payoff, &iso)?;
            let w = witness_state(&rho_c, &payoff_c, config.feas_tol)?.ok_or_else(|| {
                Error::Numerical("no witness state found on the support".into())
            })?;
            let state = iso.apply(&w.state)?;
            Witness {
                payoff: payoff.expectation(&state)?,
                overlap: m.rho().expectation(&state)?,
                state,
            }
        }
    };
    if witness.payoff <= config.feas_tol || witness.overlap <= config.feas_tol {
        return Err(Error::Numerical(format!(
            "witness re-verification failed (payoff {:.3e}, overlap {:.3e})",
            witness.payoff, witness.overlap
        )));
    }

    Ok(ArbitrageCertificate {
        portfolio,
        witness_state: witness.state,
        payoff_min,
        witness_payoff: witness.payoff,
        witness_overlap: witness.overlap,
    })
}

fn is_full_rank(m: &MarketModel) -> Result<bool> {
    Ok(support_isometry(m.rho())?.cols() == m.dim())
}

/// Decides arbitrage for the model under its configured semantics and
/// produces the matching certificate.
///
/// Away from the feasibility boundary exactly one certificate exists; the
/// boundary itself yields [`Verdict::Degenerate`]. Under `full` semantics
/// with rank-deficient `ρ` (and in classical mode) an arbitrage-free verdict
/// can lack a risk-neutral certificate — the report carries a divergence
/// note in that case.
pub fn detect(m: &MarketModel, config: &SolverConfig) -> Result<ArbitrageReport> {
    config.validate()?;
    let sem = m.semantics();
    let mode = build_mode_problem(m)?;
    // A run that exhausts its budget without stalling sits on the
    // feasibility boundary; treat it as "no demonstrated arbitrage" and let
    // the risk-neutral side resolve or report the boundary.
    let feas: SolverOutcome = match feasibility(&mode.problem, config) {
        Ok(out) => out,
        Err(Error::IterationLimit(n)) => SolverOutcome {
            status: SolverStatus::Infeasible,
            point: None,
            coordinates: None,
            constraint_residual: f64::NAN,
            cone_residual: f64::NAN,
            iterations: n,
            boundary: true,
        },
        Err(e) => return Err(e),
    };
    let mut diagnostics = Diagnostics {
        solver_iterations: feas.iterations,
        residual: feas.constraint_residual,
        divergence: None,
        degenerate: None,
    };

    if feas.status == SolverStatus::Feasible {
        let coords = match feas.coordinates {
            Some(c) => c,
            None => {
                let point = feas
                    .point
                    .as_ref()
                    .ok_or_else(|| Error::Numerical("feasible outcome without a point".into()))?;
                crate::solver::least_squares_coordinates(&mode.basis, point)?
            }
        };
        let certificate = build_arbitrage_certificate(m, &coords, config)?;
        return Ok(ArbitrageReport {
            verdict: Verdict::Arbitrage,
            certificate: Some(Certificate::Arbitrage(certificate)),
            semantics_used: sem,
            diagnostics,
        });
    }

    match find_risk_neutral(m, config) {
        Ok(cert) => Ok(ArbitrageReport {
            verdict: Verdict::ArbitrageFree,
            certificate: Some(Certificate::RiskNeutral(cert)),
            semantics_used: sem,
            diagnostics,
        }),
        Err(Error::NoCertificate(msg)) => {
            let full_rank = is_full_rank(m)?;
            match sem.hhat_mode {
                HhatMode::Support => {
                    diagnostics.degenerate = Some(format!(
                        "both sides of the support alternative failed numerically: {msg}"
                    ));
                    Ok(ArbitrageReport {
                        verdict: Verdict::Degenerate,
                        certificate: None,
                        semantics_used: sem,
                        diagnostics,
                    })
                }
                HhatMode::Full if full_rank => {
                    diagnostics.degenerate = Some(format!(
                        "full-rank model sits on the feasibility boundary: {msg}"
                    ));
                    Ok(ArbitrageReport {
                        verdict: Verdict::Degenerate,
                        certificate: None,
                        semantics_used: sem,
                        diagnostics,
                    })
                }
                HhatMode::Full => {
                    diagnostics.divergence = Some(format!(
                        "no arbitrage portfolio exists, yet no risk-neutral density operator \
                         equivalent to the rank-deficient rho exists either: {msg}"
                    ));
                    Ok(ArbitrageReport {
                        verdict: Verdict::ArbitrageFree,
                        certificate: None,
                        semantics_used: sem,
                        diagnostics,
                    })
                }
                HhatMode::Classical => {
                    diagnostics.divergence = Some(format!(
                        "classically arbitrage-free, but the support-restricted density-operator \
                         search found no certificate (classical verdicts pair with a \
                         basis-restricted measure): {msg}"
                    ));
                    Ok(ArbitrageReport {
                        verdict: Verdict::ArbitrageFree,
                        certificate: None,
                        semantics_used: sem,
                        diagnostics,
                    })
                }
            }
        }
        Err(Error::Degenerate(msg)) => {
            diagnostics.degenerate = Some(msg);
            Ok(ArbitrageReport {
                verdict: Verdict::Degenerate,
                certificate: None,
                semantics_used: sem,
                diagnostics,
            })
        }
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// Round trip
// ---------------------------------------------------------------------------

/// Consistency report of the two-sided certificate search.
#[derive(Debug, Clone)]
pub struct RoundTripReport {
    pub verdict: Verdict,
    pub arbitrage_found: bool,
    pub risk_neutral_found: bool,
    pub rnd_error: Option<String>,
    /// Exactly one of the two certificates was produced.
    pub exactly_one: bool,
    /// The disagreement falls into the documented divergence regime
    /// (rank-deficient `ρ` under `full` semantics, or classical mode).
    pub divergence: bool,
    /// `exactly_one`, or a flagged divergence.
    pub consistent: bool,
}

/// Runs [`detect`] and, independently, [`find_risk_neutral`], and reports
/// whether exactly one certificate was produced. For full-rank `ρ` and for
/// support semantics any disagreement is an inconsistency; for
/// rank-deficient `ρ` under full semantics (and for classical mode) a
/// disagreement is flagged as the documented divergence instead.
pub fn ftqap_round_trip(m: &MarketModel, config: &SolverConfig) -> Result<RoundTripReport> {
    let report = detect(m, config)?;
    let arbitrage_found = report.verdict == Verdict::Arbitrage;
    let (risk_neutral_found, rnd_error) = match find_risk_neutral(m, config) {
        Ok(_) => (true, None),
        Err(Error::NoCertificate(msg)) | Err(Error::Degenerate(msg)) => (false, Some(msg)),
        Err(e) => return Err(e),
    };
    let exactly_one = arbitrage_found != risk_neutral_found;
    let full_rank = is_full_rank(m)?;
    let divergence_allowed = matches!(
        (m.semantics().hhat_mode, full_rank),
        (HhatMode::Full, false) | (HhatMode::Classical, _)
    );
    let divergence = !exactly_one && divergence_allowed && report.verdict != Verdict::Degenerate;
    let consistent = exactly_one || divergence;
    Ok(RoundTripReport {
        verdict: report.verdict,
        arbitrage_found,
        risk_neutral_found,
        rnd_error,
        exactly_one,
        divergence,
        consistent,
    })
}
