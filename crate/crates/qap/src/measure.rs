//! Density-operator measure changes.
//!
//! Classical measure theory changes from one probability measure to another
//! through the Radon–Nikodym derivative. The density-operator counterpart
//! used here is the superoperator
//!
//! ```text
//! φ(σ, ρ)[X] = σ^{1/2} ρ^{−1/2} X ρ^{−1/2} σ^{1/2}
//! ```
//!
//! with `ρ^{−1/2}` the pseudo-inverse square root. Whenever `σ ≪ ρ`
//! (nullspace of `ρ` contained in the nullspace of `σ`), applying the map to
//! `ρ` recovers `σ`. The module also provides the absolute-continuity and
//! equivalence predicates, map composition and inversion, and the trace
//! transfer `tr{σX} = tr{ρY}` with `Y = ρ^{−1/2} σ^{1/2} X σ^{1/2} ρ^{−1/2}`.

use crate::error::{Error, Result};
use crate::hermitian::{default_support_cutoff, ComplexMatrix, HermitianOperator};
use crate::market::validate_density;

/// Decides `σ ≪ ρ` (nullspace containment) numerically: the mass of `σ` on
/// the nullspace of `ρ` must vanish, `‖σ · Π_null(ρ)‖_F ≤ cutoff · ‖σ‖_F`.
pub fn is_abs_continuous(
    sigma: &HermitianOperator,
    rho: &HermitianOperator,
    cutoff: f64,
) -> Result<bool> {
    if sigma.dim() != rho.dim() {
        return Err(Error::Dimension(format!(
            "sigma has dimension {} but rho has dimension {}",
            sigma.dim(),
            rho.dim()
        )));
    }
    let support = rho.support_projector(default_support_cutoff(rho.max_abs_eigenvalue()?))?;
    let null = support.null_projector().to_matrix();
    let leak = sigma.to_matrix().mul(&null)?.frobenius_norm();
    Ok(leak <= cutoff * sigma.frobenius_norm().max(f64::MIN_POSITIVE))
}

/// Both directions of absolute continuity: `σ ≈ ρ`.
pub fn is_equivalent(sigma: &HermitianOperator, rho: &HermitianOperator, cutoff: f64) -> Result<bool> {
    Ok(is_abs_continuous(sigma, rho, cutoff)? && is_abs_continuous(rho, sigma, cutoff)?)
}

/// Default cutoff used by the measure-change constructors when deciding
/// absolute continuity.
pub const CONTINUITY_CUTOFF: f64 = 1e-9;

/// A sandwich map `X ↦ L X L†` with a materialized left factor.
///
/// Measure changes, their compositions, and the trace-transfer conjugation
/// are all of this shape; materializing the factor keeps compositions
/// comparable as operators.
#[derive(Debug, Clone)]
pub struct RnMap {
    left: ComplexMatrix,
}

impl RnMap {
    pub fn new(left: ComplexMatrix) -> Self {
        Self { left }
    }

    pub fn left_factor(&self) -> &ComplexMatrix {
        &self.left
    }

    pub fn apply(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        x.conjugate_with(&self.left)
    }

    /// Composition `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &RnMap) -> Result<RnMap> {
        Ok(RnMap {
            left: self.left.mul(&other.left)?,
        })
    }
}

/// The measure change `φ(σ, ρ)` between two density operators with `σ ≪ ρ`.
///
/// Spectral factors are computed once at construction, and the defining
/// identity `φ(σ, ρ)[ρ] = σ` is verified before the value is handed out.
#[derive(Debug, Clone)]
pub struct MeasureChange {
    sigma: HermitianOperator,
    rho: HermitianOperator,
    sigma_sqrt: HermitianOperator,
    rho_pinv_sqrt: HermitianOperator,
    map: RnMap,
}

impl MeasureChange {
    pub fn new(sigma: HermitianOperator, rho: HermitianOperator) -> Result<Self> {
        validate_density(&sigma)?;
        validate_density(&rho)?;
        if !is_abs_continuous(&sigma, &rho, CONTINUITY_CUTOFF)? {
            return Err(Error::Domain(
                "sigma is not absolutely continuous with respect to rho".into(),
            ));
        }
        let sigma_sqrt = sigma.op_sqrt()?;
        let rho_pinv_sqrt = rho.pinv_sqrt(default_support_cutoff(rho.max_abs_eigenvalue()?))?;
        let left = sigma_sqrt.to_matrix().mul(&rho_pinv_sqrt.to_matrix())?;
        let map = RnMap::new(left);
        let mc = Self {
            sigma,
            rho,
            sigma_sqrt,
            rho_pinv_sqrt,
            map,
        };
        let roundtrip = mc.apply(&mc.rho)?;
        let defect = roundtrip.sub(&mc.sigma)?.frobenius_norm();
        if defect > 1e-9 {
            return Err(Error::Numerical(format!(
                "measure change does not reproduce sigma from rho (defect {defect:.3e})"
            )));
        }
        Ok(mc)
    }

    pub fn sigma(&self) -> &HermitianOperator {
        &self.sigma
    }

    pub fn rho(&self) -> &HermitianOperator {
        &self.rho
    }

    pub fn sigma_sqrt(&self) -> &HermitianOperator {
        &self.sigma_sqrt
    }

    pub fn rho_pinv_sqrt(&self) -> &HermitianOperator {
        &self.rho_pinv_sqrt
    }

    /// The materialized sandwich map.
    pub fn as_map(&self) -> &RnMap {
        &self.map
    }

    /// `φ(σ, ρ)[X] = σ^{1/2} ρ^{−1/2} X ρ^{−1/2} σ^{1/2}`.
    pub fn apply(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        if x.dim() != self.rho.dim() {
            return Err(Error::Dimension(format!(
                "argument has dimension {} but the map acts on dimension {}",
                x.dim(),
                self.rho.dim()
            )));
        }
        self.map.apply(x)
    }

    /// Chain-rule composition: `self = φ(ρ, σ)` composed with
    /// `inner = φ(σ, τ)` yields the map `φ(ρ, τ)` as long as the continuity
    /// chain `ρ ≪ σ ≪ τ` holds. The middle operators must match.
    pub fn compose(&self, inner: &MeasureChange) -> Result<RnMap> {
        let mid_gap = self.rho.sub(inner.sigma())?.frobenius_norm();
        if mid_gap > 1e-9 {
            return Err(Error::Domain(format!(
                "composition chain broken: outer rho differs from inner sigma by {mid_gap:.3e}"
            )));
        }
        self.map.compose(&inner.map)
    }

    /// The inverse map `φ(ρ, σ)`, defined when `σ ≈ ρ`.
    pub fn inverse(&self) -> Result<MeasureChange> {
        if !is_equivalent(&self.sigma, &self.rho, CONTINUITY_CUTOFF)? {
            return Err(Error::Domain(
                "inverse requires equivalent density operators".into(),
            ));
        }
        MeasureChange::new(self.rho.clone(), self.sigma.clone())
    }
}

/// Moves a trace against `σ` to a trace against `ρ`:
/// returns `Y = ρ^{−1/2} σ^{1/2} X σ^{1/2} ρ^{−1/2}` together with the pair
/// `(tr{σX}, tr{ρY})`, which agree whenever `σ ≪ ρ`.
pub fn trace_transfer(
    sigma: &HermitianOperator,
    rho: &HermitianOperator,
    x: &HermitianOperator,
) -> Result<(HermitianOperator, (f64, f64))> {
    validate_density(sigma)?;
    validate_density(rho)?;
    if x.dim() != rho.dim() {
        return Err(Error::Dimension(format!(
            "argument has dimension {} but the densities have dimension {}",
            x.dim(),
            rho.dim()
        )));
    }
    if !is_abs_continuous(sigma, rho, CONTINUITY_CUTOFF)? {
        return Err(Error::Domain(
            "trace transfer requires sigma to be absolutely continuous w.r.t. rho".into(),
        ));
    }
    let sigma_sqrt = sigma.op_sqrt()?;
    let rho_pinv_sqrt = rho.pinv_sqrt(default_support_cutoff(rho.max_abs_eigenvalue()?))?;
    let left = rho_pinv_sqrt.to_matrix().mul(&sigma_sqrt.to_matrix())?;
    let y = RnMap::new(left).apply(x)?;
    let lhs = sigma.trace_inner(x)?;
    let rhs = rho.trace_inner(&y)?;
    Ok((y, (lhs, rhs)))
}
