//! Dense complex Hermitian linear algebra.
//!
//! Everything in this crate runs on small dense Hermitian matrices: assets,
//! density operators, payoffs, net gains. This module provides the carrier
//! type [`HermitianOperator`], a cyclic Jacobi eigensolver for complex
//! Hermitian matrices, spectral functions (square root, pseudo-inverse square
//! root, PSD projection), support projectors, and the Pauli parameterization
//! for the two-dimensional case.
//!
//! Hermiticity is enforced at construction: inputs that deviate from their
//! own adjoint by more than a small relative tolerance are rejected rather
//! than silently symmetrized, so malformed inputs surface loudly.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for spectral checks (reconstruction, PSD tests,
/// unit-trace validation).
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Relative Hermiticity tolerance accepted at construction.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Jacobi sweep budget.
const JACOBI_MAX_SWEEPS: usize = 50;

/// Jacobi convergence: off-diagonal Frobenius mass relative to the input norm.
const JACOBI_REL_TOL: f64 = 1e-14;

/// Relative support cutoff: eigenvalues below `SPECTRAL_TOL * max(1, λ_max)`
/// count as zero when deciding numeric rank.
pub fn default_support_cutoff(max_abs_eigenvalue: f64) -> f64 {
    SPECTRAL_TOL * max_abs_eigenvalue.abs().max(1.0)
}

// ---------------------------------------------------------------------------
// General complex matrices
// ---------------------------------------------------------------------------

/// Dense complex matrix in row-major order.
///
/// Used for eigenvector stacks, isometries, and non-Hermitian products of
/// Hermitian factors (e.g. `σ^{1/2} ρ^{-1/2}`).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m.data[j * n + j] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from column vectors (all of equal length).
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        if cols == 0 {
            return Err(Error::Dimension("no columns given".into()));
        }
        let rows = columns[0].len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("ragged column lengths".into()));
        }
        let mut m = Self::zeros(rows, cols);
        for (k, col) in columns.iter().enumerate() {
            for (j, v) in col.iter().enumerate() {
                m.data[j * cols + k] = *v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.rows).map(|j| self.entry(j, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for j in 0..self.rows {
            for k in 0..self.cols {
                m.data[k * self.rows + j] = self.entry(j, k).conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for j in 0..self.rows {
            for l in 0..self.cols {
                let a = self.entry(j, l);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..other.cols {
                    m.data[j * other.cols + k] += a * other.entry(l, k);
                }
            }
        }
        Ok(m)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for j in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..self.cols {
                acc += self.entry(j, k) * v[k];
            }
            out[j] = acc;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

// ---------------------------------------------------------------------------
// State vector helpers
// ---------------------------------------------------------------------------

/// Computational basis state `|j⟩`.
pub fn basis_state(dim: usize, j: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[j] = Complex64::new(1.0, 0.0);
    v
}

/// The `K = 2` state `(|0⟩ + |1⟩)/√2`.
pub fn plus_state() -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)]
}

/// The `K = 2` state `(|0⟩ − |1⟩)/√2`.
pub fn minus_state() -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)]
}

pub fn state_norm(psi: &[Complex64]) -> f64 {
    psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Rescales to unit norm. Errors on the zero vector.
pub fn normalize_state(psi: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = state_norm(psi);
    if n == 0.0 || !n.is_finite() {
        return Err(Error::Domain("cannot normalize a zero state".into()));
    }
    Ok(psi.iter().map(|z| z / n).collect())
}

// ---------------------------------------------------------------------------
// Hermitian operators
// ---------------------------------------------------------------------------

/// Dense complex Hermitian matrix.
///
/// The invariant `entries[j][k] == conj(entries[k][j])` holds exactly after
/// construction; diagonal entries are exactly real. Positive semidefiniteness
/// is *not* an invariant of this type — it is checked where required.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianOperator {
    /// Strict constructor: rejects non-finite entries and inputs whose
    /// Hermiticity deviation exceeds [`HERMITICITY_TOL`] relative to the
    /// input norm. Accepted inputs are canonicalized so the Hermitian
    /// symmetry holds bit-exactly.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("dimension must be at least 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        let norm: f64 = data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut dev_sqr = 0.0;
        for j in 0..dim {
            dev_sqr += data[j * dim + j].im.powi(2);
            for k in (j + 1)..dim {
                let d = data[j * dim + k] - data[k * dim + j].conj();
                // ‖(A − A†)/2‖ measured entrywise.
                dev_sqr += 0.5 * d.norm_sqr();
            }
        }
        let dev = dev_sqr.sqrt();
        if dev > HERMITICITY_TOL * (1.0 + norm) {
            return Err(Error::Domain(format!(
                "matrix is not Hermitian: deviation {dev:.3e} exceeds {:.3e}",
                HERMITICITY_TOL * (1.0 + norm)
            )));
        }
        Ok(Self::symmetrized(dim, data))
    }

    /// Canonicalizes a nearly Hermitian matrix without the strict deviation
    /// check. Internal numeric paths (spectral reassembly, sandwich products)
    /// use this; user input goes through [`HermitianOperator::new`].
    pub(crate) fn symmetrized(dim: usize, mut data: Vec<Complex64>) -> Self {
        for j in 0..dim {
            data[j * dim + j] = Complex64::new(data[j * dim + j].re, 0.0);
            for k in (j + 1)..dim {
                let avg = 0.5 * (data[j * dim + k] + data[k * dim + j].conj());
                data[j * dim + k] = avg;
                data[k * dim + j] = avg.conj();
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("matrix rows must be square".into()));
        }
        let data: Vec<Complex64> = rows.iter().flatten().copied().collect();
        Self::new(dim, data)
    }

    /// Builds from real entries (row-major); the input must be symmetric.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let data = entries
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect::<Vec<_>>();
        Self::new(dim, data)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            m.data[j * dim + j] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim);
        for (j, &x) in entries.iter().enumerate() {
            m.data[j * dim + j] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Rank-one projector `|j⟩⟨j|` onto a computational basis state.
    pub fn basis_projector(dim: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.data[j * dim + j] = Complex64::new(1.0, 0.0);
        m
    }

    /// Rank-one projector `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn pure_state(psi: &[Complex64]) -> Result<Self> {
        let dim = psi.len();
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr == 0.0 || !norm_sqr.is_finite() {
            return Err(Error::Domain("state must be nonzero and finite".into()));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for j in 0..dim {
            for k in 0..dim {
                data[j * dim + k] = psi[j] * psi[k].conj() / norm_sqr;
            }
        }
        Ok(Self::symmetrized(dim, data))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal_entries(&self) -> Vec<f64> {
        (0..self.dim).map(|j| self.entry(j, j).re).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|j| self.entry(j, j).re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.frobenius_norm() <= tol
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            data,
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "operator dimensions differ: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    /// Real trace inner product `Re tr{A B}`.
    ///
    /// For Hermitian `A`, `B` the trace is real; the sum below pairs the
    /// `(j,k)` and `(k,j)` contributions so no imaginary residue can build up.
    pub fn trace_inner(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut acc = 0.0;
        for j in 0..n {
            acc += self.entry(j, j).re * other.entry(j, j).re;
        }
        for j in 0..n {
            for k in (j + 1)..n {
                let a = self.entry(j, k);
                let b = other.entry(j, k);
                acc += 2.0 * (a.re * b.re + a.im * b.im);
            }
        }
        Ok(acc)
    }

    /// `A |ψ⟩`.
    pub fn apply_state(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        if psi.len() != self.dim {
            return Err(Error::Dimension(format!(
                "state of length {} against dimension {}",
                psi.len(),
                self.dim
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for j in 0..self.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..self.dim {
                acc += self.entry(j, k) * psi[k];
            }
            out[j] = acc;
        }
        Ok(out)
    }

    /// Quadratic form `⟨ψ|A|ψ⟩` (real for Hermitian `A`).
    pub fn expectation(&self, psi: &[Complex64]) -> Result<f64> {
        let ap = self.apply_state(psi)?;
        let mut acc = 0.0;
        for (p, q) in psi.iter().zip(&ap) {
            acc += p.re * q.re + p.im * q.im;
        }
        Ok(acc)
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.dim,
            cols: self.dim,
            data: self.data.clone(),
        }
    }

    /// Sandwich `M A M†`, which is Hermitian for Hermitian `A`.
    /// `M` may be rectangular (e.g. the adjoint of a support isometry).
    pub fn conjugate_with(&self, m: &ComplexMatrix) -> Result<Self> {
        if m.cols() != self.dim {
            return Err(Error::Dimension(format!(
                "sandwich factor has {} columns against dimension {}",
                m.cols(),
                self.dim
            )));
        }
        let ma = m.mul(&self.to_matrix())?;
        let mam = ma.mul(&m.adjoint())?;
        Ok(Self::symmetrized(mam.rows, mam.data))
    }

    pub fn eigh(&self) -> Result<Spectrum> {
        eigh(self)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigh()?.eigenvalues[0])
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(*self.eigh()?.eigenvalues.last().expect("dim >= 1"))
    }

    /// True iff the smallest eigenvalue is at least `-tol`.
    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        if tol < 0.0 {
            return Err(Error::Domain("tolerance must be nonnegative".into()));
        }
        Ok(self.min_eigenvalue()? >= -tol)
    }

    /// Projector onto the span of eigenvectors with eigenvalue above `cutoff`.
    ///
    /// Errors if the operator has an eigenvalue below `-cutoff` (the operator
    /// is expected to be PSD up to the cutoff).
    pub fn support_projector(&self, cutoff: f64) -> Result<SupportProjector> {
        let spectrum = self.eigh()?;
        if spectrum.eigenvalues[0] < -cutoff {
            return Err(Error::Domain(format!(
                "operator has negative eigenvalue {:.3e} beyond cutoff {:.3e}",
                spectrum.eigenvalues[0], cutoff
            )));
        }
        let mut rank = 0usize;
        let mut proj = Self::zeros(self.dim);
        for (idx, &lambda) in spectrum.eigenvalues.iter().enumerate() {
            if lambda > cutoff {
                rank += 1;
                let v = spectrum.vectors.column(idx);
                let vp = Self::pure_state(&v)?;
                proj = proj.add(&vp)?;
            }
        }
        Ok(SupportProjector {
            projector: proj,
            rank,
            cutoff,
        })
    }

    /// Support projector with the shared relative cutoff
    /// `SPECTRAL_TOL * max(1, λ_max)`.
    pub fn support_projector_default(&self) -> Result<SupportProjector> {
        let lam_max = self.max_abs_eigenvalue()?;
        self.support_projector(default_support_cutoff(lam_max))
    }

    pub fn max_abs_eigenvalue(&self) -> Result<f64> {
        let s = self.eigh()?;
        Ok(s.eigenvalues
            .iter()
            .fold(0.0f64, |acc, &l| acc.max(l.abs())))
    }

    /// Applies `f` to the eigenvalues in the eigenbasis: `U f(Λ) U†`.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let spectrum = self.eigh()?;
        Ok(spectrum.assemble_with(&f))
    }

    /// Operator square root of a PSD matrix. Eigenvalues within the default
    /// cutoff of zero are clamped to zero (the square root would amplify
    /// numerical nullspace noise); a genuinely negative eigenvalue is a
    /// domain error.
    pub fn op_sqrt(&self) -> Result<Self> {
        let spectrum = self.eigh()?;
        let cutoff = default_support_cutoff(spectrum.max_abs_eigenvalue());
        if spectrum.eigenvalues[0] < -cutoff {
            return Err(Error::Domain(format!(
                "square root of a non-PSD operator (min eigenvalue {:.3e})",
                spectrum.eigenvalues[0]
            )));
        }
        Ok(spectrum.assemble_with(|l| if l > cutoff { l.sqrt() } else { 0.0 }))
    }

    /// Pseudo-inverse square root: eigenvalue `λ > cutoff` maps to `λ^{-1/2}`,
    /// anything else to zero.
    pub fn pinv_sqrt(&self, cutoff: f64) -> Result<Self> {
        let spectrum = self.eigh()?;
        if spectrum.eigenvalues[0] < -cutoff {
            return Err(Error::Domain(format!(
                "pseudo-inverse square root of a non-PSD operator (min eigenvalue {:.3e})",
                spectrum.eigenvalues[0]
            )));
        }
        Ok(spectrum.assemble_with(|l| if l > cutoff { 1.0 / l.sqrt() } else { 0.0 }))
    }

    /// Pauli coefficients of a 2x2 Hermitian matrix.
    pub fn pauli_coefficients(&self) -> Result<PauliCoefficients> {
        if self.dim != 2 {
            return Err(Error::Dimension(format!(
                "Pauli decomposition requires dimension 2, got {}",
                self.dim
            )));
        }
        let d0 = self.entry(0, 0).re;
        let d1 = self.entry(1, 1).re;
        let off = self.entry(0, 1);
        Ok(PauliCoefficients {
            i: 0.5 * (d0 + d1),
            x: off.re,
            y: -off.im,
            z: 0.5 * (d0 - d1),
        })
    }
}

impl std::ops::Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator::add(self, rhs).expect("dimension mismatch in +")
    }
}

impl std::ops::Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator::sub(self, rhs).expect("dimension mismatch in -")
    }
}

impl std::ops::Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;
    fn mul(self, rhs: f64) -> HermitianOperator {
        self.scale(rhs)
    }
}

/// Real linear combination `Σ coeffs[i] · ops[i]`.
pub fn linear_combination(coeffs: &[f64], ops: &[HermitianOperator]) -> Result<HermitianOperator> {
    if coeffs.len() != ops.len() {
        return Err(Error::Dimension(format!(
            "{} coefficients against {} operators",
            coeffs.len(),
            ops.len()
        )));
    }
    if ops.is_empty() {
        return Err(Error::Dimension("empty linear combination".into()));
    }
    let dim = ops[0].dim();
    let mut acc = HermitianOperator::zeros(dim);
    for (c, op) in coeffs.iter().zip(ops) {
        acc = acc.add(&op.scale(*c))?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Pauli basis (K = 2)
// ---------------------------------------------------------------------------

/// Coefficients of `i·I + x·σ_x + y·σ_y + z·σ_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliCoefficients {
    pub i: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PauliCoefficients {
    pub fn new(i: f64, x: f64, y: f64, z: f64) -> Self {
        Self { i, x, y, z }
    }

    /// The 2x2 Hermitian matrix `i·I + x·σ_x + y·σ_y + z·σ_z`.
    pub fn to_operator(self) -> HermitianOperator {
        let data = vec![
            Complex64::new(self.i + self.z, 0.0),
            Complex64::new(self.x, -self.y),
            Complex64::new(self.x, self.y),
            Complex64::new(self.i - self.z, 0.0),
        ];
        HermitianOperator { dim: 2, data }
    }
}

pub fn sigma_x() -> HermitianOperator {
    PauliCoefficients::new(0.0, 1.0, 0.0, 0.0).to_operator()
}

pub fn sigma_y() -> HermitianOperator {
    PauliCoefficients::new(0.0, 0.0, 1.0, 0.0).to_operator()
}

pub fn sigma_z() -> HermitianOperator {
    PauliCoefficients::new(0.0, 0.0, 0.0, 1.0).to_operator()
}

// ---------------------------------------------------------------------------
// Spectral decomposition
// ---------------------------------------------------------------------------

/// Eigendecomposition `A = U Λ U†` with eigenvalues in ascending order and
/// orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0f64, |acc, &l| acc.max(l.abs()))
    }

    /// Reassembles `U f(Λ) U†`.
    pub fn assemble_with(&self, f: impl Fn(f64) -> f64) -> HermitianOperator {
        let n = self.dim();
        let u = &self.vectors;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for (idx, &lambda) in self.eigenvalues.iter().enumerate() {
            let fl = f(lambda);
            if fl == 0.0 {
                continue;
            }
            for j in 0..n {
                let uj = u.entry(j, idx);
                for k in 0..n {
                    data[j * n + k] += fl * uj * u.entry(k, idx).conj();
                }
            }
        }
        HermitianOperator::symmetrized(n, data)
    }

    /// `‖U Λ U† − A‖_F` against the given operator.
    pub fn reconstruction_error(&self, a: &HermitianOperator) -> f64 {
        self.assemble_with(|l| l).sub(a).map(|d| d.frobenius_norm()).unwrap_or(f64::INFINITY)
    }

    /// `‖U†U − I‖_F`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let gram = self.vectors.adjoint().mul(&self.vectors).expect("square");
        gram.sub(&ComplexMatrix::identity(n))
            .expect("square")
            .frobenius_norm()
    }
}

fn offdiag_frobenius(dim: usize, data: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    for j in 0..dim {
        for k in (j + 1)..dim {
            acc += data[j * dim + k].norm_sqr();
        }
    }
    (2.0 * acc).sqrt()
}

/// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi
/// rotations.
///
/// Each rotation zeroes one off-diagonal pair through a phased Givens
/// rotation; sweeps repeat until the off-diagonal Frobenius mass falls below
/// `1e-14 · ‖A‖_F` or the sweep budget (50) is exhausted.
pub fn eigh(a: &HermitianOperator) -> Result<Spectrum> {
    let n = a.dim;
    let mut m = a.data.clone();
    let mut u = ComplexMatrix::identity(n);

    let norm = a.frobenius_norm();
    let target = JACOBI_REL_TOL * norm;
    // Pivots this small cannot push the off-diagonal mass above the target.
    let skip = if norm > 0.0 {
        target / ((n * n) as f64 * 10.0)
    } else {
        0.0
    };

    let mut converged = offdiag_frobenius(n, &m) <= target;
    let mut sweeps = 0usize;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                let r = apq.norm();
                if r <= skip {
                    continue;
                }
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let phi = apq / r;
                let phibar = phi.conj();
                let tau = (app - aqq) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Columns: A ← A·R.
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp + s * phibar * akq;
                    m[k * n + q] = -s * akp + c * phibar * akq;
                }
                // Rows: A ← R†·A.
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk + phi * s * aqk;
                    m[q * n + k] = -s * apk + phi * c * aqk;
                }
                // The rotated block is known in closed form.
                m[p * n + p] = Complex64::new(app + t * r, 0.0);
                m[q * n + q] = Complex64::new(aqq - t * r, 0.0);
                m[p * n + q] = Complex64::new(0.0, 0.0);
                m[q * n + p] = Complex64::new(0.0, 0.0);

                // Accumulate U ← U·R.
                for k in 0..n {
                    let ukp = u.entry(k, p);
                    let ukq = u.entry(k, q);
                    u.set(k, p, c * ukp + s * phibar * ukq);
                    u.set(k, q, -s * ukp + c * phibar * ukq);
                }
            }
        }
        sweeps += 1;
        converged = offdiag_frobenius(n, &m) <= target;
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Jacobi eigensolver did not converge within {JACOBI_MAX_SWEEPS} sweeps \
             (off-diagonal mass {:.3e}, target {:.3e})",
            offdiag_frobenius(n, &m),
            target
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a_idx, &b_idx| {
        m[a_idx * n + a_idx]
            .re
            .partial_cmp(&m[b_idx * n + b_idx].re)
            .expect("finite eigenvalues")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&idx| m[idx * n + idx].re).collect();
    let columns: Vec<Vec<Complex64>> = order.iter().map(|&idx| u.column(idx)).collect();
    Ok(Spectrum {
        eigenvalues,
        vectors: ComplexMatrix::from_columns(&columns)?,
    })
}

// ---------------------------------------------------------------------------
// Support projectors
// ---------------------------------------------------------------------------

/// Projector onto the positive-eigenvalue subspace of a PSD operator.
#[derive(Debug, Clone)]
pub struct SupportProjector {
    pub projector: HermitianOperator,
    pub rank: usize,
    pub cutoff: f64,
}

impl SupportProjector {
    /// The complementary nullspace projector `I − Π₊`.
    pub fn null_projector(&self) -> HermitianOperator {
        &HermitianOperator::identity(self.projector.dim()) - &self.projector
    }
}
