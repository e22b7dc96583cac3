//! Seeded generators shared by the integration suites.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qap::hermitian::{ComplexMatrix, HermitianOperator};
use qap::market::{ArbitrageSemantics, MarketModel, Portfolio, PriceSystem, QuantumAsset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

/// Random Hermitian matrix with entries of order `scale`.
pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> HermitianOperator {
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        data[j * dim + j] = Complex64::new(rng.gen_range(-scale..scale), 0.0);
        for k in (j + 1)..dim {
            let z = random_complex(rng, scale);
            data[j * dim + k] = z;
            data[k * dim + j] = z.conj();
        }
    }
    HermitianOperator::new(dim, data).expect("constructed Hermitian")
}

/// Random PSD matrix `G†G` with spectral scale of order one.
pub fn random_psd(rng: &mut ChaCha8Rng, dim: usize) -> HermitianOperator {
    let mut g = ComplexMatrix::zeros(dim, dim);
    for j in 0..dim {
        for k in 0..dim {
            g.set(j, k, random_complex(rng, 1.0));
        }
    }
    let prod = g.adjoint().mul(&g).expect("square product");
    let mut data = Vec::with_capacity(dim * dim);
    for j in 0..dim {
        for k in 0..dim {
            data.push(prod.entry(j, k));
        }
    }
    let raw = HermitianOperator::new(dim, data).expect("gram matrix is Hermitian");
    raw.scale(1.0 / dim as f64)
}

/// Random full-rank density operator with a bounded condition number.
pub fn random_density_full_rank(rng: &mut ChaCha8Rng, dim: usize) -> HermitianOperator {
    let w = random_psd(rng, dim);
    let floored = &w + &HermitianOperator::identity(dim).scale(0.25 * w.trace() / dim as f64 + 0.05);
    floored.scale(1.0 / floored.trace())
}

/// Random rank-`rank` density operator with a clean spectral gap: the
/// nonzero eigenvalues stay above 0.05 after normalization.
pub fn random_density_rank(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> HermitianOperator {
    assert!(rank >= 1 && rank <= dim);
    let h = random_hermitian(rng, dim, 1.0);
    let spectrum = h.eigh().expect("eigh");
    let mut acc = HermitianOperator::zeros(dim);
    let mut weights = Vec::with_capacity(rank);
    let mut total = 0.0;
    for _ in 0..rank {
        let w = rng.gen_range(0.2..1.0);
        weights.push(w);
        total += w;
    }
    for (idx, w) in weights.iter().enumerate() {
        let v = spectrum.vectors.column(idx);
        let proj = HermitianOperator::pure_state(&v).expect("unit eigenvector");
        acc = acc.add(&proj.scale(w / total)).expect("same dim");
    }
    acc
}

pub fn random_unit_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| random_complex(rng, 1.0)).collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Random market: PSD assets, prices scattered around the discounted
/// expectation under an unrelated density operator, so both verdicts occur.
pub fn random_market(
    rng: &mut ChaCha8Rng,
    dim: usize,
    num_assets: usize,
    full_rank: bool,
    semantics: ArbitrageSemantics,
) -> MarketModel {
    let rho = if full_rank {
        random_density_full_rank(rng, dim)
    } else {
        let rank = rng.gen_range(1..=dim);
        random_density_rank(rng, dim, rank)
    };
    let pricing_density = random_density_full_rank(rng, dim);
    let rate = rng.gen_range(-0.05..0.25);
    let mut prices = Vec::with_capacity(num_assets);
    let mut assets = Vec::with_capacity(num_assets);
    for idx in 0..num_assets {
        let payoff = &random_psd(rng, dim) + &HermitianOperator::identity(dim).scale(0.05);
        let fair = pricing_density
            .trace_inner(&payoff)
            .expect("matching dims")
            / (1.0 + rate);
        prices.push(fair * rng.gen_range(0.75..1.25));
        assets.push(QuantumAsset::new(format!("S{}", idx + 1), payoff).expect("psd payoff"));
    }
    let ps = PriceSystem::new(1.0, rate, prices, assets).expect("valid price system");
    MarketModel::new(ps, rho, semantics).expect("valid market")
}

pub fn random_portfolio(rng: &mut ChaCha8Rng, num_assets: usize) -> Portfolio {
    let xi0 = rng.gen_range(-1.0..1.0);
    let xi = (0..num_assets).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Portfolio::new(xi0, xi).expect("finite portfolio")
}

pub fn assert_close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}
