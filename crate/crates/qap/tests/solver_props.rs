//! Solver invariants: projection geometry, feasibility verdicts against
//! independent residual checks and grid oracles, and the weak-duality guard
//! between the arbitrage and risk-neutral problems.

mod common;

use rand::Rng;

use qap::hermitian::{sigma_x, HermitianOperator};
use qap::market::ArbitrageSemantics;
use qap::solver::{
    feasibility, max_min_eigen, project_psd, AffineSpectralProblem, SolverConfig, SolverStatus,
};

#[test]
fn project_psd_is_idempotent_and_nonexpansive() {
    let mut r = common::rng(61);
    for _ in 0..300 {
        let dim = r.gen_range(2..=6);
        let a = common::random_hermitian(&mut r, dim, 2.0);
        let b = common::random_hermitian(&mut r, dim, 2.0);
        let pa = project_psd(&a).expect("projection");
        let pb = project_psd(&b).expect("projection");
        // Idempotent.
        let paa = project_psd(&pa).expect("projection");
        assert!(paa.sub(&pa).expect("dims").is_zero(1e-9 * (1.0 + pa.frobenius_norm())));
        // Nonexpansive in the Frobenius metric.
        let before = a.sub(&b).expect("dims").frobenius_norm();
        let after = pa.sub(&pb).expect("dims").frobenius_norm();
        assert!(after <= before + 1e-9, "{after} > {before}");
        // Result is PSD and closest among sampled PSD candidates.
        assert!(pa.is_psd(1e-9 * (1.0 + pa.frobenius_norm())).expect("eigh"));
    }
}

/// Closed-form smallest eigenvalue of a 2x2 Hermitian matrix, used as an
/// oracle independent of the Jacobi path.
fn min_eig_2x2(m: &HermitianOperator) -> f64 {
    let a = m.entry(0, 0).re;
    let d = m.entry(1, 1).re;
    let off = m.entry(0, 1);
    0.5 * (a + d) - (0.25 * (a - d).powi(2) + off.norm_sqr()).sqrt()
}

#[test]
fn feasibility_verdicts_survive_independent_checks() {
    let cfg = SolverConfig::default();
    let mut r = common::rng(62);
    let mut feasible_count = 0usize;
    let mut crosschecked = 0usize;
    for trial in 0..500 {
        let dim = r.gen_range(2..=4);
        let n_basis = r.gen_range(1..=3);
        let basis: Vec<HermitianOperator> = (0..n_basis)
            .map(|_| {
                if r.gen_bool(0.3) {
                    // PSD directions make feasible instances common.
                    common::random_psd(&mut r, dim)
                } else {
                    common::random_hermitian(&mut r, dim, 1.0)
                }
            })
            .collect();
        let problem = AffineSpectralProblem::in_span(
            dim,
            basis.clone(),
            vec![(HermitianOperator::identity(dim), 1.0)],
        );
        let out = match feasibility(&problem, &cfg) {
            Ok(out) => out,
            Err(qap::Error::IterationLimit(_)) => continue,
            Err(e) => panic!("trial {trial}: {e}"),
        };
        match out.status {
            SolverStatus::Feasible => {
                feasible_count += 1;
                let x = out.point.expect("point");
                // Independent residual checks of the returned point.
                assert!(
                    x.min_eigenvalue().expect("eigh") >= -cfg.feas_tol,
                    "trial {trial}: point not PSD"
                );
                assert!((x.trace() - 1.0).abs() <= 2.0 * cfg.feas_tol);
                let coords = out.coordinates.expect("span coordinates");
                let rebuilt = qap::hermitian::linear_combination(&coords, &basis).expect("span");
                assert!(
                    rebuilt.sub(&x).expect("dims").frobenius_norm() <= 10.0 * cfg.feas_tol,
                    "trial {trial}: point leaves the span"
                );
            }
            SolverStatus::Infeasible => {
                // Cross-check a sample of the small verdicts by dense grid
                // search over the coordinate box.
                if dim == 2 && n_basis <= 2 && crosschecked < 12 {
                    crosschecked += 1;
                    let scale: f64 = basis.iter().map(|b| b.frobenius_norm()).sum::<f64>() + 1.0;
                    let mut found = false;
                    let steps = 2001i64;
                    'outer: for i in 0..steps {
                        let xi0 = -1.0 + 2.0 * i as f64 / (steps - 1) as f64;
                        let inner_range = if n_basis == 2 { steps } else { 1 };
                        for j in 0..inner_range {
                            let xi1 = -1.0 + 2.0 * j as f64 / (steps - 1) as f64;
                            let mut cand = basis[0].scale(xi0);
                            if n_basis == 2 {
                                cand = cand.add(&basis[1].scale(xi1)).expect("dims");
                            }
                            if cand.trace() >= 0.5 && min_eig_2x2(&cand) >= 1e-6 * scale {
                                found = true;
                                break 'outer;
                            }
                        }
                    }
                    assert!(
                        !found,
                        "trial {trial}: grid found a PSD point the solver called infeasible"
                    );
                }
            }
            SolverStatus::ObjectiveValue(_) => unreachable!("feasibility has no objective"),
        }
    }
    assert!(feasible_count > 50, "only {feasible_count} feasible instances");
    assert!(crosschecked > 0, "no infeasible verdict was cross-checked");
}

#[test]
fn max_min_eigen_matches_closed_forms() {
    let cfg = SolverConfig::default();
    // Balanced constraint: optimum ½I with value 0.5.
    let p1 = AffineSpectralProblem::on_full_space(
        2,
        vec![
            (HermitianOperator::identity(2), 1.0),
            (HermitianOperator::diagonal(&[-0.5, 0.5]), 0.0),
        ],
    );
    let out1 = max_min_eigen(&p1, &cfg).expect("solve");
    let SolverStatus::ObjectiveValue(t1) = out1.status else { panic!() };
    assert!((t1 - 0.5).abs() <= 1e-6);

    // A coherent constraint tr(X σ_x) = 0.6 forces the Bloch vector out to
    // x = 0.6, so the best minimum eigenvalue is (1 − 0.6)/2 = 0.2.
    let p2 = AffineSpectralProblem::on_full_space(
        2,
        vec![
            (HermitianOperator::identity(2), 1.0),
            (sigma_x(), 0.6),
        ],
    );
    let out2 = max_min_eigen(&p2, &cfg).expect("solve");
    let SolverStatus::ObjectiveValue(t2) = out2.status else { panic!() };
    assert!((t2 - 0.2).abs() <= 1e-6, "t2 = {t2}");

    // Unconstrained beyond trace: maximally mixed.
    for dim in 2..=4 {
        let p = AffineSpectralProblem::on_full_space(
            dim,
            vec![(HermitianOperator::identity(dim), 1.0)],
        );
        let out = max_min_eigen(&p, &cfg).expect("solve");
        let SolverStatus::ObjectiveValue(t) = out.status else { panic!() };
        assert!((t - 1.0 / dim as f64).abs() <= 1e-9);
    }
}

/// The two sides of the alternative may never both certify: a strictly
/// positive risk-neutral optimum forbids a feasible arbitrage point, and
/// conversely.
#[test]
fn weak_duality_guard() {
    let cfg = SolverConfig::default();
    let mut r = common::rng(63);
    for trial in 0..150 {
        let dim = 2;
        let d = r.gen_range(1..=2);
        let m = common::random_market(&mut r, dim, d, true, ArbitrageSemantics::full_trace());
        let gains = m.discounted_net_gains();

        let arb_problem = AffineSpectralProblem::in_span(
            dim,
            gains.clone(),
            vec![(HermitianOperator::identity(dim), 1.0)],
        );
        let arb = match feasibility(&arb_problem, &cfg) {
            Ok(out) => out.status == SolverStatus::Feasible,
            Err(qap::Error::IterationLimit(_)) => continue,
            Err(e) => panic!("trial {trial}: {e}"),
        };

        let mut constraints = vec![(HermitianOperator::identity(dim), 1.0)];
        for y in &gains {
            constraints.push((y.clone(), 0.0));
        }
        let rnd_problem = AffineSpectralProblem::on_full_space(dim, constraints);
        let rnd_positive = match max_min_eigen(&rnd_problem, &cfg) {
            Ok(out) => match out.status {
                SolverStatus::ObjectiveValue(t) => t > cfg.feas_tol,
                _ => false,
            },
            Err(qap::Error::InfeasibleAffine(_)) => false,
            Err(e) => panic!("trial {trial}: {e}"),
        };

        assert!(
            !(arb && rnd_positive),
            "trial {trial}: both an arbitrage point and a strictly positive \
             risk-neutral operator were certified"
        );
    }
}
