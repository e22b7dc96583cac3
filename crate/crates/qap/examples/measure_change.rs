//! The density-operator Radon–Nikodym derivative.
//!
//! φ(σ, ρ)[X] = σ^{1/2} ρ^{−1/2} X ρ^{−1/2} σ^{1/2} changes the measure
//! from ρ to σ whenever σ ≪ ρ: applied to ρ it returns σ, it chains like
//! the classical derivative, inverts on equivalent pairs, and transfers
//! traces between the two operators.
//!
//! Run with: cargo run -p qap --example measure_change

use qap::hermitian::{sigma_x, sigma_z, HermitianOperator};
use qap::measure::{is_abs_continuous, is_equivalent, trace_transfer, MeasureChange};

fn show(label: &str, op: &HermitianOperator) {
    println!("{label} =");
    for j in 0..op.dim() {
        print!("   ");
        for k in 0..op.dim() {
            let z = op.entry(j, k);
            print!(" {:+.4}{:+.4}i", z.re, z.im);
        }
        println!();
    }
}

fn main() -> qap::Result<()> {
    let rho = HermitianOperator::diagonal(&[0.5, 0.5]);
    let sigma = HermitianOperator::diagonal(&[0.25, 0.75]);
    println!(
        "sigma << rho: {}, equivalent: {}\n",
        is_abs_continuous(&sigma, &rho, 1e-9)?,
        is_equivalent(&sigma, &rho, 1e-9)?
    );

    let mc = MeasureChange::new(sigma.clone(), rho.clone())?;
    show("phi(sigma, rho)[rho]  (recovers sigma)", &mc.apply(&rho)?);
    show("phi(sigma, rho)[sigma_z]", &mc.apply(&sigma_z())?);

    // Chain rule: phi(rho', sigma) after phi(sigma, tau) equals the direct
    // map phi(rho', tau).
    let tau = HermitianOperator::diagonal(&[0.5, 0.5]);
    let mid = HermitianOperator::diagonal(&[0.25, 0.75]);
    let target = HermitianOperator::diagonal(&[0.1, 0.9]);
    let outer = MeasureChange::new(target.clone(), mid.clone())?;
    let inner = MeasureChange::new(mid, tau.clone())?;
    let chained = outer.compose(&inner)?;
    let defect = chained
        .apply(&tau)?
        .sub(&target)?
        .frobenius_norm();
    println!("\nchain rule defect |phi(target,mid)∘phi(mid,tau)[tau] − target| = {defect:.2e}");

    // Inverse on an equivalent pair: the round trip is the support
    // compression, here the identity.
    let inv = mc.inverse()?;
    let round = inv.as_map().compose(mc.as_map())?;
    let x = sigma_x();
    let defect = round.apply(&x)?.sub(&x)?.frobenius_norm();
    println!("inverse round-trip defect on sigma_x = {defect:.2e}");

    // Trace transfer: tr{sigma X} = tr{rho Y}.
    let x = HermitianOperator::diagonal(&[1.0, 2.0]);
    let (y, (lhs, rhs)) = trace_transfer(&sigma, &rho, &x)?;
    println!("\ntrace transfer: tr(sigma X) = {lhs:.6}, tr(rho Y) = {rhs:.6}");
    show("with Y", &y);
    Ok(())
}
