mod common;

use qap::arbitrage::ftqap_round_trip;
use qap::market::ArbitrageSemantics;
use qap::solver::SolverConfig;
use rand::Rng;

#[test]
#[ignore]
fn probe_round_trip_timing() {
    let cfg = SolverConfig::default();
    let mut r = common::rng(7);
    let start = std::time::Instant::now();
    let mut arb = 0usize;
    let mut free = 0usize;
    for i in 0..100 {
        let dim = r.gen_range(2..=4);
        let d = r.gen_range(1..=3);
        let m = common::random_market(&mut r, dim, d, true, ArbitrageSemantics::full_trace());
        let rt = ftqap_round_trip(&m, &cfg).expect("round trip");
        assert!(rt.exactly_one, "model {i}: not exactly one certificate");
        if rt.arbitrage_found {
            arb += 1;
        } else {
            free += 1;
        }
    }
    println!(
        "100 models in {:?} ({arb} arbitrage, {free} arbitrage-free)",
        start.elapsed()
    );
}
