//! Bundled demonstration fixtures.
//!
//! Each fixture is a small two-level market exercising one regime of the
//! theory: classical/quantum agreement, arbitrage restricted to a state
//! subset, the coherence threshold between arbitrage and no-arbitrage,
//! risk-neutral verification, derivative pricing, and the support-divergence
//! regime of rank-deficient market operators.

use crate::error::{Error, Result};
use crate::scenario::{
    AssetSpec, Condition2Name, DerivativeSpec, HhatName, OperatorSpec, PauliSpec, ScenarioFile,
    SemanticsSpec,
};

/// A named fixture: the scenario, an optional candidate risk-neutral
/// operator to verify against, and a human description.
pub struct DemoScenario {
    pub name: &'static str,
    pub description: String,
    pub scenario: ScenarioFile,
    /// A hand-picked candidate `ρ*` for verification demos.
    pub candidate_rho_star: Option<OperatorSpec>,
}

pub const DEMO_NAMES: [&str; 6] = [
    "example1",
    "example2",
    "example3",
    "risk-neutral",
    "pricing",
    "divergence",
];

fn band_asset(a: f64, b: f64, q: f64, price: f64) -> AssetSpec {
    AssetSpec {
        name: Some("S".to_string()),
        price,
        matrix: None,
        pauli: Some(PauliSpec {
            i: 0.5 * (a + b),
            x: q,
            y: 0.0,
            z: 0.5 * (a - b),
        }),
    }
}

fn coherent_rho(delta: f64) -> OperatorSpec {
    OperatorSpec {
        matrix: None,
        pauli: Some(PauliSpec {
            i: 0.5,
            x: 0.5 * delta,
            y: 0.0,
            z: 0.0,
        }),
    }
}

fn scenario(
    rate: f64,
    assets: Vec<AssetSpec>,
    rho: OperatorSpec,
    semantics: SemanticsSpec,
) -> ScenarioFile {
    ScenarioFile {
        dim: 2,
        rate,
        riskless_price: 1.0,
        assets,
        rho,
        semantics,
        derivative: None,
        quote: None,
        tolerances: None,
    }
}

/// Builds a demo fixture by name. `q` and `delta` override the coherence
/// parameters where the fixture has them free.
pub fn demo(name: &str, q: Option<f64>, delta: Option<f64>) -> Result<DemoScenario> {
    match name {
        "example1" => {
            let q = q.unwrap_or(0.4);
            let delta = delta.unwrap_or(0.5);
            Ok(DemoScenario {
                name: "example1",
                description: format!(
                    "Two-outcome asset paying a=1 or b=2 at price 1.5 (between the discounted \
                     payoffs), rho = (I + {delta}*sigma_x)/2, q = {q}. Arbitrage-free both \
                     classically and quantumly: event omega_1 loses against the riskless asset."
                ),
                scenario: scenario(
                    0.0,
                    vec![band_asset(1.0, 2.0, q, 1.5)],
                    coherent_rho(delta),
                    SemanticsSpec::default(),
                ),
                candidate_rho_star: None,
            })
        }
        "example2" => {
            let q = q.unwrap_or(0.5);
            let delta = delta.unwrap_or(0.5);
            Ok(DemoScenario {
                name: "example2",
                description: format!(
                    "Degenerate asset a=b=1 at price 1 with coherence q = {q}. Over the full \
                     state space there is no arbitrage, but restricting the allowable states to \
                     |psi_+|^2 >= |psi_-|^2 makes the portfolio (-1, 1) an arbitrage for q > 0; \
                     checked by direct state-payoff evaluation at |+> and |->."
                ),
                scenario: scenario(
                    0.0,
                    vec![band_asset(1.0, 1.0, q, 1.0)],
                    coherent_rho(delta),
                    SemanticsSpec::default(),
                ),
                candidate_rho_star: None,
            })
        }
        "example3" => {
            let q = q.unwrap_or(0.2);
            let delta = delta.unwrap_or(0.5);
            Ok(DemoScenario {
                name: "example3",
                description: format!(
                    "Cheap dominating asset: a=1.5, b=2 at price 1, q = {q}. Classically always \
                     an arbitrage; quantumly only while |q| < sqrt(0.5) ~ 0.7071 keeps \
                     S - (1+r)*I positive semidefinite."
                ),
                scenario: scenario(
                    0.0,
                    vec![band_asset(1.5, 2.0, q, 1.0)],
                    coherent_rho(delta),
                    SemanticsSpec::default(),
                ),
                candidate_rho_star: None,
            })
        }
        "risk-neutral" => {
            let q = q.unwrap_or(0.4);
            let delta = delta.unwrap_or(0.3);
            Ok(DemoScenario {
                name: "risk-neutral",
                description: format!(
                    "Verification fixture: candidate rho* = diag(p, 1-p) + {delta}*sigma_x with \
                     p = 0.5 prices the band asset (a=1, b=2, price 1.5, q = {q}) with residual \
                     2*q*delta/(1+r) = {:.6}; the residual vanishes iff q = 0 or delta = 0.",
                    2.0 * q * delta
                ),
                scenario: scenario(
                    0.0,
                    vec![band_asset(1.0, 2.0, q, 1.5)],
                    coherent_rho(0.5),
                    SemanticsSpec::default(),
                ),
                candidate_rho_star: Some(OperatorSpec {
                    matrix: None,
                    pauli: Some(PauliSpec {
                        i: 0.5,
                        x: delta,
                        y: 0.0,
                        z: 0.0,
                    }),
                }),
            })
        }
        "pricing" => {
            // a=1, b=2, r=0, q=0.8, eta=0.2: pi0 = 1.5, asset price 1.9,
            // rho* = I/2 + 0.25*sigma_x, derivative "half as quantum".
            let mut sc = scenario(
                0.0,
                vec![band_asset(1.0, 2.0, 0.8, 1.9)],
                coherent_rho(0.5),
                SemanticsSpec::default(),
            );
            sc.derivative = Some(DerivativeSpec {
                name: Some("V".to_string()),
                matrix: None,
                pauli: Some(PauliSpec {
                    i: 1.5,
                    x: 0.4,
                    y: 0.0,
                    z: -0.5,
                }),
            });
            sc.quote = Some(1.7);
            Ok(DemoScenario {
                name: "pricing",
                description: "Coherence-adjusted pricing: the band asset (a=1, b=2, q=0.8) \
                     trades at 1.9 = 1.5 + 2*eta with eta = 0.2; rho* = I/2 + 0.25*sigma_x is \
                     risk-neutral and prices the half-as-quantum derivative V (q/2 = 0.4) at \
                     1.7 = 1.5 + eta."
                    .to_string(),
                scenario: sc,
                candidate_rho_star: Some(OperatorSpec {
                    matrix: None,
                    pauli: Some(PauliSpec {
                        i: 0.5,
                        x: 0.25,
                        y: 0.0,
                        z: 0.0,
                    }),
                }),
            })
        }
        "divergence" => {
            let mut sc = scenario(
                0.0,
                vec![AssetSpec {
                    name: Some("S".to_string()),
                    price: 1.0,
                    matrix: Some(vec![
                        vec![[2.0, 0.0], [1.0, 0.0]],
                        vec![[1.0, 0.0], [1.0, 0.0]],
                    ]),
                    pauli: None,
                }],
                OperatorSpec {
                    matrix: Some(vec![
                        vec![[1.0, 0.0], [0.0, 0.0]],
                        vec![[0.0, 0.0], [0.0, 0.0]],
                    ]),
                    pauli: None,
                },
                SemanticsSpec::default(),
            );
            sc.semantics = SemanticsSpec {
                hhat: HhatName::Full,
                condition2: Condition2Name::Trace,
            };
            Ok(DemoScenario {
                name: "divergence",
                description: "Rank-deficient rho = |0><0| with net gain Y = [[1,1],[1,0]]: no \
                     portfolio makes xi*Y globally PSD, so full-mode detection reports \
                     arbitrage-free, yet no risk-neutral operator with the same support exists \
                     (the compressed constraint reads 1 = 0). Support-restricted semantics sees \
                     the compressed gain 1 > 0 and reports arbitrage."
                    .to_string(),
                scenario: sc,
                candidate_rho_star: None,
            })
        }
        other => Err(Error::Scenario(format!(
            "unknown demo `{other}`; available: {}",
            DEMO_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_demos_build() {
        for name in DEMO_NAMES {
            let d = demo(name, None, None).unwrap();
            let bundle = d.scenario.build().unwrap();
            assert_eq!(bundle.market.dim(), 2, "demo {name}");
        }
    }

    #[test]
    fn unknown_demo_is_rejected() {
        assert!(demo("nope", None, None).is_err());
    }

    #[test]
    fn demo_parameters_apply() {
        let d = demo("example3", Some(0.9), None).unwrap();
        let bundle = d.scenario.build().unwrap();
        let s = bundle.market.price_system().risky_assets()[0].payoff();
        assert!((s.entry(0, 1).re - 0.9).abs() < 1e-15);
    }
}
