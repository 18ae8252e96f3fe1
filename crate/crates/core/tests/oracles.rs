//! Frozen values from reference runs. A change here is a change in numerics.

use jackweight::cli::{commands, RunConfig};
use jackweight::odeflow::FlowConfig;
use jackweight::symgroup::build_irrep;
use jackweight::weightsolve::solve_h;

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn series_norms_at_base_point() {
    let cfg = RunConfig { kappa: 0.2, ..Default::default() };
    let out = commands::series(&cfg, std::f64::consts::PI, 4).unwrap();
    let frozen = [1.0, 0.28867513459481303, 1.0 / 28.0, 0.02220577958421639, 0.005462184873949581];
    assert!(close(&out.summary.alpha_norms, &frozen, 1e-12), "{:?}", out.summary.alpha_norms);
}

#[test]
fn h_spectrum_21() {
    let r = build_irrep(&"2,1".parse().unwrap()).unwrap();
    let cfg = FlowConfig::with_tol(1e-10);
    for (kappa, frozen) in [
        (0.1, [0.9634793995506521, 1.0378767207601385]),
        (0.25, [0.6998542122250048, 1.399708424450013]),
        (-0.25, [0.6998542122250047, 1.3997084244500133]),
    ] {
        let sol = solve_h(&r, kappa, &cfg).unwrap();
        assert!(close(&sol.positivity, &frozen, 1e-8), "{kappa}: {:?}", sol.positivity);
    }
}

#[test]
fn degree_zero_gram_weights() {
    let cfg = RunConfig { kappa: 0.25, points: 32, degree_cap: 0, ..Default::default() };
    let g = commands::gram(&cfg).unwrap();
    assert!(close(&g.diagonal, &[1.0, 0.75], 1e-8), "{:?}", g.diagonal);
}
