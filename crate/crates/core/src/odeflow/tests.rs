use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use super::*;
use crate::linalg::{c, dist, identity, op_norm, CMat};
use crate::symgroup::{build_irrep, IrrepData, Perm};

fn irrep(s: &str) -> IrrepData {
    build_irrep(&s.parse().unwrap()).unwrap()
}

fn cfg() -> FlowConfig {
    FlowConfig::with_tol(1e-11)
}

#[test]
fn constant_path_returns_init() {
    let r = irrep("2,1");
    let x = TorusPoint::base(3);
    let p = AnglePath::new(x.unwrapped(), x.unwrapped());
    let init = r.upsilon().clone();
    let out = integrate_l(&r, 0.25, &p, &init, &cfg()).unwrap();
    assert!(dist(&out.value, &init) < 1e-14);
}

#[test]
fn flow_suite_passes_for_21() {
    let r = irrep("2,1");
    for kappa in [0.1, -0.25] {
        for line in flow_invariants(&r, kappa, 3, &cfg()).unwrap() {
            assert!(line.pass, "kappa={kappa}: {line:?}");
        }
    }
}

#[test]
fn flow_suite_passes_for_31() {
    let r = irrep("3,1");
    for line in flow_invariants(&r, 0.15, 5, &cfg()).unwrap() {
        assert!(line.pass, "{line:?}");
    }
}

#[test]
fn det_ode_matches_closed_form_nontrivial_lambda() {
    // τ = (3,1) has Λ = 1, so the determinant genuinely varies
    let r = irrep("3,1");
    assert!((r.lambda_trace - 1.0).abs() < 1e-12);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    for _ in 0..4 {
        let x = TorusPoint::random_in_c0(4, 0.2, &mut rng);
        let path = AnglePath::from_base(&x);
        let d_ode = det_ode(&r, 0.2, &path, &cfg()).unwrap();
        let d = det_closed_form(&r, 0.2, &x.unwrapped());
        assert!((d_ode - c(d)).norm() < 1e-9 * d);
    }
}

#[test]
fn det_is_one_when_trace_vanishes() {
    let r = irrep("2,1");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let x = TorusPoint::random_in_c0(3, 0.1, &mut rng);
        let l = l_in_c0(&r, 0.25, &x, &cfg()).unwrap().value;
        assert!((l.determinant() - c(1.0)).norm() < 1e-8);
    }
}

#[test]
fn lstar_is_adjoint_at_twenty_points() {
    let r = irrep("2,1");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let x = TorusPoint::random_in_c0(3, 0.05, &mut rng);
        let p = AnglePath::from_base(&x);
        let l = integrate_l(&r, 0.2, &p, &identity(2), &cfg()).unwrap().value;
        let ls = integrate_lstar(&r, 0.2, &p, &identity(2), &cfg()).unwrap().value;
        assert!(dist(&ls, &l.adjoint()) < 1e-8);
    }
}

#[test]
fn monodromy_cocycle() {
    let r = irrep("3,1");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let x = TorusPoint::random(4, &mut rng);
        let w1 = Perm::random(4, &mut rng);
        let w2 = Perm::random(4, &mut rng);
        let lhs = monodromy_factor(&r, &(&w1 * &w2), &x);
        let rhs = monodromy_factor(&r, &w2, &x.permute(&w1)) * monodromy_factor(&r, &w1, &x);
        assert!(dist(&lhs, &rhs) < 1e-12);
        let inv = monodromy_factor(&r, &w1.inverse(), &x.permute(&w1));
        assert!(dist(&(inv * monodromy_factor(&r, &w1, &x)), &identity(3)) < 1e-12);
        assert_eq!(monodromy_exponent(&(&w1 * &w2), &x), {
            (monodromy_exponent(&w2, &x.permute(&w1)) + monodromy_exponent(&w1, &x)) % 4
        });
    }
    let x = TorusPoint::base(4);
    assert!(dist(&monodromy_factor(&r, &Perm::identity(4), &x), &identity(3)) < 1e-15);
    let w0 = Perm::long_cycle(4);
    for m in 0..4 {
        let w = Perm::random(4, &mut rng);
        let lhs = nu(&r, &(&w0.pow(m) * &w));
        let rhs = r.upsilon_pow(-m) * nu(&r, &w);
        assert!(dist(&lhs, &rhs) < 1e-12);
    }
}

#[test]
fn adjacent_transposition_extension() {
    let r = irrep("2,1");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let x = TorusPoint::random_in_c0(3, 0.2, &mut rng);
    let s = Perm::transposition(3, 1, 2);
    let lhs = extend_l(&r, 0.1, &x.permute(&s), &cfg()).unwrap();
    let rhs = extend_l(&r, 0.1, &x, &cfg()).unwrap() * r.sigma();
    assert!(dist(&lhs, &rhs) < 1e-12);
}

#[test]
fn kdieq_finite_differences() {
    let r = irrep("2,1");
    let kappa = 0.2;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let x = TorusPoint::random_in_c0(3, 0.4, &mut rng);
    let xs = x.coords();
    let h_mat = CMat::from_fn(2, 2, |i, j| if i == j { c(2.0 + i as f64) } else { Complex64::new(0.3, 0.1 * (i as f64 - j as f64)) });
    let tight = FlowConfig::with_tol(1e-13);
    let lx = l_in_c0(&r, kappa, &x, &tight).unwrap().value;
    let lsx = lx.adjoint();
    let k_at = |y: &[Complex64]| -> crate::Result<CMat> {
        let p = LinePath::new(xs.clone(), y.to_vec());
        let l = integrate_l(&r, kappa, &p, &lx, &tight)?.value;
        let ls = integrate_lstar(&r, kappa, &p, &lsx, &tight)?.value;
        Ok(ls * &h_mat * l)
    };
    let r1 = kdieq_residual(&r, kappa, &k_at, &xs, 1, 1e-3).unwrap();
    let r2 = kdieq_residual(&r, kappa, &k_at, &xs, 1, 5e-4).unwrap();
    assert!(r1 < 1e-4 && r2 < r1 / 3.0, "{r1} {r2}");
}

#[test]
fn global_bound_holds() {
    let r = irrep("2,1");
    let kappa = 0.25;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    let mut samples = vec![TorusPoint::base(3)];
    for _ in 0..8 {
        samples.push(TorusPoint::random(3, &mut rng));
    }
    let rep = global_bound_check(&r, kappa, &samples, &cfg()).unwrap();
    let at_base = distance_product(&samples[0], kappa);
    assert!((rep.samples[0].ratio - at_base).abs() < 1e-9);
    for s in &rep.samples {
        assert!(s.norm <= s.gronwall * (1.0 + 1e-8), "{s:?}");
        assert!(s.gronwall <= s.closed_form * (1.0 + 1e-8), "{s:?}");
    }
    assert!(rep.max_ratio.is_finite());
}

#[test]
fn gronwall_integral_converges() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let x = TorusPoint::random_in_c0(3, 0.3, &mut rng);
    let p = AnglePath::from_base(&x);
    let a = gronwall_integral(0.3, &p, 200);
    let b = gronwall_integral(0.3, &p, 400);
    assert!((a - b).abs() < 1e-6);
}

#[test]
fn singular_points_are_rejected() {
    let r = irrep("2,1");
    let x = TorusPoint::new(vec![0.0, 1.0, 1.0]);
    assert!(extend_l(&r, 0.1, &x, &cfg()).is_err());
    assert!(rhs_l(&r, &x.coords(), 1e-9).is_err());
}

#[test]
fn norm_at_base_is_one() {
    let r = irrep("2,1");
    let l = extend_l(&r, -0.25, &TorusPoint::base(3), &cfg()).unwrap();
    assert!((op_norm(&l) - 1.0).abs() < 1e-14);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let _ = rng.gen::<f64>();
}
