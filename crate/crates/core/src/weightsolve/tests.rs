use super::*;
use crate::linalg::{dist, identity};
use crate::symgroup::{build_irrep, Partition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn irrep(s: &str) -> IrrepData {
    build_irrep(&s.parse::<Partition>().unwrap()).unwrap()
}

fn cfg() -> FlowConfig {
    FlowConfig::with_tol(1e-12)
}

#[test]
fn system_sizes() {
    let ir = irrep("4,2");
    let sys = build_system(&ir, &identity(ir.n_tau));
    assert_eq!((sys.n_unknowns(), sys.n_equations()), (45, 66));
    let ir = irrep("2,1");
    assert_eq!(build_system(&ir, &identity(2)).n_unknowns(), 2);
}

#[test]
fn kappa_zero_gives_identity() {
    for tau in ["2,1", "3,1", "2,2"] {
        let ir = irrep(tau);
        let sol = solve_h(&ir, 0.0, &cfg()).unwrap();
        assert!(dist(&sol.b1, &identity(ir.n_tau)) < 1e-10, "{tau}");
        assert!(dist(&sol.h, &identity(ir.n_tau)) < 1e-10);
        assert_eq!(sol.singular_values.len(), sol.n_unknowns);
    }
}

#[test]
fn schur_at_identity_has_rank_n_minus_one() {
    let ir = irrep("4,2");
    let sol = solve_h_with(&ir, 0.0, identity(ir.n_tau)).unwrap();
    assert!(sol.gap() > RANK_GAP);
    assert!(dist(&sol.b1, &identity(ir.n_tau)) < 1e-9);
}

#[test]
fn h_for_small_shapes() {
    for (tau, kappa) in [("2,1", 0.25), ("2,1", -0.2), ("3,1", 0.2), ("2,2", 0.15), ("3,1", -0.1)] {
        let ir = irrep(tau);
        let sol = solve_h(&ir, kappa, &cfg()).unwrap();
        assert!(sol.gap() >= RANK_GAP, "{tau} {kappa}: {:?}", sol.singular_values);
        assert!(sol.residuals.hermitian < 1e-10, "{tau} {kappa}: {:?}", sol.residuals);
        assert!(sol.residuals.upsilon_h < 1e-9, "{:?}", sol.residuals);
        assert_eq!(sol.residuals.sigma_b1, 0.0);
        assert!(sol.positive, "{tau} {kappa}: {:?}", sol.positivity);
        assert!((sol.b1.trace().re - ir.n_tau as f64).abs() < 1e-12);
        let face = face_commutation_check(&ir, kappa, &sol, &cfg()).unwrap();
        assert!(face.sigma_h1 < 1e-8 && face.second_face < 1e-8, "{face:?}");
        assert!(face.sigma_h1_near_face < 1e-7, "{face:?}");
    }
}

#[test]
fn k_equivariance_and_base_value() {
    let ir = irrep("3,1");
    let kappa = 0.2;
    let sol = solve_h(&ir, kappa, &cfg()).unwrap();
    let k0 = weight_k(&ir, kappa, &sol.h, &TorusPoint::base(4), &cfg()).unwrap();
    assert!(dist(&k0, &sol.h) < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..4 {
        let x = TorusPoint::random_in_c0(4, 0.2, &mut rng);
        let x = x.permute(&Perm::random(4, &mut rng));
        let w = Perm::random(4, &mut rng);
        let r = k_equivariance_residual(&ir, kappa, &sol.h, &x, &w, &cfg()).unwrap();
        assert!(r < 1e-8, "{r}");
    }
}

#[test]
fn weak_continuity_across_face() {
    for (tau, kappa) in [("2,1", 0.25), ("2,1", -0.2), ("3,1", 0.15)] {
        let ir = irrep(tau);
        let sol = solve_h(&ir, kappa, &cfg()).unwrap();
        let eps = [1e-4, 3e-4, 1e-3, 3e-3, 1e-2];
        let rep = face_continuity(&ir, kappa, &sol.h, &eps, &cfg()).unwrap();
        assert!((rep.slope - rep.expected).abs() < 0.1, "{tau} {kappa}: {rep:?}");
    }
}

#[test]
fn window_tags() {
    assert_eq!(b_n(3), 1.0 / 16.0);
    assert_eq!(window_tag(3, 0.05), "inside proven window");
    assert_eq!(window_tag(3, 0.25), "extended window");
}

