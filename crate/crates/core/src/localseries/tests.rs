use std::f64::consts::PI;

use num_complex::Complex64;

use super::*;
use crate::error::Error;
use crate::linalg::{dist, fro, op_norm};
use crate::odeflow::{l_form, FlowConfig};
use crate::symgroup::{build_irrep, IrrepData, Partition};

fn irrep(s: &str) -> IrrepData {
    build_irrep(&s.parse::<Partition>().unwrap()).unwrap()
}

fn cfg() -> FlowConfig {
    FlowConfig::with_tol(1e-12)
}

#[test]
fn first_coefficient_formula() {
    let ir = irrep("3,1");
    let kappa = 0.2;
    let (chart, _) = FaceChart::for_x0(4);
    let s = SeriesExpansion::new(&ir, kappa, chart.clone(), 4, &cfg()).unwrap();
    let b = b_stream(&ir, &chart, 0);
    let mut expect = &s.alphas[0] * &b[0];
    for (a, sg) in ir.sigma_signs().iter().enumerate() {
        let f = if *sg < 0.0 { kappa / (1.0 - 2.0 * kappa) } else { kappa / (1.0 + 2.0 * kappa) };
        for col in 0..ir.n_tau {
            expect[(a, col)] *= f;
        }
    }
    assert!(dist(&expect, &s.alphas[1]) < 1e-13);
    assert!(s.parity_residual < 1e-14, "{}", s.parity_residual);
    // structural parity: σ α_n σ = (−1)^n α_n
    let sg = ir.sigma();
    for (n, a) in s.alphas.iter().enumerate() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(dist(&(sg * a * sg), &(a * crate::linalg::c(sign))), 0.0);
    }
}

#[test]
fn kappa_zero_is_identity() {
    let ir = irrep("2,1");
    let (chart, z) = FaceChart::for_x0(3);
    let s = SeriesExpansion::new(&ir, 0.0, chart, 10, &cfg()).unwrap();
    let (l, _) = s.eval_within(z, 1.0).unwrap();
    assert!(dist(&l, &crate::linalg::identity(2)) < 1e-14);
}

#[test]
fn coefficient_norms_respect_majorants() {
    for (tau, kappa) in [("2,1", 0.3), ("3,1", -0.2), ("2,2", 0.15)] {
        let ir = irrep(tau);
        let n = ir.n();
        let (chart, _) = FaceChart::for_x0(n);
        let s = SeriesExpansion::new(&ir, kappa, chart.clone(), 24, &cfg()).unwrap();
        let d0 = chart.delta0();
        let t = tn_bounds(n, kappa, d0, 24);
        let a0 = op_norm(&s.alphas[0]);
        for k in 0..=24 {
            assert!(op_norm(&s.alphas[k]) <= a0 * t[k] * (1.0 + 1e-9), "{tau} n={k}");
            let cf = closed_form_bound(n, kappa, d0, k);
            assert!((cf - t[k]).abs() <= 1e-12 * t[k].max(1e-300), "{tau} n={k}: {cf} vs {}", t[k]);
        }
    }
}

#[test]
fn det_alpha0_matches_closed_form() {
    let ir = irrep("3,1");
    let kappa = 0.27;
    let chart = FaceChart::from_angles(&[0.3, 1.9], 4.4, 0.8);
    let a0 = alpha0_solve(&ir, kappa, &chart, &cfg()).unwrap();
    let closed = det_alpha0_closed_form(&ir, kappa, &chart);
    assert!((a0.value.determinant() - closed).norm() < 1e-9 * closed.norm());
}

#[test]
fn overlap_with_flow_solution() {
    for (tau, kappa) in [("2,1", 0.25), ("2,1", -0.3), ("3,1", 0.2), ("3,1", -0.25)] {
        let ir = irrep(tau);
        let n = ir.n();
        let mc = matching_constant(&ir, kappa, &cfg()).unwrap();
        assert!(mc.tail_bound < MATCHING_TOL);
        let mid = base_u_angle(n);
        for (dt, eps) in [(0.0, 0.05), (0.2, 0.01), (-0.15, 0.1)] {
            let x = near_face_point(n, mid + dt, eps);
            let r = overlap_residual(&ir, kappa, &mc.value, &x, &cfg()).unwrap();
            assert!(r.residual < 1e-8, "{tau} κ={kappa} {:?}", r);
        }
    }
}

#[test]
fn z_and_u_equations_hold() {
    let ir = irrep("3,1");
    let kappa = 0.23;
    let n = 4;
    let chart = FaceChart::from_angles(&[0.1, 1.7], 3.9, 0.95);
    let s = SeriesExpansion::new(&ir, kappa, chart.clone(), 60, &cfg()).unwrap();
    let z = chart.u() * Complex64::new(0.02, 0.15);
    let h = 1e-5;
    let zh = chart.u() * h * Complex64::new(0.0, 1.0);
    let dz = (s.eval(z + zh).unwrap().0 - s.eval(z - zh).unwrap().0) / (zh * 2.0);
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[2] = Complex64::new(-1.0, 0.0);
    v[3] = Complex64::new(1.0, 0.0);
    let l = s.eval(z).unwrap().0;
    let rhs = &l * l_form(&ir, &chart.point(z), &v) * crate::linalg::c(kappa);
    assert!(dist(&dz, &rhs) < 1e-7 * fro(&rhs), "{}", dist(&dz, &rhs));

    // ∂_u through two neighbouring charts
    let du = Complex64::new(0.0, h);
    let shifted = |d: Complex64| {
        let mut c = chart.clone();
        c.log_u = (c.u() + d).ln();
        if (c.log_u.im - chart.log_u.im).abs() > PI {
            c.log_u.im += 2.0 * PI * (chart.log_u.im - c.log_u.im).signum();
        }
        SeriesExpansion::new(&ir, kappa, c, 60, &cfg()).unwrap().eval(z).unwrap().0
    };
    let d = (shifted(du) - shifted(-du)) / (du * 2.0);
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[2] = Complex64::new(1.0, 0.0);
    v[3] = Complex64::new(1.0, 0.0);
    let rhs = &l * l_form(&ir, &chart.point(z), &v) * crate::linalg::c(kappa);
    assert!(dist(&d, &rhs) < 1e-6 * fro(&rhs), "{}", dist(&d, &rhs));
}

#[test]
fn domain_errors() {
    let ir = irrep("2,1");
    let (chart, z) = FaceChart::for_x0(3);
    assert!(matches!(SeriesExpansion::new(&ir, 0.5, chart.clone(), 4, &cfg()), Err(Error::HalfIntegerKappa(_))));
    let s = SeriesExpansion::new(&ir, 0.2, chart.clone(), 8, &cfg()).unwrap();
    assert!(matches!(s.eval(z * 0.1 * -1.0), Err(Error::WrongHalfDisc(_))));
    assert!(matches!(s.eval(z), Err(Error::OutsideRadius { .. })));
    let bad = FaceChart::from_angles(&[0.0], 2.0 * PI, 1.0);
    assert!(matches!(alpha0_solve(&ir, 0.2, &bad, &cfg()), Err(Error::PathCollision { .. })));
}
