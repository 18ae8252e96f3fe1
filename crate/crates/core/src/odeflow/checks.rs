//! Numerical identities of the flows, shared by the unit tests and the CLI check suite.

use num_complex::Complex64;
use rand::SeedableRng;
use serde::Serialize;

use super::bounds::{face_approach, loglog_slope};
use super::det::det_closed_form;
use super::extend::{extend_l, l_in_c0, monodromy_factor};
use super::path::{AnglePath, LinePath};
use super::point::TorusPoint;
use super::systems::{integrate_l, integrate_lstar, rhs_l, FlowConfig};
use crate::error::Result;
use crate::linalg::{c, dist, fro, identity, CMat};
use crate::symgroup::{IrrepData, Perm};

/// `L` near `x` normalized by `L(x) = I`, along the straight segment.
pub fn local_l(irrep: &IrrepData, kappa: f64, x: &[Complex64], y: &[Complex64], cfg: &FlowConfig) -> Result<CMat> {
    let path = LinePath::new(x.to_vec(), y.to_vec());
    Ok(integrate_l(irrep, kappa, &path, &identity(irrep.n_tau), cfg)?.value)
}

/// `‖∂_i(L A_j) − ∂_j(L A_i)‖` at `x` with the local solution `L(x) = I`,
/// both derivatives by central differences of step `h`.
pub fn mixed_partial_residual(
    irrep: &IrrepData,
    kappa: f64,
    x: &[Complex64],
    i: usize,
    j: usize,
    h: f64,
    cfg: &FlowConfig,
) -> Result<f64> {
    let deriv = |a: usize, b: usize| -> Result<CMat> {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[a] += h;
        xm[a] -= h;
        let lp = local_l(irrep, kappa, x, &xp, cfg)? * &rhs_l(irrep, &xp, cfg.floor)?[b];
        let lm = local_l(irrep, kappa, x, &xm, cfg)? * &rhs_l(irrep, &xm, cfg.floor)?[b];
        Ok((lp - lm) / c(2.0 * h))
    };
    Ok(fro(&(deriv(i, j)? - deriv(j, i)?)))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckLine {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckLine {
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        CheckLine { name: name.into(), value, threshold, pass: value <= threshold }
    }

    pub fn within(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        CheckLine { name: name.into(), value, threshold: tol, pass: (value - target).abs() <= tol }
    }
}

/// Flow property suite for one `(τ, κ)`.
const MIXED_PARTIAL_FLOOR: f64 = 1e-12;

pub fn flow_invariants(irrep: &IrrepData, kappa: f64, seed: u64, cfg: &FlowConfig) -> Result<Vec<CheckLine>> {
    let n = irrep.n();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut lines = Vec::new();

    // closed loop x₀ → y → z → x₀ inside C₀
    let y = TorusPoint::random_in_c0(n, 0.3, &mut rng);
    let z = TorusPoint::random_in_c0(n, 0.3, &mut rng);
    let a = AnglePath::from_base(&y);
    let b = AnglePath::new(y.unwrapped(), z.unwrapped());
    let back = AnglePath::new(z.unwrapped(), AnglePath::from_base(&z).from.clone());
    let ly = integrate_l(irrep, kappa, &a, &identity(irrep.n_tau), cfg)?.value;
    let lz = integrate_l(irrep, kappa, &b, &ly, cfg)?.value;
    let l0 = integrate_l(irrep, kappa, &back, &lz, cfg)?.value;
    lines.push(CheckLine::at_most("closed loop returns to I", dist(&l0, &identity(irrep.n_tau)), 1e-8));

    // path independence: direct versus via y
    let direct = l_in_c0(irrep, kappa, &z, cfg)?.value;
    lines.push(CheckLine::at_most("path independence", dist(&direct, &lz), 1e-8));

    // L(xw₀) = υ⁻¹ L(x) υ
    let w0 = Perm::long_cycle(n);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let x = TorusPoint::random_in_c0(n, 0.2, &mut rng);
        let lx = l_in_c0(irrep, kappa, &x, cfg)?.value;
        let lxw = l_in_c0(irrep, kappa, &x.permute(&w0), cfg)?.value;
        let expect = irrep.upsilon_pow(-1) * lx * irrep.upsilon();
        worst = worst.max(dist(&lxw, &expect));
    }
    lines.push(CheckLine::at_most("L(x w0) = u^-1 L(x) u", worst, 1e-8));

    // homogeneity
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let x = TorusPoint::random_in_c0(n, 0.2, &mut rng);
        let phi = rand::Rng::gen_range(&mut rng, -3.0..3.0);
        let l1 = extend_l(irrep, kappa, &x, cfg)?;
        let l2 = extend_l(irrep, kappa, &x.rotate(phi), cfg)?;
        worst = worst.max(dist(&l1, &l2));
    }
    lines.push(CheckLine::at_most("homogeneity L(e^{i phi} x) = L(x)", worst, 1e-9));

    // determinant closed form
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let x = TorusPoint::random_in_c0(n, 0.2, &mut rng);
        let d = l_in_c0(irrep, kappa, &x, cfg)?.value.determinant();
        let expect = det_closed_form(irrep, kappa, &x.unwrapped());
        worst = worst.max((d - c(expect)).norm() / expect);
    }
    lines.push(CheckLine::at_most("det L closed form (relative)", worst, 1e-8));

    // monodromy relation L(xw) = M(w,x) L(x) τ(w) on arbitrary chambers
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let x = TorusPoint::random(n, &mut rng);
        if x.margin() < 0.2 {
            continue;
        }
        let w = Perm::random(n, &mut rng);
        let lhs = extend_l(irrep, kappa, &x.permute(&w), cfg)?;
        let rhs = monodromy_factor(irrep, &w, &x) * extend_l(irrep, kappa, &x, cfg)? * irrep.rep(&w);
        worst = worst.max(dist(&lhs, &rhs));
    }
    lines.push(CheckLine::at_most("L(xw) = M(w,x) L(x) tau(w)", worst, 1e-8));

    // adjoint system agrees with the Hermitian adjoint
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let x = TorusPoint::random_in_c0(n, 0.2, &mut rng);
        let path = AnglePath::from_base(&x);
        let l = integrate_l(irrep, kappa, &path, &identity(irrep.n_tau), cfg)?.value;
        let ls = integrate_lstar(irrep, kappa, &path, &identity(irrep.n_tau), cfg)?.value;
        worst = worst.max(dist(&ls, &l.adjoint()));
    }
    lines.push(CheckLine::at_most("L* = L^dagger", worst, 1e-8));

    // mixed partials decay like h²
    let x = TorusPoint::random_in_c0(n, 0.3, &mut rng).coords();
    let tight = FlowConfig::with_tol(1e-13);
    let hs = [1e-3, 5e-4, 2.5e-4];
    let res: Vec<f64> = hs
        .iter()
        .map(|&h| mixed_partial_residual(irrep, kappa, &x, 0, 1, h, &tight))
        .collect::<Result<_>>()?;
    let top = res.iter().cloned().fold(0.0, f64::max);
    if top < MIXED_PARTIAL_FLOOR {
        // no truncation error to fit (κ = 0 gives a constant flow)
        lines.push(CheckLine::at_most("mixed partial residual at roundoff", top, MIXED_PARTIAL_FLOOR));
    } else {
        let slope = if res.iter().all(|r| *r > 0.0) { loglog_slope(&hs, &res) } else { 2.0 };
        lines.push(CheckLine::within("mixed partial residual order", slope, 2.0, 0.3));
    }

    // face blow-up rate
    if kappa != 0.0 {
        let gaps = [5e-5, 1.6e-4, 5e-4, 1.6e-3, 5e-3];
        let pts = face_approach(irrep, kappa, &gaps, cfg)?;
        let (d, nrm): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        lines.push(CheckLine::within("face slope of |L|", loglog_slope(&d, &nrm), -kappa.abs(), 0.05));
    }
    Ok(lines)
}
