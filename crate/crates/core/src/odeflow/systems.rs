use num_complex::Complex64;

use super::integrator::{integrate, FlowResult, StepOptions};
use super::path::Path;
use super::point::margin;
use crate::error::{Error, Result};
use crate::linalg::{c, CMat};
use crate::symgroup::IrrepData;

#[derive(Clone, Copy, Debug)]
pub struct FlowConfig {
    pub step: StepOptions,
    /// Minimal admissible `min_{i<j} |x_i − x_j|` at path endpoints.
    pub floor: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig { step: StepOptions::default(), floor: 1e-9 }
    }
}

impl FlowConfig {
    pub fn with_tol(tol: f64) -> Self {
        FlowConfig { step: StepOptions::with_tol(tol), ..Default::default() }
    }
}

fn check(x: &[Complex64], floor: f64) -> Result<()> {
    let m = margin(x);
    if m < floor {
        return Err(Error::SingularPoint { margin: m, floor });
    }
    Ok(())
}

/// `A_i(x) = Σ_{j≠i} τ((i,j))/(x_i − x_j) − (γ/x_i) I`, so that `∂_i L = κ L A_i`.
pub fn rhs_l(irrep: &IrrepData, x: &[Complex64], floor: f64) -> Result<Vec<CMat>> {
    check(x, floor)?;
    let n = x.len();
    Ok((0..n)
        .map(|i| {
            let mut a = CMat::identity(irrep.n_tau, irrep.n_tau) * (-irrep.gamma / x[i]);
            for j in (0..n).filter(|&j| j != i) {
                a += irrep.transposition(i, j) / (x[i] - x[j]);
            }
            a
        })
        .collect())
}

/// `Σ_i A_i(x) v_i` along a tangent vector `v`.
pub fn l_form(irrep: &IrrepData, x: &[Complex64], v: &[Complex64]) -> CMat {
    let n = x.len();
    let g: Complex64 = (0..n).map(|i| v[i] / x[i]).sum();
    let mut f = CMat::identity(irrep.n_tau, irrep.n_tau) * (-irrep.gamma * g);
    for i in 0..n {
        for j in i + 1..n {
            f += irrep.transposition(i, j) * ((v[i] - v[j]) / (x[i] - x[j]));
        }
    }
    f
}

/// Tangent form of the adjoint system `∂_i L* = κ B_i L*`, with
/// `B_i = Σ_{j≠i} (x_j/x_i) τ((i,j))/(x_i − x_j) + γ/x_i`.
pub fn lstar_form(irrep: &IrrepData, x: &[Complex64], v: &[Complex64]) -> CMat {
    let n = x.len();
    let g: Complex64 = (0..n).map(|i| v[i] / x[i]).sum();
    let mut f = CMat::identity(irrep.n_tau, irrep.n_tau) * (irrep.gamma * g);
    for i in 0..n {
        for j in i + 1..n {
            let w = (v[i] * x[j] * x[j] - v[j] * x[i] * x[i]) / (x[i] * x[j] * (x[i] - x[j]));
            f += irrep.transposition(i, j) * w;
        }
    }
    f
}

/// Solve `dL/dt = κ L Σ_i A_i(p(t)) p_i'(t)` from `L(p(0)) = init`.
pub fn integrate_l(
    irrep: &IrrepData,
    kappa: f64,
    path: &dyn Path,
    init: &CMat,
    cfg: &FlowConfig,
) -> Result<FlowResult> {
    check(&path.point(0.0), cfg.floor)?;
    check(&path.point(1.0), cfg.floor)?;
    let k = c(kappa);
    integrate(
        |t, y| y * l_form(irrep, &path.point(t), &path.velocity(t)) * k,
        0.0,
        1.0,
        init,
        &cfg.step,
    )
}

/// Solve the adjoint system `dL*/dt = κ (Σ_i B_i p_i') L*` from `L*(p(0)) = init`.
pub fn integrate_lstar(
    irrep: &IrrepData,
    kappa: f64,
    path: &dyn Path,
    init: &CMat,
    cfg: &FlowConfig,
) -> Result<FlowResult> {
    check(&path.point(0.0), cfg.floor)?;
    check(&path.point(1.0), cfg.floor)?;
    let k = c(kappa);
    integrate(
        |t, y| lstar_form(irrep, &path.point(t), &path.velocity(t)) * y * k,
        0.0,
        1.0,
        init,
        &cfg.step,
    )
}

/// Residual of `x_i ∂_i K = κ Σ_{j≠i} { x_j/(x_i−x_j) τ((i,j)) K + K τ((i,j)) x_i/(x_i−x_j) }`
/// for a holomorphic matrix function `k_at`, by central differences with step `h`.
pub fn kdieq_residual(
    irrep: &IrrepData,
    kappa: f64,
    k_at: &dyn Fn(&[Complex64]) -> Result<CMat>,
    x: &[Complex64],
    i: usize,
    h: f64,
) -> Result<f64> {
    let n = x.len();
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    xp[i] += h;
    xm[i] -= h;
    let dk = (k_at(&xp)? - k_at(&xm)?) / c(2.0 * h);
    let k0 = k_at(x)?;
    let mut rhs = CMat::zeros(irrep.n_tau, irrep.n_tau);
    for j in (0..n).filter(|&j| j != i) {
        let t = irrep.transposition(i, j);
        rhs += (t * &k0) * (x[j] / (x[i] - x[j])) + (&k0 * t) * (x[i] / (x[i] - x[j]));
    }
    let res = dk * x[i] - rhs * c(kappa);
    Ok(crate::linalg::fro(&res) / crate::linalg::fro(&k0).max(1e-300))
}
