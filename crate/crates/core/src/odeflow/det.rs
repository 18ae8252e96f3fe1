use num_complex::Complex64;

use super::integrator::integrate;
use super::path::Path;
use super::point::base_angles;
use super::systems::{l_form, FlowConfig};
use crate::error::Result;
use crate::linalg::{c, identity};
use crate::symgroup::IrrepData;

/// `det L(x) = ∏_{i<j} (4 sin²((θ_i−θ_j)/2) / 4 sin²((θ_i⁰−θ_j⁰)/2))^{κΛ/2}` with
/// `Λ = tr τ((1,2))`, for `x` on the torus.
pub fn det_closed_form(irrep: &IrrepData, kappa: f64, theta: &[f64]) -> f64 {
    let n = theta.len();
    let base = base_angles(n);
    let expo = kappa * irrep.lambda_trace / 2.0;
    let mut log = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let s = 4.0 * ((theta[i] - theta[j]) / 2.0).sin().powi(2);
            let s0 = 4.0 * ((base[i] - base[j]) / 2.0).sin().powi(2);
            log += expo * (s / s0).ln();
        }
    }
    log.exp()
}

/// Independent determinant oracle: `d det/dt = κ tr(F(t)) det` along the path.
pub fn det_ode(irrep: &IrrepData, kappa: f64, path: &dyn Path, cfg: &FlowConfig) -> Result<Complex64> {
    let k = c(kappa);
    let r = integrate(
        |t, y| y * (l_form(irrep, &path.point(t), &path.velocity(t)).trace() * k),
        0.0,
        1.0,
        &identity(1),
        &cfg.step,
    )?;
    Ok(r.value[(0, 0)])
}
