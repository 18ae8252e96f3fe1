use super::integrator::FlowResult;
use super::path::AnglePath;
use super::point::TorusPoint;
use super::systems::{integrate_l, FlowConfig};
use crate::error::Result;
use crate::linalg::{identity, CMat};
use crate::symgroup::{IrrepData, Perm};

/// `L(y)` for `y` in the fundamental chamber, by the straight angle path from `x₀`.
pub fn l_in_c0(irrep: &IrrepData, kappa: f64, y: &TorusPoint, cfg: &FlowConfig) -> Result<FlowResult> {
    y.check_regular(cfg.floor)?;
    let path = AnglePath::from_base(y);
    integrate_l(irrep, kappa, &path, &identity(irrep.n_tau), cfg)
}

/// `L(x) := L(x w_x⁻¹) τ(w_x)` on all of the regular torus.
pub fn extend_l(irrep: &IrrepData, kappa: f64, x: &TorusPoint, cfg: &FlowConfig) -> Result<CMat> {
    let w = x.chamber_perm();
    let y = x.permute(&w.inverse());
    let l = l_in_c0(irrep, kappa, &y, cfg)?.value;
    Ok(if w.is_identity() { l } else { l * irrep.rep(&w) })
}

/// `ν(w) = υ^{1−w(1)}`.
pub fn nu(irrep: &IrrepData, w: &Perm) -> CMat {
    irrep.upsilon_pow(-(w.apply(0) as i64)).clone()
}

/// `M(w, x) = ν(w_x w)`, so that `L(xw) = M(w,x) L(x) τ(w)`.
pub fn monodromy_factor(irrep: &IrrepData, w: &Perm, x: &TorusPoint) -> CMat {
    nu(irrep, &(&x.chamber_perm() * w))
}

/// Exponent `k` with `M(w, x) = υ^k`, reduced mod `N`.
pub fn monodromy_exponent(w: &Perm, x: &TorusPoint) -> i64 {
    let n = w.n() as i64;
    (-((&x.chamber_perm() * w).apply(0) as i64)).rem_euclid(n)
}
