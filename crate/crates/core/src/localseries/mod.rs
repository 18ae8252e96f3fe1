//! Convergent expansion of the flow solution near the face `x_{N−1} = x_N`.

mod chart;
mod series;
#[cfg(test)]
mod tests;

pub use chart::{base_u_angle, FaceChart};
pub use series::{
    alpha0_solve, alpha_recurrence, b_stream, beta_stream, closed_form_bound, det_alpha0_closed_form,
    project_parity, tail_sum, tn_bounds, Alpha0, SeriesExpansion, SeriesSummary, DEFAULT_RADIUS_FRACTION,
};

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{dist, fro, CMat};
use crate::odeflow::{l_in_c0, FlowConfig, TorusPoint};
use crate::symgroup::IrrepData;

/// Target truncation error for the matching constant.
pub const MATCHING_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct MatchingConstant {
    /// `L₁(x₀)`, so that `L₁ = L₁(x₀) L` on the chamber.
    pub value: CMat,
    pub terms: usize,
    pub tail_bound: f64,
    /// `|z|/δ₀` at `x₀`.
    pub ratio: f64,
}

/// `L₁(x₀)`, with the truncation raised until the tail bound is below [`MATCHING_TOL`].
pub fn matching_constant(irrep: &IrrepData, kappa: f64, cfg: &FlowConfig) -> Result<MatchingConstant> {
    let (chart, z) = FaceChart::for_x0(irrep.n());
    let ratio = z.norm() / chart.delta0();
    let s = SeriesExpansion::with_tolerance(irrep, kappa, chart, z.norm(), MATCHING_TOL, 24, cfg)?;
    let (value, tail) = s.eval_within(z, 1.0)?;
    Ok(MatchingConstant { value, terms: s.terms(), tail_bound: tail, ratio })
}

/// `L₁` at a torus point of the fundamental chamber near the face.
pub fn l1_at(irrep: &IrrepData, kappa: f64, x: &TorusPoint, m: usize, cfg: &FlowConfig) -> Result<(CMat, f64)> {
    let (chart, z) = FaceChart::for_torus_point(x);
    SeriesExpansion::new(irrep, kappa, chart, m, cfg)?.eval(z)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OverlapSample {
    pub theta: Vec<f64>,
    pub z_abs: f64,
    pub residual: f64,
}

/// Relative residual of `L₁(x) = L₁(x₀) L(x)` at a point of the fundamental chamber.
pub fn overlap_residual(
    irrep: &IrrepData,
    kappa: f64,
    l1_x0: &CMat,
    x: &TorusPoint,
    cfg: &FlowConfig,
) -> Result<OverlapSample> {
    let (chart, z) = FaceChart::for_torus_point(x);
    let s = SeriesExpansion::with_tolerance(irrep, kappa, chart, z.norm(), 1e-12, 24, cfg)?;
    let (l1, _) = s.eval(z)?;
    let l = l_in_c0(irrep, kappa, x, cfg)?.value;
    let rhs = l1_x0 * l;
    Ok(OverlapSample { theta: x.theta.clone(), z_abs: z.norm(), residual: dist(&l1, &rhs) / fro(&rhs) })
}

/// Near-face point `x_{N−1} = e^{i(θ−ε)}`, `x_N = e^{i(θ+ε)}` with the other coordinates at `x₀`.
pub fn near_face_point(n: usize, theta: f64, eps: f64) -> TorusPoint {
    let mut t = crate::odeflow::base_angles(n);
    t[n - 2] = theta - eps;
    t[n - 1] = theta + eps;
    TorusPoint::new(t)
}

