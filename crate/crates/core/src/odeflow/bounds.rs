use serde::Serialize;

use super::extend::extend_l;
use super::path::{AnglePath, Path};
use super::point::TorusPoint;
use super::systems::FlowConfig;
use crate::error::Result;
use crate::linalg::op_norm;
use crate::symgroup::IrrepData;

/// `∏_{i<j} |x_i − x_j|^{p}`.
pub fn distance_product(x: &TorusPoint, p: f64) -> f64 {
    let z = x.coords();
    let mut out = 1.0;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            out *= (z[i] - z[j]).norm().powf(p);
        }
    }
    out
}

/// `f(t) = |κ| Σ_{i<j} |(p_i' − p_j')/(p_i − p_j)|`, the Gronwall integrand.
pub fn gronwall_integrand(kappa: f64, path: &dyn Path, t: f64) -> f64 {
    let x = path.point(t);
    let v = path.velocity(t);
    let mut s = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            s += ((v[i] - v[j]) / (x[i] - x[j])).norm();
        }
    }
    kappa.abs() * s
}

/// `∫₀¹ f(t) dt` by composite Simpson with `2m` panels.
pub fn gronwall_integral(kappa: f64, path: &dyn Path, m: usize) -> f64 {
    let n = 2 * m;
    let h = 1.0 / n as f64;
    let mut s = gronwall_integrand(kappa, path, 0.0) + gronwall_integrand(kappa, path, 1.0);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * gronwall_integrand(kappa, path, k as f64 * h);
    }
    s * h / 3.0
}

/// Closed-form majorant `|κ| Σ_{i<j} {−log sin((θ_j−θ_i)/2) − log sin((j−i)π/N) + 4π}`
/// of the Gronwall integral along the straight angle path from `x₀` to `x ∈ C₀`.
pub fn gronwall_closed_form(kappa: f64, x: &TorusPoint) -> f64 {
    let th = x.unwrapped();
    let n = th.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let a = ((th[j] - th[i]) / 2.0).sin().ln();
            let b = ((j - i) as f64 * std::f64::consts::PI / n as f64).sin().ln();
            s += -a - b + 4.0 * std::f64::consts::PI;
        }
    }
    kappa.abs() * s
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundSample {
    pub theta: Vec<f64>,
    pub norm: f64,
    pub ratio: f64,
    /// `exp(∫f)`, the Gronwall bound for `‖L‖` along the default path.
    pub gronwall: f64,
    pub closed_form: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GlobalBoundReport {
    pub kappa: f64,
    pub max_ratio: f64,
    pub samples: Vec<BoundSample>,
}

/// Records `‖L(x)‖ ∏|x_i − x_j|^{|κ|}` together with the Gronwall bound at each sample.
pub fn global_bound_check(
    irrep: &IrrepData,
    kappa: f64,
    samples: &[TorusPoint],
    cfg: &FlowConfig,
) -> Result<GlobalBoundReport> {
    let mut out = Vec::with_capacity(samples.len());
    for x in samples {
        let l = extend_l(irrep, kappa, x, cfg)?;
        let norm = op_norm(&l);
        let y = x.permute(&x.chamber_perm().inverse());
        let path = AnglePath::from_base(&y);
        out.push(BoundSample {
            theta: x.theta.clone(),
            norm,
            ratio: norm * distance_product(x, kappa.abs()),
            gronwall: gronwall_integral(kappa, &path, 400).exp(),
            closed_form: gronwall_closed_form(kappa, &y).exp(),
        });
    }
    let max_ratio = out.iter().map(|s| s.ratio).fold(0.0, f64::max);
    Ok(GlobalBoundReport { kappa, max_ratio, samples: out })
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// `‖L‖` at points approaching the face `x_{N−1} = x_N` from inside `C₀`;
/// returns `(|x_{N−1} − x_N|, ‖L‖)` pairs.
pub fn face_approach(
    irrep: &IrrepData,
    kappa: f64,
    gaps: &[f64],
    cfg: &FlowConfig,
) -> Result<Vec<(f64, f64)>> {
    let n = irrep.n();
    let mut base = super::point::base_angles(n);
    // meet x_{N−1} and x_N halfway between their base angles
    let mid = (base[n - 2] + base[n - 1]) / 2.0;
    gaps.iter()
        .map(|&eps| {
            base[n - 2] = mid - eps;
            base[n - 1] = mid + eps;
            let x = TorusPoint::new(base.clone());
            let l = extend_l(irrep, kappa, &x, cfg)?;
            Ok((2.0 * eps.sin(), op_norm(&l)))
        })
        .collect()
}
