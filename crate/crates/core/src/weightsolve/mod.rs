//! The commutation system for `B₁`, the Hermitian matrix `H`, and `K(x) = L(x)* H L(x)`.

#[cfg(test)]
mod tests;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, commutator, fro, CMat};
use crate::localseries::{matching_constant, FaceChart, SeriesExpansion};
use crate::odeflow::{extend_l, loglog_slope, FlowConfig, TorusPoint};
use crate::symgroup::{stembridge_profile, IrrepData, Perm};

/// Minimal ratio between the two smallest singular values for a one-dimensional null space.
pub const RANK_GAP: f64 = 1e4;

/// `b_N = 1/(2(N² − N + 2))`.
pub fn b_n(n: usize) -> f64 {
    1.0 / (2.0 * (n * n - n + 2) as f64)
}

/// "inside proven window" for `|κ| < b_N`, else "extended window".
pub fn window_tag(n: usize, kappa: f64) -> &'static str {
    if kappa.abs() < b_n(n) {
        "inside proven window"
    } else {
        "extended window"
    }
}

/// Orthonormal bases of the eigenspaces of `υ`, indexed by `j` for the eigenvalue `ω^j`.
pub fn upsilon_eigenbases(irrep: &IrrepData) -> Vec<CMat> {
    let n = irrep.n();
    let mult = stembridge_profile(irrep).multiplicities;
    (0..n)
        .map(|j| {
            let mut p = CMat::zeros(irrep.n_tau, irrep.n_tau);
            for k in 0..n {
                let w = Complex64::from_polar(1.0 / n as f64, -2.0 * PI * (j * k) as f64 / n as f64);
                p += irrep.upsilon_pow(k as i64) * w;
            }
            let svd = p.svd(true, false);
            let u = svd.u.expect("left singular vectors");
            let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
            idx.sort_by(|a, b| svd.singular_values[*b].total_cmp(&svd.singular_values[*a]));
            let cols: Vec<_> = idx[..mult[j]].iter().map(|&i| u.column(i).into_owned()).collect();
            if cols.is_empty() {
                CMat::zeros(irrep.n_tau, 0)
            } else {
                CMat::from_columns(&cols)
            }
        })
        .collect()
}

/// Linear system `M b = 0` for the `σ`-diagonal blocks of `B₁`, from `υX = Xυ` with
/// `X = L₁(x₀)* B₁ L₁(x₀)`.
#[derive(Clone, Debug)]
pub struct CommutationSystem {
    pub matrix_m: CMat,
    /// `(row, col)` of `B₁` for each unknown.
    pub unknowns: Vec<(usize, usize)>,
}

impl CommutationSystem {
    pub fn n_unknowns(&self) -> usize {
        self.unknowns.len()
    }

    pub fn n_equations(&self) -> usize {
        self.matrix_m.nrows()
    }

    pub fn assemble(&self, b: &[Complex64], dim: usize) -> CMat {
        let mut m = CMat::zeros(dim, dim);
        for (&(r, s), v) in self.unknowns.iter().zip(b) {
            m[(r, s)] = *v;
        }
        m
    }
}

/// Rows are the entries `(Q_j* X Q_k)_{ab}`, `j ≠ k`, of `X` in an eigenbasis of `υ`.
pub fn build_system(irrep: &IrrepData, l1x0: &CMat) -> CommutationSystem {
    let nt = irrep.n_tau;
    let signs = irrep.sigma_signs();
    let unknowns: Vec<(usize, usize)> = (0..nt)
        .flat_map(|r| (0..nt).map(move |s| (r, s)))
        .filter(|&(r, s)| signs[r] == signs[s])
        .collect();
    let bases = upsilon_eigenbases(irrep);
    // A_j = L₁ Q_j, so (Q_j* X Q_k)_{ab} = Σ_{r,s} conj(A_j[r,a]) B_{rs} A_k[s,b]
    let a: Vec<CMat> = bases.iter().map(|q| l1x0 * q).collect();
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (j, aj) in a.iter().enumerate() {
        for (k, ak) in a.iter().enumerate() {
            if j == k {
                continue;
            }
            for p in 0..aj.ncols() {
                for q in 0..ak.ncols() {
                    rows.push(unknowns.iter().map(|&(r, s)| aj[(r, p)].conj() * ak[(s, q)]).collect());
                }
            }
        }
    }
    let m = CMat::from_fn(rows.len(), unknowns.len(), |i, j| rows[i][j]);
    CommutationSystem { matrix_m: m, unknowns }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CommutationResiduals {
    pub upsilon_h: f64,
    pub sigma_b1: f64,
    pub hermitian: f64,
}

#[derive(Clone, Debug)]
pub struct WeightSolveResult {
    pub kappa: f64,
    pub b1: CMat,
    pub h: CMat,
    pub l1x0: CMat,
    /// Ascending.
    pub singular_values: Vec<f64>,
    pub positivity: Vec<f64>,
    pub positive: bool,
    pub residuals: CommutationResiduals,
    /// Factor applied to the raw null vector.
    pub normalization: Complex64,
    pub n_unknowns: usize,
    pub n_equations: usize,
}

impl WeightSolveResult {
    /// `σ₂/σ₁`, with `σ₁` floored at `ε·σ_max` so an exact null vector still reports a finite gap.
    pub fn gap(&self) -> f64 {
        let top = self.singular_values.last().copied().unwrap_or(0.0);
        match self.singular_values.as_slice() {
            [s0, s1, ..] => s1 / s0.max(f64::EPSILON * top),
            _ => f64::INFINITY,
        }
    }
}

/// Null vector of the commutation system, normalized by `tr B₁ = n_τ`, and `H = L₁(x₀)* B₁ L₁(x₀)`.
pub fn solve_h(irrep: &IrrepData, kappa: f64, cfg: &FlowConfig) -> Result<WeightSolveResult> {
    let l1 = matching_constant(irrep, kappa, cfg)?.value;
    solve_h_with(irrep, kappa, l1)
}

pub fn solve_h_with(irrep: &IrrepData, kappa: f64, l1x0: CMat) -> Result<WeightSolveResult> {
    let nt = irrep.n_tau;
    let sys = build_system(irrep, &l1x0);
    let n = sys.n_unknowns();
    // pad so that the thin decomposition exposes the whole null space
    let rows = sys.n_equations().max(n);
    let mut m = CMat::zeros(rows, n);
    m.rows_mut(0, sys.n_equations()).copy_from(&sys.matrix_m);
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors");
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|a, b| svd.singular_values[*a].total_cmp(&svd.singular_values[*b]));
    let singular_values: Vec<f64> = idx.iter().map(|&i| svd.singular_values[i]).collect();
    if n > 1 {
        let (s0, s1) = (singular_values[0], singular_values[1]);
        let scale = singular_values[n - 1].max(1.0);
        if s1 < RANK_GAP * s0 || s1 < 1e-10 * scale {
            let small = singular_values.iter().filter(|s| **s < s1.max(s0) * 2.0 && **s < 1e-6 * scale).count();
            return Err(Error::RankDeficient { small: small.max(2), gap: s1 / s0 });
        }
    }
    let v: Vec<Complex64> = vt.row(idx[0]).iter().map(|z| z.conj()).collect();
    let raw = sys.assemble(&v, nt);
    let tr = raw.trace();
    let normalization = c(nt as f64) / tr;
    let b1 = raw * normalization;
    let h = l1x0.adjoint() * &b1 * &l1x0;
    let hs = (&h + h.adjoint()) * c(0.5);
    let positivity: Vec<f64> = hs.clone().symmetric_eigenvalues().iter().cloned().collect();
    let mut positivity = positivity;
    positivity.sort_by(f64::total_cmp);
    let residuals = CommutationResiduals {
        upsilon_h: fro(&commutator(irrep.upsilon(), &h)),
        sigma_b1: fro(&commutator(irrep.sigma(), &b1)),
        hermitian: fro(&(&h - h.adjoint())) / fro(&h),
    };
    Ok(WeightSolveResult {
        kappa,
        positive: positivity[0] > 0.0,
        b1,
        h,
        l1x0,
        singular_values,
        positivity,
        residuals,
        normalization,
        n_unknowns: n,
        n_equations: sys.n_equations(),
    })
}

/// `K(x) = L(x)† H L(x)`; the adjoint solution equals `L†` on the torus at real `κ`.
pub fn weight_k(irrep: &IrrepData, kappa: f64, h: &CMat, x: &TorusPoint, cfg: &FlowConfig) -> Result<CMat> {
    let l = extend_l(irrep, kappa, x, cfg)?;
    Ok(l.adjoint() * h * l)
}

/// `‖K(xw) − τ(w)⁻¹ K(x) τ(w)‖ / ‖K(x)‖`.
pub fn k_equivariance_residual(
    irrep: &IrrepData,
    kappa: f64,
    h: &CMat,
    x: &TorusPoint,
    w: &Perm,
    cfg: &FlowConfig,
) -> Result<f64> {
    let k = weight_k(irrep, kappa, h, x, cfg)?;
    let kw = weight_k(irrep, kappa, h, &x.permute(w), cfg)?;
    let t = irrep.rep(w);
    let expect = t.adjoint() * &k * t;
    Ok(fro(&(kw - &expect)) / fro(&expect))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceCommutationReport {
    /// `‖σH₁ − H₁σ‖/‖H₁‖` with `H₁ = (L₁(x₀)*)⁻¹ H L₁(x₀)⁻¹`.
    pub sigma_h1: f64,
    /// `‖τ(N−2,N−1)H₂ − H₂τ(N−2,N−1)‖/‖H₂‖` with `H₂ = υ⁻¹H₁υ`.
    pub second_face: f64,
    /// The same as `sigma_h1` with `H₁` recovered from `K` at a point near the face.
    pub sigma_h1_near_face: f64,
    pub near_face_gap: f64,
}

pub fn face_commutation_check(
    irrep: &IrrepData,
    kappa: f64,
    sol: &WeightSolveResult,
    cfg: &FlowConfig,
) -> Result<FaceCommutationReport> {
    let n = irrep.n();
    let inv = sol.l1x0.clone().try_inverse().ok_or(Error::RankDeficient { small: 1, gap: 0.0 })?;
    let h1 = inv.adjoint() * &sol.h * &inv;
    let u = irrep.upsilon();
    let h2 = u.adjoint() * &h1 * u;
    let t = irrep.transposition(n - 3, n - 2);

    let eps = 1e-3;
    let x = crate::localseries::near_face_point(n, crate::localseries::base_u_angle(n), eps);
    let k = weight_k(irrep, kappa, &sol.h, &x, cfg)?;
    let (chart, z) = FaceChart::for_torus_point(&x);
    let (l1, _) = SeriesExpansion::with_tolerance(irrep, kappa, chart, z.norm(), 1e-12, 24, cfg)?.eval(z)?;
    let l1inv = l1.try_inverse().ok_or(Error::RankDeficient { small: 1, gap: 0.0 })?;
    let h1x = l1inv.adjoint() * k * l1inv;
    Ok(FaceCommutationReport {
        sigma_h1: fro(&commutator(irrep.sigma(), &h1)) / fro(&h1),
        second_face: fro(&commutator(t, &h2)) / fro(&h2),
        sigma_h1_near_face: fro(&commutator(irrep.sigma(), &h1x)) / fro(&h1x),
        near_face_gap: 2.0 * eps.sin(),
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContinuityReport {
    pub z_abs: Vec<f64>,
    pub jump: Vec<f64>,
    pub slope: f64,
    pub expected: f64,
}

/// `‖K(x(u,z)) − K(x(u,−z))‖ = ‖K(x) − σK(x)σ‖` against `|z|` near the face.
pub fn face_continuity(
    irrep: &IrrepData,
    kappa: f64,
    h: &CMat,
    eps: &[f64],
    cfg: &FlowConfig,
) -> Result<ContinuityReport> {
    let n = irrep.n();
    let s = irrep.sigma();
    let mut zs = Vec::new();
    let mut jumps = Vec::new();
    for &e in eps {
        let x = crate::localseries::near_face_point(n, crate::localseries::base_u_angle(n), e);
        let k = weight_k(irrep, kappa, h, &x, cfg)?;
        zs.push(e.sin());
        jumps.push(fro(&(&k - s * &k * s)));
    }
    Ok(ContinuityReport { slope: loglog_slope(&zs, &jumps), expected: 1.0 - 2.0 * kappa.abs(), z_abs: zs, jump: jumps })
}
