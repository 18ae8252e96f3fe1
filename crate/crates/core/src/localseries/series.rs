use num_complex::Complex64;
use serde::Serialize;

use super::chart::FaceChart;
use crate::error::{Error, Result};
use crate::linalg::{c, identity, op_norm, CMat};
use crate::odeflow::{integrate, FlowConfig, Path};
use crate::symgroup::IrrepData;

/// `β_n = Σ_{j≤N−2} τ((j,N)) / (u − x_j)^{n+1}` for `n = 0..m`.
pub fn beta_stream(irrep: &IrrepData, chart: &FaceChart, m: usize) -> Vec<CMat> {
    let n = chart.n;
    let u = chart.u();
    let inv: Vec<Complex64> = chart.xs().iter().map(|x| 1.0 / (u - x)).collect();
    let mut pw = inv.clone();
    let mut out = Vec::with_capacity(m + 1);
    for _ in 0..=m {
        let mut b = CMat::zeros(irrep.n_tau, irrep.n_tau);
        for (j, p) in pw.iter().enumerate() {
            b += irrep.transposition(j, n - 1) * *p;
        }
        out.push(b);
        for (p, q) in pw.iter_mut().zip(&inv) {
            *p *= q;
        }
    }
    out
}

/// `B_n = (−1)^n β_n − σ β_n σ`, the Taylor coefficients in `z` of `A_N − A_{N−1} − σ/z`
/// without the scalar part.
pub fn b_stream(irrep: &IrrepData, chart: &FaceChart, m: usize) -> Vec<CMat> {
    let s = irrep.sigma();
    beta_stream(irrep, chart, m)
        .into_iter()
        .enumerate()
        .map(|(k, b)| {
            let sbs = s * &b * s;
            if k % 2 == 0 {
                b - sbs
            } else {
                -b - sbs
            }
        })
        .collect()
}

/// Connection form of `α₀` along `(x_1, …, x_{N−2}, u)` with velocities `v`.
fn alpha0_form(irrep: &IrrepData, p: &[Complex64], v: &[Complex64]) -> CMat {
    let n = irrep.n();
    let (xs, u, du) = (&p[..n - 2], p[n - 2], v[n - 2]);
    let mut g = CMat::zeros(irrep.n_tau, irrep.n_tau);
    for i in 0..n - 2 {
        for j in i + 1..n - 2 {
            g += irrep.transposition(i, j) * ((v[j] - v[i]) / (xs[j] - xs[i]));
        }
        let t = irrep.transposition(i, n - 2) + irrep.transposition(i, n - 1);
        g += t * ((du - v[i]) / (u - xs[i]));
    }
    g
}

#[derive(Clone, Debug)]
pub struct Alpha0 {
    pub value: CMat,
    pub error_estimate: f64,
    /// Max `|entry|` of the off-parity blocks before projection.
    pub parity_residual: f64,
}

/// Solve the `α₀` system from `α₀(x⁽⁰⁾) = I` to the chart base.
pub fn alpha0_solve(irrep: &IrrepData, kappa: f64, chart: &FaceChart, cfg: &FlowConfig) -> Result<Alpha0> {
    chart.check_path(cfg.floor.max(1e-6))?;
    let path = chart.path_from_base();
    let k = c(kappa);
    let r = integrate(
        |t, y| y * alpha0_form(irrep, &path.point(t), &path.velocity(t)) * k,
        0.0,
        1.0,
        &identity(irrep.n_tau),
        &cfg.step,
    )?;
    let (value, parity_residual) = project_parity(irrep, r.value, 0);
    Ok(Alpha0 { value, error_estimate: r.error_estimate, parity_residual })
}

/// Zero the blocks with `σ_a σ_b ≠ (−1)^n`; returns the largest removed entry.
pub fn project_parity(irrep: &IrrepData, mut m: CMat, n: usize) -> (CMat, f64) {
    let s = irrep.sigma_signs();
    let want = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut res: f64 = 0.0;
    for a in 0..s.len() {
        for b in 0..s.len() {
            if s[a] * s[b] != want {
                res = res.max(m[(a, b)].norm());
                m[(a, b)] = Complex64::new(0.0, 0.0);
            }
        }
    }
    (m, res)
}

/// Closed form `det α₀ = exp(κΛ[Σ_{i<j≤N−2} log((x_i−x_j)/(x_i⁰−x_j⁰)) + 2Σ_j log((x_j−u)/(x_j⁰−u⁰))])`,
/// the logarithms continued along the chart path.
pub fn det_alpha0_closed_form(irrep: &IrrepData, kappa: f64, chart: &FaceChart) -> Complex64 {
    let n = chart.n;
    let path = chart.path_from_base();
    let diffs = |p: &[Complex64]| -> Vec<(Complex64, f64)> {
        let mut d = Vec::new();
        for i in 0..n - 2 {
            for j in i + 1..n - 2 {
                d.push((p[i] - p[j], 1.0));
            }
            d.push((p[i] - p[n - 2], 2.0));
        }
        d
    };
    let steps = 512;
    let mut prev = diffs(&path.point(0.0));
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=steps {
        let cur = diffs(&path.point(k as f64 / steps as f64));
        for ((a, w), (b, _)) in cur.iter().zip(&prev) {
            acc += (a / b).ln() * *w;
        }
        prev = cur;
    }
    (acc * (kappa * irrep.lambda_trace)).exp()
}

/// `α_n` for `n = 1..=m` from `α₀`:
/// `α_{2n} = (κ/2n) S_{2n}`, `α_{2n+1} = ρ(κ/(2n+1−2κ), κ/(2n+1+2κ)) S_{2n+1}`,
/// `S_n = Σ_{i<n} α_{n−1−i} B_i`. `ρ(p, q)` acts by `p` on the `σ = −1` rows.
pub fn alpha_recurrence(
    irrep: &IrrepData,
    kappa: f64,
    chart: &FaceChart,
    alpha0: &CMat,
    m: usize,
) -> Result<(Vec<CMat>, f64)> {
    check_kappa(kappa, m)?;
    let b = b_stream(irrep, chart, m);
    let signs = irrep.sigma_signs();
    let mut alphas = vec![alpha0.clone()];
    let mut residual: f64 = 0.0;
    for n in 1..=m {
        let mut s = CMat::zeros(irrep.n_tau, irrep.n_tau);
        for i in 0..n {
            s += &alphas[n - 1 - i] * &b[i];
        }
        let nf = n as f64;
        for (a, sa) in signs.iter().enumerate() {
            let f = if n % 2 == 0 {
                kappa / nf
            } else if *sa < 0.0 {
                kappa / (nf - 2.0 * kappa)
            } else {
                kappa / (nf + 2.0 * kappa)
            };
            for col in 0..irrep.n_tau {
                s[(a, col)] *= f;
            }
        }
        let (a, r) = project_parity(irrep, s, n);
        residual = residual.max(r);
        alphas.push(a);
    }
    Ok((alphas, residual))
}

fn check_kappa(kappa: f64, m: usize) -> Result<()> {
    for k in (1..=m).step_by(2) {
        if (2.0 * kappa.abs() - k as f64).abs() < 1e-12 {
            return Err(Error::HalfIntegerKappa(kappa));
        }
    }
    Ok(())
}

/// Majorants `t_n` with `‖α_n‖ ≤ ‖α₀‖ t_n`, for `λ = (N−2)κ₀`, `κ₀ = |κ| < 1/2`.
pub fn tn_bounds(n: usize, kappa: f64, delta0: f64, m: usize) -> Vec<f64> {
    let k0 = kappa.abs();
    let lam = (n - 2) as f64 * k0;
    let mut t = vec![1.0];
    for k in 1..=m {
        let prev = t[k - 1];
        let next = if k == 1 {
            2.0 * lam / (1.0 - 2.0 * k0) / delta0
        } else if k % 2 == 0 {
            let h = (k / 2) as f64;
            (2.0 * lam + 2.0 * h - 1.0 - 2.0 * k0) / (2.0 * h) * prev / delta0
        } else {
            let h = (k / 2) as f64;
            (2.0 * lam + 2.0 * h) / (2.0 * h + 1.0 - 2.0 * k0) * prev / delta0
        };
        t.push(next);
    }
    t
}

fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).map(|i| a + i as f64).product()
}

/// Closed-form majorant of `‖α_n‖ / ‖α₀‖`.
pub fn closed_form_bound(n: usize, kappa: f64, delta0: f64, k: usize) -> f64 {
    let k0 = kappa.abs();
    let lam = (n - 2) as f64 * k0;
    let h = k / 2;
    let fact: f64 = (1..=h).map(|i| i as f64).product();
    if k.is_multiple_of(2) {
        pochhammer(lam, h) * pochhammer(lam + 0.5 - k0, h) / (fact * pochhammer(0.5 - k0, h))
            * delta0.powi(-(k as i32))
    } else {
        pochhammer(lam, h + 1) * pochhammer(lam + 0.5 - k0, h) / (fact * pochhammer(0.5 - k0, h + 1))
            * delta0.powi(-(k as i32))
    }
}

/// Bound on `Σ_{n>m} t_n r^n`.
pub fn tail_sum(n: usize, kappa: f64, delta0: f64, m: usize, r: f64) -> f64 {
    if r >= delta0 {
        return f64::INFINITY;
    }
    let extra = 4000;
    let t = tn_bounds(n, kappa, delta0, m + extra);
    let mut sum = 0.0;
    let mut pw = r.powi(m as i32);
    for tk in &t[m + 1..] {
        pw *= r;
        sum += tk * pw;
    }
    // the two-step ratio of t_n r^n tends to (r/δ₀)² from above
    let last = t[m + extra] * pw;
    let q = (r / delta0).powi(2) * (1.0 + (2.0 * n as f64) / (m + extra) as f64);
    if q < 1.0 {
        sum + 2.0 * last / (1.0 - q)
    } else {
        f64::INFINITY
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesSummary {
    pub terms: usize,
    pub delta0: f64,
    pub alpha0_norm: f64,
    pub alpha_norms: Vec<f64>,
    pub tn_bounds: Vec<f64>,
    pub parity_residual: f64,
    pub det_alpha0_residual: f64,
}

/// The truncated expansion `L₁(x(u,z))` at a fixed chart.
#[derive(Clone, Debug)]
pub struct SeriesExpansion {
    pub chart: FaceChart,
    pub kappa: f64,
    pub gamma: f64,
    pub alphas: Vec<CMat>,
    pub signs: Vec<f64>,
    pub alpha0_error: f64,
    pub parity_residual: f64,
}

/// Radius fraction `|z|/δ₀` below which evaluations are accepted by default.
pub const DEFAULT_RADIUS_FRACTION: f64 = 0.25;

impl SeriesExpansion {
    pub fn new(irrep: &IrrepData, kappa: f64, chart: FaceChart, m: usize, cfg: &FlowConfig) -> Result<Self> {
        check_kappa(kappa, m.max(1))?;
        let a0 = alpha0_solve(irrep, kappa, &chart, cfg)?;
        let (alphas, res) = alpha_recurrence(irrep, kappa, &chart, &a0.value, m)?;
        Ok(SeriesExpansion {
            chart,
            kappa,
            gamma: irrep.gamma,
            alphas,
            signs: irrep.sigma_signs(),
            alpha0_error: a0.error_estimate,
            parity_residual: a0.parity_residual.max(res),
        })
    }

    /// Smallest `M ≥ m_min` with truncation bound below `tol` at radius `r`, then build.
    pub fn with_tolerance(
        irrep: &IrrepData,
        kappa: f64,
        chart: FaceChart,
        r: f64,
        tol: f64,
        m_min: usize,
        cfg: &FlowConfig,
    ) -> Result<Self> {
        let d0 = chart.delta0();
        if r >= d0 {
            return Err(Error::OutsideRadius { radius: r, limit: d0 });
        }
        let mut s = SeriesExpansion::new(irrep, kappa, chart, m_min, cfg)?;
        while s.tail_bound(r) > tol {
            let m = s.terms() * 3 / 2;
            if m > 2000 {
                return Err(Error::OutsideRadius { radius: r, limit: d0 });
            }
            s = SeriesExpansion::new(irrep, kappa, s.chart.clone(), m, cfg)?;
        }
        Ok(s)
    }

    pub fn terms(&self) -> usize {
        self.alphas.len() - 1
    }

    pub fn delta0(&self) -> f64 {
        self.chart.delta0()
    }

    /// Bound on `‖Σ_{n>M} α_n z^n‖` at `|z| = r`.
    pub fn tail_bound(&self, r: f64) -> f64 {
        op_norm(&self.alphas[0]) * tail_sum(self.chart.n, self.kappa, self.delta0(), self.terms(), r)
    }

    /// `Σ_{n≤M} α_n z^n`.
    pub fn power_sum(&self, z: Complex64) -> CMat {
        let mut acc = self.alphas[self.terms()].clone();
        for a in self.alphas[..self.terms()].iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    fn prefactor(&self, z: Complex64) -> Complex64 {
        let u = self.chart.u();
        let s: Complex64 = self.chart.log_x.iter().sum::<Complex64>() + self.chart.log_u * 2.0;
        let q = (Complex64::new(1.0, 0.0) - z * z / (u * u)).ln();
        (-(s + q) * (self.gamma * self.kappa)).exp()
    }

    /// `log z = log u + Log(z/u)`, requiring `Im(z/u) > 0`.
    fn log_z(&self, z: Complex64) -> Result<Complex64> {
        let r = z / self.chart.u();
        if r.im <= 0.0 {
            return Err(Error::WrongHalfDisc(r.im));
        }
        Ok(self.chart.log_u + r.ln())
    }

    /// `L₁(x(u,z))` with the default radius cap `|z| ≤ δ₀/4`.
    pub fn eval(&self, z: Complex64) -> Result<(CMat, f64)> {
        self.eval_within(z, DEFAULT_RADIUS_FRACTION)
    }

    /// `L₁(x(u,z))` and a bound on its truncation error, for `|z| ≤ fraction · δ₀`.
    pub fn eval_within(&self, z: Complex64, fraction: f64) -> Result<(CMat, f64)> {
        let limit = fraction * self.delta0();
        if z.norm() > limit {
            return Err(Error::OutsideRadius { radius: z.norm(), limit });
        }
        let lz = self.log_z(z)?;
        let p = self.prefactor(z);
        let up = (lz * self.kappa).exp();
        let down = (-lz * self.kappa).exp();
        let mut m = self.power_sum(z) * p;
        for (a, s) in self.signs.iter().enumerate() {
            let f = if *s < 0.0 { down } else { up };
            for col in 0..m.ncols() {
                m[(a, col)] *= f;
            }
        }
        let scale = p.norm() * up.norm().max(down.norm());
        Ok((m, scale * self.tail_bound(z.norm())))
    }

    pub fn summary(&self, irrep: &IrrepData) -> SeriesSummary {
        let det = self.alphas[0].determinant();
        let closed = det_alpha0_closed_form(irrep, self.kappa, &self.chart);
        let a0 = op_norm(&self.alphas[0]);
        SeriesSummary {
            terms: self.terms(),
            delta0: self.delta0(),
            alpha0_norm: a0,
            alpha_norms: self.alphas.iter().map(op_norm).collect(),
            tn_bounds: tn_bounds(self.chart.n, self.kappa, self.delta0(), self.terms())
                .into_iter()
                .map(|t| t * a0)
                .collect(),
            parity_residual: self.parity_residual,
            det_alpha0_residual: (det - closed).norm() / closed.norm(),
        }
    }
}
