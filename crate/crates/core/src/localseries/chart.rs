use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::I;
use crate::odeflow::{LogPath, Path, TorusPoint};

/// Base `x(u,0) = (x_1, …, x_{N−2}, u, u)` of a face expansion, given by
/// complex logarithms so that every branch is fixed by continuation from
/// `x⁽⁰⁾ = (1, ω, …, ω^{N−3}, ω^{−3/2}, ω^{−3/2})`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FaceChart {
    pub n: usize,
    /// `log x_j`, `j ≤ N−2`.
    pub log_x: Vec<Complex64>,
    pub log_u: Complex64,
}

/// Argument of `u` at the base point `x⁽⁰⁾`, namely `(2N−3)π/N`.
pub fn base_u_angle(n: usize) -> f64 {
    (2 * n - 3) as f64 * PI / n as f64
}

impl FaceChart {
    /// The base point `x⁽⁰⁾`.
    pub fn base(n: usize) -> Self {
        FaceChart {
            n,
            log_x: (0..n - 2).map(|j| I * (2.0 * PI * j as f64 / n as f64)).collect(),
            log_u: I * base_u_angle(n),
        }
    }

    /// `x_j = e^{iθ_j}` and `u = r e^{iφ}` with the angles taken as given (unwrapped).
    pub fn from_angles(theta: &[f64], u_angle: f64, u_radius: f64) -> Self {
        FaceChart {
            n: theta.len() + 2,
            log_x: theta.iter().map(|&t| I * t).collect(),
            log_u: Complex64::new(u_radius.ln(), u_angle),
        }
    }

    /// Chart and `z` for a torus point of the fundamental chamber, using
    /// `x_{N−1} = e^{i(θ−ε)}`, `x_N = e^{i(θ+ε)}`, `u = cos ε e^{iθ}`, `z = i sin ε e^{iθ}`.
    pub fn for_torus_point(x: &TorusPoint) -> (Self, Complex64) {
        let n = x.n();
        let mut th = x.unwrapped();
        // keep θ near the base angle of u so that continuation does not wind
        let shift = ((base_u_angle(n) - (th[n - 2] + th[n - 1]) / 2.0) / (2.0 * PI)).round() * 2.0 * PI;
        for t in th.iter_mut() {
            *t += shift;
        }
        let theta = (th[n - 2] + th[n - 1]) / 2.0;
        let eps = (th[n - 1] - th[n - 2]) / 2.0;
        let chart = FaceChart::from_angles(&th[..n - 2], theta, eps.cos());
        (chart, I * eps.sin() * Complex64::from_polar(1.0, theta))
    }

    /// Chart and `z` for `x₀ = (1, ω, …, ω^{N−1})`: `u = (ω^{−1}+ω^{−2})/2`, `z = (ω^{−1}−ω^{−2})/2`.
    pub fn for_x0(n: usize) -> (Self, Complex64) {
        Self::for_torus_point(&TorusPoint::base(n))
    }

    pub fn xs(&self) -> Vec<Complex64> {
        self.log_x.iter().map(|l| l.exp()).collect()
    }

    pub fn u(&self) -> Complex64 {
        self.log_u.exp()
    }

    /// `δ₀ = min_j |u − x_j|`.
    pub fn delta0(&self) -> f64 {
        let u = self.u();
        self.xs().iter().map(|x| (u - x).norm()).fold(f64::INFINITY, f64::min)
    }

    /// The full point `x(u, z)`.
    pub fn point(&self, z: Complex64) -> Vec<Complex64> {
        let mut p = self.xs();
        let u = self.u();
        p.push(u - z);
        p.push(u + z);
        p
    }

    /// Log-linear path in `(x_1, …, x_{N−2}, u)` from `x⁽⁰⁾` to this base.
    pub fn path_from_base(&self) -> LogPath {
        let b = FaceChart::base(self.n);
        let mut from = b.log_x.clone();
        from.push(b.log_u);
        let mut to = self.log_x.clone();
        to.push(self.log_u);
        LogPath::new(from, to)
    }

    /// Minimal pairwise distance among `(x_1, …, x_{N−2}, u)` along the path, sampled.
    pub fn path_margin(&self, samples: usize) -> f64 {
        let p = self.path_from_base();
        (0..=samples)
            .map(|k| crate::odeflow::margin(&p.point(k as f64 / samples as f64)))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn check_path(&self, floor: f64) -> Result<()> {
        let m = self.path_margin(256);
        if m < floor {
            return Err(Error::PathCollision { distance: m });
        }
        Ok(())
    }
}
