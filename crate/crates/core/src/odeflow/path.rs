use num_complex::Complex64;

use super::point::{base_angles, TorusPoint};
use crate::linalg::I;

/// A smooth path `t ↦ x(t)`, `t ∈ [0, 1]`, in `(C^×)^N`.
pub trait Path: Sync {
    fn point(&self, t: f64) -> Vec<Complex64>;
    fn velocity(&self, t: f64) -> Vec<Complex64>;
}

/// `x_j(t) = e^{i g_j(t)}` with `g_j` linear between two angle vectors.
#[derive(Clone, Debug)]
pub struct AnglePath {
    pub from: Vec<f64>,
    pub to: Vec<f64>,
}

impl AnglePath {
    pub fn new(from: Vec<f64>, to: Vec<f64>) -> Self {
        AnglePath { from, to }
    }

    /// The straight path in angles from `x₀` (angles `2π(j−1)/N`) to a point
    /// of the fundamental chamber; it stays in the chamber.
    pub fn from_base(x: &TorusPoint) -> Self {
        AnglePath { from: base_angles(x.n()), to: x.unwrapped() }
    }

    pub fn angles(&self, t: f64) -> Vec<f64> {
        self.from.iter().zip(&self.to).map(|(a, b)| (1.0 - t) * a + t * b).collect()
    }
}

impl Path for AnglePath {
    fn point(&self, t: f64) -> Vec<Complex64> {
        self.angles(t).into_iter().map(|g| Complex64::from_polar(1.0, g)).collect()
    }

    fn velocity(&self, t: f64) -> Vec<Complex64> {
        self.angles(t)
            .into_iter()
            .zip(self.from.iter().zip(&self.to))
            .map(|(g, (a, b))| I * (b - a) * Complex64::from_polar(1.0, g))
            .collect()
    }
}

/// Straight segment in `C^N`.
#[derive(Clone, Debug)]
pub struct LinePath {
    pub from: Vec<Complex64>,
    pub to: Vec<Complex64>,
}

impl LinePath {
    pub fn new(from: Vec<Complex64>, to: Vec<Complex64>) -> Self {
        LinePath { from, to }
    }
}

impl Path for LinePath {
    fn point(&self, t: f64) -> Vec<Complex64> {
        self.from.iter().zip(&self.to).map(|(a, b)| a * (1.0 - t) + b * t).collect()
    }

    fn velocity(&self, _t: f64) -> Vec<Complex64> {
        self.from.iter().zip(&self.to).map(|(a, b)| b - a).collect()
    }
}

/// `x_j(t) = exp((1−t) a_j + t b_j)` for complex logarithms `a`, `b`.
#[derive(Clone, Debug)]
pub struct LogPath {
    pub from: Vec<Complex64>,
    pub to: Vec<Complex64>,
}

impl LogPath {
    pub fn new(from: Vec<Complex64>, to: Vec<Complex64>) -> Self {
        LogPath { from, to }
    }

    fn logs(&self, t: f64) -> impl Iterator<Item = Complex64> + '_ {
        self.from.iter().zip(&self.to).map(move |(a, b)| a * (1.0 - t) + b * t)
    }
}

impl Path for LogPath {
    fn point(&self, t: f64) -> Vec<Complex64> {
        self.logs(t).map(|l| l.exp()).collect()
    }

    fn velocity(&self, t: f64) -> Vec<Complex64> {
        self.logs(t)
            .zip(self.from.iter().zip(&self.to))
            .map(|(l, (a, b))| l.exp() * (b - a))
            .collect()
    }
}
