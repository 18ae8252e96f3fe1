use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::CMat;
use crate::odeflow::{global_cache, integrate_l, l_in_c0, margin, AnglePath, CacheKey, FlowConfig, TorusPoint};
use crate::symgroup::{IrrepData, Perm};

/// Trapezoid grid on `T^N` with `θ₁ = 0`.
///
/// Lattice `ℓ` has nodes `θ_j = (k_j + m_j/N) h`, `h = 2π/P`, where `(m_2, …, m_N)` runs over all
/// arrangements of `{1, …, N−1}`. The union is closed under `S_N` followed by a rotation, so the
/// discrete measure is exactly permutation invariant, and no node lies on a diagonal.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuadratureGrid {
    pub n: usize,
    pub points_per_angle: usize,
    /// Nodes with `min |x_i − x_j| < δ` are dropped.
    pub exclusion_margin: f64,
    pub offsets: Vec<Vec<usize>>,
}

fn arrangements(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in arrangements(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

impl QuadratureGrid {
    pub fn new(n: usize, points_per_angle: usize) -> Self {
        let items: Vec<usize> = (1..n).collect();
        let offsets = arrangements(&items)
            .into_iter()
            .map(|a| std::iter::once(0).chain(a).collect())
            .collect();
        QuadratureGrid { n, points_per_angle, exclusion_margin: 0.0, offsets }
    }

    pub fn with_exclusion(mut self, delta: f64) -> Self {
        self.exclusion_margin = delta;
        self
    }

    /// Grid with twice the points per angle and the same relative offsets.
    pub fn refined(&self) -> Self {
        QuadratureGrid { points_per_angle: 2 * self.points_per_angle, ..self.clone() }
    }

    pub fn h(&self) -> f64 {
        2.0 * PI / self.points_per_angle as f64
    }

    pub fn nodes_per_lattice(&self) -> usize {
        self.points_per_angle.pow(self.n as u32 - 1)
    }

    pub fn len(&self) -> usize {
        self.offsets.len() * self.nodes_per_lattice()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Weight of each retained node.
    pub fn weight(&self) -> f64 {
        1.0 / self.len() as f64
    }

    /// Node angles in units of `h/N`, node `idx` in lattice-major, row-major order (last angle fastest).
    pub fn node_units(&self, idx: usize) -> Vec<i64> {
        let p = self.points_per_angle;
        let per = self.nodes_per_lattice();
        let (lat, mut r) = (idx / per, idx % per);
        let mut k = vec![0usize; self.n];
        for j in (1..self.n).rev() {
            k[j] = r % p;
            r /= p;
        }
        (0..self.n).map(|j| (k[j] * self.n + self.offsets[lat][j]) as i64).collect()
    }

    pub fn node_angles(&self, idx: usize) -> Vec<f64> {
        let unit = self.h() / self.n as f64;
        self.node_units(idx).iter().map(|&u| u as f64 * unit).collect()
    }

    pub fn node_point(&self, idx: usize) -> Vec<Complex64> {
        self.node_angles(idx).iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    pub fn retained(&self, idx: usize) -> bool {
        self.exclusion_margin <= 0.0 || margin(&self.node_point(idx)) >= self.exclusion_margin
    }

    fn label(&self) -> String {
        format!("stagger:N{}:P{}", self.n, self.points_per_angle)
    }
}

/// Representative of a node in the fundamental chamber, rotated to `θ₁ = 0`, in units of `h/N`.
fn c0_units(grid: &QuadratureGrid, idx: usize) -> (Vec<i64>, Perm) {
    let units = grid.node_units(idx);
    let n = grid.n;
    let period = (n * grid.points_per_angle) as i64;
    let x = TorusPoint::new(grid.node_angles(idx));
    let w = x.chamber_perm();
    let y = w.inverse().act_on_point(&units);
    let base = y[0];
    let rep = y.iter().map(|u| (u - base).rem_euclid(period)).collect();
    (rep, w)
}

/// `L` at the chamber representatives of all nodes, and `K(x) = L† H L` at every node.
pub struct KField {
    pub grid: QuadratureGrid,
    /// Node order of [`QuadratureGrid`]; dropped nodes hold zeros.
    pub k: Vec<CMat>,
}

fn rep_angles(grid: &QuadratureGrid, units: &[i64]) -> Vec<f64> {
    let unit = grid.h() / grid.n as f64;
    units.iter().map(|&u| u as f64 * unit).collect()
}

/// `L` on the distinct chamber representatives, computed row by row: the first node of a row
/// (all angles but the last fixed) from `x₀`, the rest by short flows along the row.
fn l_table(
    irrep: &IrrepData,
    kappa: f64,
    grid: &QuadratureGrid,
    reps: &[Vec<i64>],
    cfg: &FlowConfig,
) -> Result<Vec<CMat>> {
    let n = grid.n;
    let mut rows: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, r) in reps.iter().enumerate() {
        rows.entry(r[..n - 1].to_vec()).or_default().push(i);
    }
    let rows: Vec<Vec<usize>> = rows
        .into_values()
        .map(|mut v| {
            v.sort_by_key(|&i| reps[i][n - 1]);
            v
        })
        .collect();
    let solved: Vec<Vec<(usize, CMat)>> = rows
        .par_iter()
        .map(|row| -> Result<Vec<(usize, CMat)>> {
            let mut out = Vec::with_capacity(row.len());
            let first = rep_angles(grid, &reps[row[0]]);
            let mut l = l_in_c0(irrep, kappa, &TorusPoint::new(first.clone()), cfg)?.value;
            let mut prev = first;
            out.push((row[0], l.clone()));
            for &i in &row[1..] {
                let next = rep_angles(grid, &reps[i]);
                l = integrate_l(irrep, kappa, &AnglePath::new(prev, next.clone()), &l, cfg)?.value;
                prev = next;
                out.push((i, l.clone()));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut table = vec![CMat::zeros(0, 0); reps.len()];
    for (i, l) in solved.into_iter().flatten() {
        table[i] = l;
    }
    Ok(table)
}

impl KField {
    /// Flow values are memoized per `(τ, κ, grid, tolerance)` in the global cache.
    pub fn build(irrep: &IrrepData, kappa: f64, h: &CMat, grid: &QuadratureGrid, cfg: &FlowConfig) -> Result<Self> {
        let nodes: Vec<(Vec<i64>, Perm)> = (0..grid.len()).map(|i| c0_units(grid, i)).collect();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut reps: Vec<Vec<i64>> = Vec::new();
        let node_rep: Vec<usize> = nodes
            .iter()
            .map(|(r, _)| {
                *index.entry(r.clone()).or_insert_with(|| {
                    reps.push(r.clone());
                    reps.len() - 1
                })
            })
            .collect();
        let key = CacheKey::new(
            irrep.tau.parts(),
            kappa,
            format!("{}:tol{:e}", grid.label(), cfg.step.tol),
        );
        let ls = global_cache().get_or_try_insert(key, || l_table(irrep, kappa, grid, &reps, cfg))?;
        let kc0: Vec<CMat> = ls.iter().map(|l| l.adjoint() * h * l).collect();
        let nt = irrep.n_tau;
        let k = (0..grid.len())
            .map(|i| {
                if !grid.retained(i) {
                    return CMat::zeros(nt, nt);
                }
                let (_, w) = &nodes[i];
                let kr = &kc0[node_rep[i]];
                if w.is_identity() {
                    kr.clone()
                } else {
                    let t = irrep.rep(w);
                    t.adjoint() * kr * t
                }
            })
            .collect();
        Ok(KField { grid: grid.clone(), k })
    }
}
