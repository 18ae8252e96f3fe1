use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::grid::{KField, QuadratureGrid};
use crate::error::Result;
use crate::jackpoly::{dunkl_apply, CVec, Label, LaurentVPoly, NsjpBuilder};
use crate::linalg::{c, CMat};
use crate::odeflow::FlowConfig;
use crate::symgroup::{IrrepData, Perm};
use crate::weightsolve::window_tag;

const TILE: usize = 512;

/// `Σ_x w(x) V(x)† K(x) V(x)` with `V` the values of `polys`, orthogonal basis.
///
/// Only equal degrees are paired: the trapezoid sum over `θ₁` annihilates the product of
/// homogeneous parts of degrees `d ≠ d'` whenever `|d − d'| < P`, so this equals the full `T^N` rule.
pub fn gram_on_field(irrep: &IrrepData, field: &KField, polys: &[LaurentVPoly]) -> CMat {
    let grid = &field.grid;
    let d = CMat::from_diagonal(&CVec::from_iterator(irrep.n_tau, irrep.sqrt_weights().iter().map(|&w| c(w))));
    let mut degrees: Vec<i32> = polys.iter().flat_map(|p| p.degrees()).collect();
    degrees.sort();
    degrees.dedup();
    let parts: Vec<Vec<LaurentVPoly>> =
        degrees.iter().map(|&deg| polys.iter().map(|p| p.homogeneous_part(deg)).collect()).collect();
    let m = polys.len();
    let nodes: Vec<usize> = (0..grid.len()).filter(|&i| grid.retained(i)).collect();
    let tiles: Vec<CMat> = nodes
        .par_chunks(TILE)
        .map(|chunk| {
            let mut acc = CMat::zeros(m, m);
            for &i in chunk {
                let x = grid.node_point(i);
                let k = &field.k[i];
                for ps in &parts {
                    let cols: Vec<_> = ps.iter().map(|p| &d * p.eval(&x)).collect();
                    let v = CMat::from_columns(&cols);
                    acc += v.adjoint() * k * v;
                }
            }
            acc
        })
        .collect();
    let mut g = CMat::zeros(m, m);
    for t in tiles {
        g += t;
    }
    g * c(grid.weight())
}

/// Values on a grid and its refinement with the Richardson combination for an error `~ h^p`.
#[derive(Clone, Debug)]
pub struct TwoGrid {
    pub coarse: CMat,
    pub fine: CMat,
    pub value: CMat,
    /// Entrywise `|fine − coarse| / (2^p − 1)`.
    pub error: nalgebra::DMatrix<f64>,
}

impl TwoGrid {
    pub fn combine(coarse: CMat, fine: CMat, p: f64) -> Self {
        let f = 2f64.powf(p);
        let value = (&fine * c(f) - &coarse) / c(f - 1.0);
        let error = (&fine - &coarse).map(|z| z.norm() / (f - 1.0));
        TwoGrid { coarse, fine, value, error }
    }
}

/// Leading quadrature error exponent `1 − 2|κ|` from the face singularity.
pub fn error_exponent(kappa: f64) -> f64 {
    1.0 - 2.0 * kappa.abs()
}

/// `K` tabulated on a grid and on its refinement.
pub struct Quadrature<'a> {
    pub irrep: &'a IrrepData,
    pub kappa: f64,
    pub h: CMat,
    pub coarse: KField,
    pub fine: KField,
}

impl<'a> Quadrature<'a> {
    pub fn new(irrep: &'a IrrepData, kappa: f64, h: CMat, grid: &QuadratureGrid, cfg: &FlowConfig) -> Result<Self> {
        let coarse = KField::build(irrep, kappa, &h, grid, cfg)?;
        let fine = KField::build(irrep, kappa, &h, &grid.refined(), cfg)?;
        Ok(Quadrature { irrep, kappa, h, coarse, fine })
    }

    pub fn gram(&self, polys: &[LaurentVPoly]) -> TwoGrid {
        TwoGrid::combine(
            gram_on_field(self.irrep, &self.coarse, polys),
            gram_on_field(self.irrep, &self.fine, polys),
            error_exponent(self.kappa),
        )
    }

    /// `⟨f, g⟩` and its error estimate.
    pub fn pairing(&self, f: &LaurentVPoly, g: &LaurentVPoly) -> (Complex64, f64) {
        let t = self.gram(&[f.clone(), g.clone()]);
        (t.value[(0, 1)], t.error[(0, 1)])
    }

    fn scale(t: &TwoGrid) -> f64 {
        t.value[(0, 0)].norm().max(t.value[(1, 1)].norm())
    }

    /// `|⟨x_iD_if, g⟩ − ⟨f, x_iD_ig⟩| / max(|⟨f,f⟩|, |⟨g,g⟩|)`.
    pub fn adjointness_residual(&self, i: usize, f: &LaurentVPoly, g: &LaurentVPoly) -> f64 {
        let op = |p: &LaurentVPoly| {
            let mut e = vec![0; p.nvars()];
            e[i] = 1;
            dunkl_apply(self.irrep, self.kappa, i, p).shift(&e)
        };
        let t = self.gram(&[f.clone(), g.clone(), op(f), op(g)]);
        (t.value[(2, 1)] - t.value[(0, 3)]).norm() / Self::scale(&t)
    }

    /// `|⟨x_if, x_ig⟩ − ⟨f, g⟩|` relative to the same scale.
    pub fn isometry_residual(&self, i: usize, f: &LaurentVPoly, g: &LaurentVPoly) -> f64 {
        let mut e = vec![0; f.nvars()];
        e[i] = 1;
        let t = self.gram(&[f.clone(), g.clone(), f.shift(&e), g.shift(&e)]);
        (t.value[(2, 3)] - t.value[(0, 1)]).norm() / Self::scale(&t)
    }

    /// `|⟨wf, wg⟩ − ⟨f, g⟩|` relative to the same scale.
    pub fn invariance_residual(&self, w: &Perm, f: &LaurentVPoly, g: &LaurentVPoly) -> f64 {
        let t = self.gram(&[f.clone(), g.clone(), f.act_irrep(self.irrep, w), g.act_irrep(self.irrep, w)]);
        (t.value[(2, 3)] - t.value[(0, 1)]).norm() / Self::scale(&t)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GramReport {
    pub labels: Vec<String>,
    /// Row-major `[re, im]` pairs, normalized so that `⟨1⊗T₀, 1⊗T₀⟩ = ⟨T₀,T₀⟩₀`.
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub diagonal: Vec<f64>,
    /// `max_{i≠j} |G_ij| / √(G_ii G_jj)`.
    pub off_diag_max: f64,
    /// Largest two-grid error relative to the diagonal scale.
    pub error_estimate: f64,
    pub degree0_weight_ratio: Option<f64>,
    pub expected_weight_ratio: Option<f64>,
    pub normalization: f64,
    pub points_coarse: usize,
    pub points_fine: usize,
    pub window: String,
}

/// Labels `(α, T)` with `α ∈ N₀^N`, `|α| ≤ cap`, degree by degree.
pub fn gram_labels(irrep: &IrrepData, cap: i32) -> Vec<Label> {
    (0..=cap).flat_map(|d| crate::jackpoly::labels_of_degree(irrep, d)).collect()
}

pub fn gram_matrix(q: &Quadrature, cap: i32) -> Result<GramReport> {
    let irrep = q.irrep;
    let labels = gram_labels(irrep, cap);
    let mut builder = NsjpBuilder::new(irrep, q.kappa).with_degree_cap(cap.max(crate::jackpoly::default_degree_cap(irrep.n())));
    let polys: Vec<LaurentVPoly> = labels.iter().map(|l| builder.build(l)).collect::<Result<_>>()?;
    let t = q.gram(&polys);
    let first = labels.iter().position(|l| l.alpha.iter().all(|&a| a == 0) && l.tableau == 0);
    let weights = irrep.weights_f64();
    let normalization = first.map(|i| weights[0] / t.value[(i, i)].re).unwrap_or(1.0);
    let g = &t.value * c(normalization);
    let m = labels.len();
    let diagonal: Vec<f64> = (0..m).map(|i| g[(i, i)].re).collect();
    let mut off: f64 = 0.0;
    let mut err: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let s = (diagonal[i] * diagonal[j]).abs().sqrt();
            err = err.max(t.error[(i, j)] * normalization / s);
            if i != j {
                off = off.max(g[(i, j)].norm() / s);
            }
        }
    }
    let second = labels.iter().position(|l| l.alpha.iter().all(|&a| a == 0) && l.tableau == 1);
    let (ratio, expected) = match (first, second) {
        (Some(a), Some(b)) => (Some(diagonal[b] / diagonal[a]), Some(weights[1] / weights[0])),
        _ => (None, None),
    };
    Ok(GramReport {
        labels: labels.iter().map(|l| l.to_string()).collect(),
        matrix: (0..m).map(|i| (0..m).map(|j| [g[(i, j)].re, g[(i, j)].im]).collect()).collect(),
        diagonal,
        off_diag_max: off,
        error_estimate: err,
        degree0_weight_ratio: ratio,
        expected_weight_ratio: expected,
        normalization,
        points_coarse: q.coarse.grid.len(),
        points_fine: q.fine.grid.len(),
        window: window_tag(irrep.n(), q.kappa).to_string(),
    })
}

impl GramReport {
    /// CSV with a header row of labels.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("label");
        for l in &self.labels {
            s.push(',');
            s.push_str(l);
        }
        s.push('\n');
        for (l, row) in self.labels.iter().zip(&self.matrix) {
            s.push_str(l);
            for v in row {
                s.push_str(&format!(",{:.12e}{:+.12e}i", v[0], v[1]));
            }
            s.push('\n');
        }
        s
    }
}
