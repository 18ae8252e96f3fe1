use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use super::grid::KField;
use super::pairing::{error_exponent, Quadrature};
use crate::error::{Error, Result};
use crate::linalg::{c, fro, CMat};
use crate::symgroup::IrrepData;

/// `K̂_α = ∫ K(x) x^{−α} dm(x)` for `α ∈ Z^N`, `Σα = 0`, from one grid.
pub struct FourierTable {
    n: usize,
    p: usize,
    nt: usize,
    offsets: Vec<Vec<usize>>,
    /// Per lattice, per matrix entry (row-major), the `(N−1)`-dimensional DFT.
    spectra: Vec<Vec<Vec<Complex64>>>,
}

fn fft_axes(data: &mut [Complex64], p: usize, dims: usize, planner: &mut FftPlanner<f64>) {
    let fft = planner.plan_fft_forward(p);
    let mut line = vec![Complex64::new(0.0, 0.0); p];
    for axis in 0..dims {
        let stride = p.pow((dims - 1 - axis) as u32);
        for start in 0..data.len() {
            // first element of each line along `axis`
            if !(start / stride).is_multiple_of(p) {
                continue;
            }
            for (k, v) in line.iter_mut().enumerate() {
                *v = data[start + k * stride];
            }
            fft.process(&mut line);
            for (k, v) in line.iter().enumerate() {
                data[start + k * stride] = *v;
            }
        }
    }
}

impl FourierTable {
    pub fn new(field: &KField, nt: usize) -> Self {
        let grid = &field.grid;
        let (n, p) = (grid.n, grid.points_per_angle);
        let per = grid.nodes_per_lattice();
        let mut planner = FftPlanner::new();
        let spectra = (0..grid.offsets.len())
            .map(|lat| {
                (0..nt * nt)
                    .map(|e| {
                        let mut data: Vec<Complex64> =
                            (0..per).map(|r| field.k[lat * per + r][(e / nt, e % nt)]).collect();
                        fft_axes(&mut data, p, n - 1, &mut planner);
                        data
                    })
                    .collect()
            })
            .collect();
        FourierTable { n, p, nt, offsets: grid.offsets.clone(), spectra }
    }

    pub fn coefficient(&self, alpha: &[i32]) -> Result<CMat> {
        if alpha.len() != self.n || alpha.iter().any(|a| 2 * a.unsigned_abs() as usize >= self.p) {
            return Err(Error::MissingCoefficient(alpha.to_vec()));
        }
        if alpha.iter().sum::<i32>() != 0 {
            return Ok(CMat::zeros(self.nt, self.nt));
        }
        let p = self.p as i64;
        let mut idx = 0usize;
        for a in &alpha[1..] {
            idx = idx * self.p + (*a as i64).rem_euclid(p) as usize;
        }
        let h = 2.0 * PI / self.p as f64;
        let norm = 1.0 / (self.offsets.len() * self.p.pow(self.n as u32 - 1)) as f64;
        let mut out = CMat::zeros(self.nt, self.nt);
        for (lat, off) in self.offsets.iter().enumerate() {
            // nodes sit at (k + m/N) h, so the DFT misses the phase e^{−i h Σ α_j m_j / N}
            let shift: f64 = alpha.iter().zip(off).map(|(a, m)| *a as f64 * *m as f64).sum::<f64>() * h / self.n as f64;
            let phase = Complex64::from_polar(norm, -shift);
            for e in 0..self.nt * self.nt {
                out[(e / self.nt, e % self.nt)] += self.spectra[lat][e][idx] * phase;
            }
        }
        Ok(out)
    }
}

/// Fourier coefficients from a grid pair with the Richardson value and error.
pub struct FourierK {
    pub coarse: FourierTable,
    pub fine: FourierTable,
    pub exponent: f64,
}

#[derive(Clone, Debug)]
pub struct Coefficient {
    pub value: CMat,
    pub error: f64,
}

impl FourierK {
    pub fn new(q: &Quadrature) -> Self {
        let nt = q.irrep.n_tau;
        FourierK {
            coarse: FourierTable::new(&q.coarse, nt),
            fine: FourierTable::new(&q.fine, nt),
            exponent: error_exponent(q.kappa),
        }
    }

    pub fn coefficient(&self, alpha: &[i32]) -> Result<Coefficient> {
        let a = self.coarse.coefficient(alpha)?;
        let b = self.fine.coefficient(alpha)?;
        let f = 2f64.powf(self.exponent);
        Ok(Coefficient { value: (&b * c(f) - &a) / c(f - 1.0), error: fro(&(b - a)) / (f - 1.0) })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FcrecLine {
    pub alpha: Vec<i32>,
    pub i: usize,
    pub residual: f64,
    pub error_estimate: f64,
    pub pass: bool,
}

/// Subsets of `items` of each size, as index lists.
fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0..1usize << items.len())
        .map(|mask| items.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v).collect())
        .collect()
}

/// `LHS − RHS` of the recurrence
/// `Σ_ℓ (−1)^ℓ (α_i+ℓ) Σ_{J⊂E_i, #J=ℓ} K̂_{α+ℓε_i−ε_J}
///   = κ Σ_{j≠i} Σ_ℓ (−1)^ℓ Σ_{J⊂E_ij, #J=ℓ} { τ((i,j)) K̂_{α−ε_J+(ℓ+1)ε_i−ε_j} + K̂_{α−ε_J+ℓε_i} τ((i,j)) }`
/// with `E_i = {1..N}∖{i}`, `E_ij = {1..N}∖{i,j}`. Each coefficient comes with an error bound;
/// returns the difference, the summed error, and the largest `‖K̂‖` involved.
pub fn fcrec_terms(
    irrep: &IrrepData,
    kappa: f64,
    k: &mut dyn FnMut(&[i32]) -> Result<Coefficient>,
    alpha: &[i32],
    i: usize,
) -> Result<(CMat, f64, f64)> {
    let n = alpha.len();
    let nt = irrep.n_tau;
    let mut diff = CMat::zeros(nt, nt);
    let mut err = 0.0;
    let mut scale: f64 = 0.0;
    let mut add = |m: CMat, e: f64, coef: f64, diff: &mut CMat, scale: &mut f64| {
        *scale = scale.max(fro(&m));
        *diff += m * c(coef);
        err += coef.abs() * e;
    };
    let e_i: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    for set in subsets(&e_i) {
        let l = set.len() as i32;
        let mut b = alpha.to_vec();
        b[i] += l;
        for &j in &set {
            b[j] -= 1;
        }
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let co = k(&b)?;
        add(co.value, co.error, sign * (alpha[i] + l) as f64, &mut diff, &mut scale);
    }
    for j in (0..n).filter(|&j| j != i) {
        let t = irrep.transposition(i, j);
        let e_ij: Vec<usize> = (0..n).filter(|&m| m != i && m != j).collect();
        for set in subsets(&e_ij) {
            let l = set.len() as i32;
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let mut b = alpha.to_vec();
            for &m in &set {
                b[m] -= 1;
            }
            let mut b1 = b.clone();
            b1[i] += l + 1;
            b1[j] -= 1;
            let mut b2 = b;
            b2[i] += l;
            let c1 = k(&b1)?;
            let c2 = k(&b2)?;
            let tn = fro(t);
            add(t * &c1.value, c1.error * tn, -kappa * sign, &mut diff, &mut scale);
            add(&c2.value * t, c2.error * tn, -kappa * sign, &mut diff, &mut scale);
        }
    }
    Ok((diff, err, scale))
}

/// Normalized residual of the recurrence for `K̂` and the propagated two-grid error.
/// Relative roundoff floor under the two-grid estimate.
pub const FCREC_FLOOR: f64 = 1e-12;

pub fn fcrec_residual(irrep: &IrrepData, kappa: f64, table: &FourierK, alpha: &[i32], i: usize) -> Result<FcrecLine> {
    let mut memo: HashMap<Vec<i32>, Coefficient> = HashMap::new();
    let mut get = |a: &[i32]| -> Result<Coefficient> {
        if let Some(v) = memo.get(a) {
            return Ok(v.clone());
        }
        let v = table.coefficient(a)?;
        memo.insert(a.to_vec(), v.clone());
        Ok(v)
    };
    let (diff, err, scale) = fcrec_terms(irrep, kappa, &mut get, alpha, i)?;
    // all terms vanish for constant K, so ‖K̂₀‖ bounds the scale from below
    let scale = scale.max(fro(&get(&vec![0; alpha.len()])?.value));
    let residual = fro(&diff) / scale;
    let error_estimate = err / scale;
    let pass = residual <= 3.0 * error_estimate.max(FCREC_FLOOR);
    Ok(FcrecLine { alpha: alpha.to_vec(), i, residual, error_estimate, pass })
}

/// Residual with `K̂_α = I` for every `α ∈ Z_N` (and zero off `Z_N`).
pub fn constant_solution_residual(irrep: &IrrepData, kappa: f64, alpha: &[i32], i: usize) -> Result<f64> {
    let nt = irrep.n_tau;
    let mut get = |a: &[i32]| -> Result<Coefficient> {
        let v = if a.iter().sum::<i32>() == 0 { CMat::identity(nt, nt) } else { CMat::zeros(nt, nt) };
        Ok(Coefficient { value: v, error: 0.0 })
    };
    let (diff, _, scale) = fcrec_terms(irrep, kappa, &mut get, alpha, i)?;
    Ok(fro(&diff) / scale)
}

/// `α ∈ Z^N` with `Σα = 0` and `Σ|α_j| ≤ max_norm`.
pub fn zero_sum_labels(n: usize, max_norm: i32) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(j: usize, cur: &mut Vec<i32>, m: i32, out: &mut Vec<Vec<i32>>) {
        if j == cur.len() {
            if cur.iter().sum::<i32>() == 0 && cur.iter().map(|a| a.abs()).sum::<i32>() <= m {
                out.push(cur.clone());
            }
            return;
        }
        for a in -m..=m {
            cur[j] = a;
            rec(j + 1, cur, m, out);
        }
        cur[j] = 0;
    }
    rec(0, &mut cur, max_norm, &mut out);
    out
}
