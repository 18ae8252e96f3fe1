use num_traits::{One, Zero};
use serde::Serialize;

use super::partition::Partition;
use super::perm::Perm;
use super::qmatrix::{q, to_f64, QMatrix, Rational};
use super::tableau::{enumerate_rsyt, Rsyt};
use crate::error::Result;
use crate::linalg::CMat;

/// An irreducible S_N module in Young's seminormal basis of reverse standard
/// tableaux, together with its orthogonal form.
///
/// The seminormal matrices are exact. All floating point data handed to the
/// numerical modules uses the orthogonal form `D τ(w) D⁻¹` with
/// `D = diag(√⟨T,T⟩₀)`, except where noted as seminormal.
#[derive(Clone, Debug)]
pub struct IrrepData {
    pub tau: Partition,
    pub n_tau: usize,
    pub m_tau: usize,
    pub basis: Vec<Rsyt>,
    /// Exact seminormal `τ(s_i)` for `s_i = (i, i+1)`, 0-based `i` in `0..N-1`.
    pub gen: Vec<QMatrix>,
    pub weights: Vec<Rational>,
    /// `S₁(τ)/N`.
    pub gamma: f64,
    /// `tr τ((1,2))`.
    pub lambda_trace: f64,
    sqrt_w: Vec<f64>,
    trans_sn: Vec<CMat>,
    trans_on: Vec<CMat>,
    upsilon_pows: Vec<CMat>,
}

impl IrrepData {
    pub fn n(&self) -> usize {
        self.tau.n()
    }

    /// Exact seminormal matrix of `w`.
    pub fn rep_exact(&self, w: &Perm) -> QMatrix {
        w.reduced_word()
            .iter()
            .fold(QMatrix::identity(self.n_tau), |acc, &a| &acc * &self.gen[a])
    }

    /// Orthogonal-form matrix of `w`.
    pub fn rep(&self, w: &Perm) -> CMat {
        self.to_orthogonal(&self.rep_exact(w))
    }

    /// Seminormal matrix of `w` in floating point.
    pub fn rep_seminormal(&self, w: &Perm) -> CMat {
        self.rep_exact(w).to_complex()
    }

    fn to_orthogonal(&self, m: &QMatrix) -> CMat {
        let f = m.to_complex();
        CMat::from_fn(self.n_tau, self.n_tau, |i, j| f[(i, j)] * (self.sqrt_w[i] / self.sqrt_w[j]))
    }

    /// Orthogonal `τ((i,j))`, 0-based, `i ≠ j`.
    pub fn transposition(&self, i: usize, j: usize) -> &CMat {
        &self.trans_on[i * self.n() + j]
    }

    /// Seminormal `τ((i,j))`, 0-based, `i ≠ j`.
    pub fn transposition_seminormal(&self, i: usize, j: usize) -> &CMat {
        &self.trans_sn[i * self.n() + j]
    }

    /// `σ = τ((N−1,N))`.
    pub fn sigma(&self) -> &CMat {
        let n = self.n();
        self.transposition(n - 2, n - 1)
    }

    /// `υ = τ(w₀)` in orthogonal form.
    pub fn upsilon(&self) -> &CMat {
        &self.upsilon_pows[1 % self.n()]
    }

    /// `υ^k` for any integer `k`.
    pub fn upsilon_pow(&self, k: i64) -> &CMat {
        let n = self.n() as i64;
        &self.upsilon_pows[k.rem_euclid(n) as usize]
    }

    /// `σ` diagonal entries, `−1` on the first `m_τ` basis vectors.
    pub fn sigma_signs(&self) -> Vec<f64> {
        (0..self.n_tau).map(|k| if k < self.m_tau { -1.0 } else { 1.0 }).collect()
    }

    /// `c(i, T_k)` for 1-based entry `i`.
    pub fn content(&self, k: usize, i: usize) -> i32 {
        self.basis[k].content(i)
    }

    /// `√⟨T,T⟩₀` per basis tableau, the seminormal-to-orthogonal scaling.
    pub fn sqrt_weights(&self) -> &[f64] {
        &self.sqrt_w
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(|&w| to_f64(w)).collect()
    }
}

/// `⟨T,T⟩₀ = ∏_{i<j, c(i)≤c(j)−2} (1 − 1/(c(i)−c(j))²)`.
pub fn form_weight(t: &Rsyt) -> Rational {
    let c = t.content_vector();
    let mut w = Rational::one();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if c[i] <= c[j] - 2 {
                let d = (c[i] - c[j]) as i128;
                w *= Rational::one() - q(1, d * d);
            }
        }
    }
    w
}

fn seminormal_generator(basis: &[Rsyt], i: usize) -> QMatrix {
    let nt = basis.len();
    let mut m = QMatrix::zeros(nt, nt);
    for (k, t) in basis.iter().enumerate() {
        let b = q(1, (t.content(i) - t.content(i + 1)) as i128);
        m[(k, k)] = b;
        if let Some(swapped) = t.swap_adjacent(i) {
            let k2 = basis.iter().position(|s| *s == swapped).expect("swap stays in basis");
            m[(k2, k)] = if b > Rational::zero() { Rational::one() } else { Rational::one() - b * b };
        }
    }
    m
}

pub fn build_irrep(tau: &Partition) -> Result<IrrepData> {
    let basis = enumerate_rsyt(tau)?;
    let n = tau.n();
    let n_tau = basis.len();
    let m_tau = basis.iter().filter(|t| t.content(n - 1) == -1).count();
    let gen: Vec<QMatrix> = (1..n).map(|i| seminormal_generator(&basis, i)).collect();
    let weights: Vec<Rational> = basis.iter().map(form_weight).collect();
    let sqrt_w: Vec<f64> = weights.iter().map(|&w| to_f64(w).sqrt()).collect();
    let s1 = tau.content_sum() as f64;
    let gamma = s1 / n as f64;

    let mut irrep = IrrepData {
        tau: tau.clone(),
        n_tau,
        m_tau,
        basis,
        gen,
        weights,
        gamma,
        lambda_trace: 0.0,
        sqrt_w,
        trans_sn: Vec::new(),
        trans_on: Vec::new(),
        upsilon_pows: Vec::new(),
    };
    let mut trans_sn = Vec::with_capacity(n * n);
    let mut trans_on = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let exact = if i == j {
                QMatrix::identity(n_tau)
            } else {
                irrep.rep_exact(&Perm::transposition(n, i, j))
            };
            trans_sn.push(exact.to_complex());
            trans_on.push(irrep.to_orthogonal(&exact));
        }
    }
    let w0 = Perm::long_cycle(n);
    let ups_pows = (0..n as i64).map(|k| irrep.rep(&w0.pow(k))).collect();
    irrep.lambda_trace = to_f64(irrep.rep_exact(&Perm::transposition(n, 0, 1)).trace());
    irrep.trans_sn = trans_sn;
    irrep.trans_on = trans_on;
    irrep.upsilon_pows = ups_pows;
    Ok(irrep)
}

/// Summary used by the `repr` report.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrrepSummary {
    pub tau: Vec<usize>,
    pub n: usize,
    pub n_tau: usize,
    pub m_tau: usize,
    pub gamma: f64,
    pub lambda_trace: f64,
    pub weights: Vec<[i128; 2]>,
    pub content_vectors: Vec<Vec<i32>>,
}

impl From<&IrrepData> for IrrepSummary {
    fn from(r: &IrrepData) -> Self {
        IrrepSummary {
            tau: r.tau.parts().to_vec(),
            n: r.n(),
            n_tau: r.n_tau,
            m_tau: r.m_tau,
            gamma: r.gamma,
            lambda_trace: r.lambda_trace,
            weights: r.weights.iter().map(|w| [*w.numer(), *w.denom()]).collect(),
            content_vectors: r.basis.iter().map(|t| t.content_vector().to_vec()).collect(),
        }
    }
}

/// Largest exact deviations in the defining identities; all are zero for a correct build.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantResiduals {
    pub involution: f64,
    pub braid: f64,
    pub jucys_murphy: f64,
    pub form_invariance: f64,
    pub sigma_diagonal: f64,
}

impl IrrepData {
    /// Generator relations, Jucys–Murphy eigenvalues, `τ(s_i)ᵀ G τ(s_i) = G`, and the shape of σ,
    /// evaluated in exact arithmetic.
    pub fn invariant_residuals(&self) -> InvariantResiduals {
        let n = self.n();
        let nt = self.n_tau;
        let g = &self.gen;
        let dev = |a: &QMatrix, b: &QMatrix| to_f64((a - b).max_abs());
        let mut inv: f64 = 0.0;
        let mut braid: f64 = 0.0;
        for i in 0..g.len() {
            inv = inv.max(dev(&(&g[i] * &g[i]), &QMatrix::identity(nt)));
            for j in i + 1..g.len() {
                let d = if j == i + 1 {
                    dev(&(&(&g[i] * &g[j]) * &g[i]), &(&(&g[j] * &g[i]) * &g[j]))
                } else {
                    dev(&(&g[i] * &g[j]), &(&g[j] * &g[i]))
                };
                braid = braid.max(d);
            }
        }
        let mut jm: f64 = 0.0;
        for i in 0..n {
            let mut m = QMatrix::zeros(nt, nt);
            for j in i + 1..n {
                m = &m + &self.rep_exact(&Perm::transposition(n, i, j));
            }
            let diag = QMatrix::diagonal(&self.basis.iter().map(|t| q(t.content(i + 1) as i128, 1)).collect::<Vec<_>>());
            jm = jm.max(dev(&m, &diag));
        }
        let form = QMatrix::diagonal(&self.weights);
        let fi = g.iter().map(|s| dev(&(&(&s.transpose() * &form) * s), &form)).fold(0.0, f64::max);
        let sigma = self.rep_exact(&Perm::transposition(n, n - 2, n - 1));
        let expect = QMatrix::diagonal(
            &(0..nt).map(|k| if k < self.m_tau { q(-1, 1) } else { q(1, 1) }).collect::<Vec<_>>(),
        );
        InvariantResiduals {
            involution: inv,
            braid,
            jucys_murphy: jm,
            form_invariance: fi,
            sigma_diagonal: dev(&sigma, &expect),
        }
    }
}
