use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::irrep::IrrepData;
use super::partition::Partition;
use super::perm::Perm;
use super::qmatrix::to_f64;

/// Eigenvalue profile of `υ = τ(w₀)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StembridgeProfile {
    /// `e_j`, the multiplicity of `ω^j` as an eigenvalue of `υ`.
    pub multiplicities: Vec<usize>,
    /// Coefficients of `F_τ(q)` reduced mod `1 − q^N`.
    pub f_coefficients: Vec<i64>,
    /// `Σ e_j²`, the dimension of the commutant of `υ`.
    pub commutant_dim: usize,
    /// `m_τ² + (n_τ − m_τ)²`, the number of unknowns in the commutation system.
    pub unknowns: usize,
    /// `n_τ² − Σ e_j²`, the number of equations.
    pub equations: usize,
}

/// `F_τ(q) = q^{n(τ)} ∏_{i≤N}(1−q^i) / ∏_{cells}(1−q^{h})`, reduced mod `1 − q^N`.
pub fn fake_degree_mod(tau: &Partition) -> Vec<i64> {
    let n = tau.n();
    let mut num = vec![0i64; tau.n_statistic() + 1];
    num[tau.n_statistic()] = 1;
    for i in 1..=n {
        num = mul_one_minus_qk(&num, i);
    }
    for (r, c) in tau.cells() {
        num = div_one_minus_qk(&num, tau.hook(r, c));
    }
    let mut out = vec![0i64; n];
    for (k, &v) in num.iter().enumerate() {
        out[k % n] += v;
    }
    out
}

fn mul_one_minus_qk(p: &[i64], k: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + k];
    for (i, &v) in p.iter().enumerate() {
        out[i] += v;
        out[i + k] -= v;
    }
    out
}

// Exact division by (1 − q^k): the quotient c satisfies c_i = p_i + c_{i−k}.
fn div_one_minus_qk(p: &[i64], k: usize) -> Vec<i64> {
    let len = p.len() - k;
    let mut c = vec![0i64; len];
    for i in 0..len {
        c[i] = p[i] + if i >= k { c[i - k] } else { 0 };
    }
    debug_assert!((len..p.len()).all(|i| {
        let back = if i >= k && i - k < len { c[i - k] } else { 0 };
        let fwd = if i < len { c[i] } else { 0 };
        fwd - back == p[i]
    }));
    c
}

/// `e_j = (1/N) Σ_k ω^{−jk} tr τ(w₀^k)`, with the traces computed exactly.
pub fn upsilon_multiplicities(irrep: &IrrepData) -> Vec<usize> {
    let n = irrep.n();
    let w0 = Perm::long_cycle(n);
    let traces: Vec<f64> = (0..n as i64).map(|k| to_f64(irrep.rep_exact(&w0.pow(k)).trace())).collect();
    (0..n)
        .map(|j| {
            let s: Complex64 = traces
                .iter()
                .enumerate()
                .map(|(k, &t)| Complex64::from_polar(t, -2.0 * PI * (j * k) as f64 / n as f64))
                .sum();
            (s.re / n as f64).round() as usize
        })
        .collect()
}

pub fn stembridge_profile(irrep: &IrrepData) -> StembridgeProfile {
    let multiplicities = upsilon_multiplicities(irrep);
    let commutant_dim = multiplicities.iter().map(|e| e * e).sum();
    let (nt, mt) = (irrep.n_tau, irrep.m_tau);
    StembridgeProfile {
        f_coefficients: fake_degree_mod(&irrep.tau),
        multiplicities,
        commutant_dim,
        unknowns: mt * mt + (nt - mt) * (nt - mt),
        equations: nt * nt - commutant_dim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::build_irrep;

    #[test]
    fn worked_example_42() {
        let r = build_irrep(&"4,2".parse().unwrap()).unwrap();
        let p = stembridge_profile(&r);
        assert_eq!(p.f_coefficients, vec![2, 1, 2, 1, 2, 1]);
        assert_eq!(p.multiplicities, vec![2, 1, 2, 1, 2, 1]);
        assert_eq!(p.commutant_dim, 15);
        assert_eq!((p.unknowns, p.equations), (45, 66));
    }

    #[test]
    fn q_formula_matches_eigenvalues() {
        for s in ["2,1", "3,1", "2,2", "2,1,1", "3,2", "2,2,1", "3,1,1"] {
            let r = build_irrep(&s.parse().unwrap()).unwrap();
            let p = stembridge_profile(&r);
            let f: Vec<usize> = p.f_coefficients.iter().map(|&v| v as usize).collect();
            assert_eq!(f, p.multiplicities, "{s}");
            assert_eq!(p.multiplicities.iter().sum::<usize>(), r.n_tau);
        }
    }

    #[test]
    fn upsilon_of_21_has_primitive_cube_roots() {
        let r = build_irrep(&"2,1".parse().unwrap()).unwrap();
        assert_eq!(upsilon_multiplicities(&r), vec![0, 1, 1]);
    }
}
