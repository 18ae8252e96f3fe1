use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::CMat;
use crate::symgroup::{IrrepData, Perm};

pub type CVec = DVector<Complex64>;

/// A Laurent polynomial with values in the module, coefficients over the
/// seminormal tableau basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentVPoly {
    nvars: usize,
    dim: usize,
    terms: BTreeMap<Vec<i32>, CVec>,
}

/// Coefficients with modulus below this are dropped.
const ZERO: f64 = 1e-300;

fn negligible(v: &CVec) -> bool {
    v.iter().all(|z| z.norm() <= ZERO)
}

impl LaurentVPoly {
    pub fn zero(nvars: usize, dim: usize) -> Self {
        LaurentVPoly { nvars, dim, terms: BTreeMap::new() }
    }

    pub fn monomial(alpha: Vec<i32>, coeff: CVec) -> Self {
        let mut p = Self::zero(alpha.len(), coeff.len());
        p.add_term(alpha, &coeff);
        p
    }

    /// `x^α ⊗ T_k`.
    pub fn basis_monomial(alpha: Vec<i32>, dim: usize, k: usize) -> Self {
        let mut v = CVec::zeros(dim);
        v[k] = Complex64::new(1.0, 0.0);
        Self::monomial(alpha, v)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &CVec)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[i32]) -> Option<&CVec> {
        self.terms.get(alpha)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, alpha: Vec<i32>, coeff: &CVec) {
        debug_assert_eq!(alpha.len(), self.nvars);
        match self.terms.entry(alpha) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if negligible(e.get()) {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !negligible(coeff) {
                    e.insert(coeff.clone());
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, v) in &other.terms {
            out.add_term(a.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), &(v * s));
        }
        out
    }

    /// Multiply every coefficient vector by the matrix `m` on the left.
    pub fn map_coeffs(&self, m: &CMat) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), &(m * v));
        }
        out
    }

    /// Multiply by `x^β`.
    pub fn shift(&self, beta: &[i32]) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (a, v) in &self.terms {
            let b: Vec<i32> = a.iter().zip(beta).map(|(x, y)| x + y).collect();
            out.terms.insert(b, v.clone());
        }
        out
    }

    /// Multiply by `e_N^m = (x_1⋯x_N)^m`.
    pub fn shift_en(&self, m: i32) -> Self {
        self.shift(&vec![m; self.nvars])
    }

    /// `p(xw)` without acting on values.
    pub fn permute_vars(&self, w: &Perm) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (a, v) in &self.terms {
            out.terms.insert(w.act_on_exponent(a), v.clone());
        }
        out
    }

    /// `(wp)(x) = τ(w) p(xw)` with `tau_w` the seminormal matrix of `w`.
    pub fn act(&self, w: &Perm, tau_w: &CMat) -> Self {
        self.permute_vars(w).map_coeffs(tau_w)
    }

    /// Same as [`act`](Self::act) with the matrix looked up in `irrep`.
    pub fn act_irrep(&self, irrep: &IrrepData, w: &Perm) -> Self {
        self.act(w, &irrep.rep_seminormal(w))
    }

    /// Total degrees present, sorted.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.terms.keys().map(|a| a.iter().sum()).collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn homogeneous_part(&self, degree: i32) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (a, v) in &self.terms {
            if a.iter().sum::<i32>() == degree {
                out.terms.insert(a.clone(), v.clone());
            }
        }
        out
    }

    pub fn eval(&self, x: &[Complex64]) -> CVec {
        let mut out = CVec::zeros(self.dim);
        for (a, v) in &self.terms {
            let mono: Complex64 = x.iter().zip(a).map(|(xi, &e)| xi.powi(e)).product();
            out += v * mono;
        }
        out
    }

    /// Largest coefficient modulus.
    pub fn max_coeff(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|v| v.iter().map(|z| z.norm()))
            .fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.sub(other).max_coeff()
    }

    pub fn to_terms(&self) -> Vec<TermOut> {
        self.terms
            .iter()
            .map(|(a, v)| TermOut { alpha: a.clone(), coeff: v.iter().map(|z| [z.re, z.im]).collect() })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermOut {
    pub alpha: Vec<i32>,
    pub coeff: Vec<[f64; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::build_irrep;
    use rand::SeedableRng;

    #[test]
    fn cancellation_drops_terms() {
        let p = LaurentVPoly::basis_monomial(vec![1, -1, 0], 2, 0);
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.add(&p).len(), 1);
    }

    #[test]
    fn action_is_a_left_action() {
        let r = build_irrep(&"2,1".parse().unwrap()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let p = LaurentVPoly::basis_monomial(vec![2, -1, 0], 2, 1)
            .add(&LaurentVPoly::basis_monomial(vec![0, 1, 3], 2, 0));
        for _ in 0..10 {
            let a = Perm::random(3, &mut rng);
            let b = Perm::random(3, &mut rng);
            let lhs = p.act_irrep(&r, &(&a * &b));
            let rhs = p.act_irrep(&r, &b).act_irrep(&r, &a);
            assert!(lhs.dist(&rhs) < 1e-12);
        }
    }

    #[test]
    fn evaluation_respects_permutation() {
        let p = LaurentVPoly::basis_monomial(vec![2, -1, 1], 1, 0);
        let w = Perm::from_images(vec![1, 2, 0]).unwrap();
        let x = [Complex64::new(0.3, 1.0), Complex64::new(-2.0, 0.5), Complex64::new(1.5, -0.2)];
        let lhs = p.permute_vars(&w).eval(&x)[0];
        let rhs = p.eval(&w.act_on_point(&x))[0];
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
