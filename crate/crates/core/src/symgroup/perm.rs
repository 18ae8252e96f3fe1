use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}` stored by its images.
///
/// Composition follows functions: `(a * b)(i) = a(b(i))`. Points are acted on
/// from the right, `(x w)_i = x_{w(i)}`, so `x (w1 w2) = (x w1) w2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    /// Transposition `(i, j)`, 0-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i, j);
        p
    }

    /// Simple reflection `s_i = (i, i+1)`, 0-based.
    pub fn simple(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    /// The n-cycle `w0 = (1,2,…,n)`, i.e. `w0(i) = i+1 mod n`.
    pub fn long_cycle(n: usize) -> Self {
        Perm((0..n).map(|i| (i + 1) % n).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            v.swap(i, j);
        }
        Perm(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, m: i64) -> Perm {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.n());
        for _ in 0..m.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// A reduced word `[a_1, …, a_k]` with `self = s_{a_1} ⋯ s_{a_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            // w = (w s_i) s_i and w s_i has one inversion fewer
            w.swap(i, i + 1);
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// `(x w)_i = x_{w(i)}`.
    pub fn act_on_point<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.0.iter().map(|&j| x[j].clone()).collect()
    }

    /// `(w α)_i = α_{w^{-1}(i)}`, so that `(x w)^α = x^{w α}`.
    pub fn act_on_exponent(&self, alpha: &[i32]) -> Vec<i32> {
        let mut out = vec![0; alpha.len()];
        for (i, &a) in alpha.iter().enumerate() {
            out[self.0[i]] = a;
        }
        out
    }
}

impl std::ops::Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}
