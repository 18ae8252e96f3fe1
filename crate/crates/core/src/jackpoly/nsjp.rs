use std::collections::HashMap;

use num_complex::Complex64;
use serde::Serialize;

use super::laurent::{CVec, LaurentVPoly};
use super::operators::cherednik_apply;
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::symgroup::{IrrepData, Perm};

/// Spectral collisions below this max-norm distance are treated as equal.
pub const COLLISION_TOL: f64 = 1e-8;

/// `r_α(i) = #{j : α_j > α_i} + #{j ≤ i : α_j = α_i}`, returned 0-based.
pub fn rank_function(alpha: &[i32]) -> Perm {
    let images = (0..alpha.len())
        .map(|i| {
            let above = alpha.iter().filter(|&&a| a > alpha[i]).count();
            let ties = alpha[..=i].iter().filter(|&&a| a == alpha[i]).count();
            above + ties - 1
        })
        .collect();
    Perm::from_images(images).expect("rank function is a bijection")
}

/// Label `(α, T)` of a nonsymmetric Jack polynomial; `tableau` indexes the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub alpha: Vec<i32>,
    pub tableau: usize,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a: Vec<String> = self.alpha.iter().map(|v| v.to_string()).collect();
        write!(f, "a={};T={}", a.join(" "), self.tableau)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralVector {
    pub values: Vec<f64>,
    pub label: Label,
}

/// `[α_i + 1 + κ c(r_α(i), T)]_i`.
pub fn spectral_vector(irrep: &IrrepData, kappa: f64, label: &Label) -> SpectralVector {
    let r = rank_function(&label.alpha);
    let values = (0..label.alpha.len())
        .map(|i| label.alpha[i] as f64 + 1.0 + kappa * irrep.content(label.tableau, r.apply(i) + 1) as f64)
        .collect();
    SpectralVector { values, label: label.clone() }
}

/// Exponent vectors in `N₀^n` with sum `d`, in lexicographically decreasing order.
pub fn compositions(n: usize, d: i32) -> Vec<Vec<i32>> {
    fn rec(n: usize, d: i32, prefix: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n - 1, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d >= 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

pub fn default_degree_cap(n: usize) -> i32 {
    match n {
        0..=3 => 4,
        4 => 3,
        _ => 2,
    }
}

/// Matrices of `U_1..U_N` on the homogeneous polynomials of degree `d`,
/// with basis index `monomial * n_τ + tableau`.
pub struct HomogeneousComponent {
    pub degree: i32,
    pub monomials: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    pub u: Vec<CMat>,
}

impl HomogeneousComponent {
    pub fn new(irrep: &IrrepData, kappa: f64, degree: i32) -> Self {
        let n = irrep.n();
        let nt = irrep.n_tau;
        let monomials = compositions(n, degree);
        let index: HashMap<Vec<i32>, usize> =
            monomials.iter().enumerate().map(|(k, a)| (a.clone(), k)).collect();
        let dim = monomials.len() * nt;
        let mut u = vec![CMat::zeros(dim, dim); n];
        for (mi, alpha) in monomials.iter().enumerate() {
            for k in 0..nt {
                let col = mi * nt + k;
                let p = LaurentVPoly::basis_monomial(alpha.clone(), nt, k);
                for (i, ui) in u.iter_mut().enumerate() {
                    for (beta, v) in cherednik_apply(irrep, kappa, i, &p).terms() {
                        let row = index[beta] * nt;
                        for t in 0..nt {
                            ui[(row + t, col)] += v[t];
                        }
                    }
                }
            }
        }
        HomogeneousComponent { degree, monomials, index, u }
    }

    pub fn dim(&self) -> usize {
        self.u.first().map_or(0, |m| m.nrows())
    }

    pub fn position(&self, alpha: &[i32], tableau: usize, nt: usize) -> usize {
        self.index[alpha] * nt + tableau
    }

    pub fn to_poly(&self, v: &CVec, nt: usize) -> LaurentVPoly {
        let n = self.monomials.first().map_or(0, |a| a.len());
        let mut p = LaurentVPoly::zero(n, nt);
        for (mi, alpha) in self.monomials.iter().enumerate() {
            let c = v.rows(mi * nt, nt).into_owned();
            p.add_term(alpha.clone(), &c);
        }
        p
    }

    /// Joint eigenvector with the given eigenvalues: the right singular vector
    /// of the stacked `(U_i − λ_i)` belonging to the smallest singular value.
    /// Also returns the smallest and second smallest singular values.
    pub fn joint_eigenvector(&self, lambda: &[f64]) -> (CVec, f64, f64) {
        let d = self.dim();
        let n = self.u.len();
        let mut stacked = CMat::zeros(n * d, d);
        for (i, ui) in self.u.iter().enumerate() {
            let mut block = ui.clone();
            for k in 0..d {
                block[(k, k)] -= Complex64::new(lambda[i], 0.0);
            }
            stacked.view_mut((i * d, 0), (d, d)).copy_from(&block);
        }
        let svd = stacked.svd(false, true);
        let vt = svd.v_t.expect("requested V^T");
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
        let smallest = svd.singular_values[order[0]];
        let second = order.get(1).map_or(f64::INFINITY, |&k| svd.singular_values[k]);
        let v = vt.row(order[0]).adjoint();
        (v, smallest, second)
    }
}

/// All labels `(β, T)` with `β ∈ N₀^N`, `|β| = d`.
pub fn labels_of_degree(irrep: &IrrepData, d: i32) -> Vec<Label> {
    compositions(irrep.n(), d)
        .into_iter()
        .flat_map(|alpha| (0..irrep.n_tau).map(move |t| Label { alpha: alpha.clone(), tableau: t }))
        .collect()
}

fn check_collisions(irrep: &IrrepData, kappa: f64, label: &Label) -> Result<()> {
    let d: i32 = label.alpha.iter().sum();
    let target = spectral_vector(irrep, kappa, label);
    for other in labels_of_degree(irrep, d) {
        if other == *label {
            continue;
        }
        let sv = spectral_vector(irrep, kappa, &other);
        let gap = sv
            .values
            .iter()
            .zip(&target.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if gap < COLLISION_TOL {
            return Err(Error::SpectralCollision {
                kappa,
                label: (label.alpha.clone(), label.tableau),
                other: (other.alpha, other.tableau),
            });
        }
    }
    Ok(())
}

/// Builds nonsymmetric Jack polynomials, reusing component matrices per degree.
pub struct NsjpBuilder<'a> {
    irrep: &'a IrrepData,
    kappa: f64,
    cap: i32,
    components: HashMap<i32, HomogeneousComponent>,
}

impl<'a> NsjpBuilder<'a> {
    pub fn new(irrep: &'a IrrepData, kappa: f64) -> Self {
        NsjpBuilder { irrep, kappa, cap: default_degree_cap(irrep.n()), components: HashMap::new() }
    }

    pub fn with_degree_cap(mut self, cap: i32) -> Self {
        self.cap = cap;
        self
    }

    /// `ζ_{α,T}`, normalized so that the coefficient of `x^α` is `τ(r_α⁻¹)T`.
    /// When `α` is a partition this is the coefficient of `x^α ⊗ T` being 1.
    pub fn build(&mut self, label: &Label) -> Result<LaurentVPoly> {
        let alpha = &label.alpha;
        if alpha.len() != self.irrep.n() || label.tableau >= self.irrep.n_tau {
            return Err(Error::InvalidConfig(format!("label {label} does not match the representation")));
        }
        let lo = *alpha.iter().min().unwrap();
        let hi = *alpha.iter().max().unwrap();
        if hi - lo > self.cap {
            return Err(Error::DegreeCap { degree: hi - lo, cap: self.cap });
        }
        // every x^α ⊗ v is an eigenfunction at κ = 0; keep the limit of the normalization
        if self.kappa == 0.0 {
            return Ok(LaurentVPoly::monomial(alpha.clone(), leading_vector(self.irrep, label)));
        }
        let base = Label { alpha: alpha.iter().map(|a| a - lo).collect(), tableau: label.tableau };
        check_collisions(self.irrep, self.kappa, &base)?;
        let d: i32 = base.alpha.iter().sum();
        let (irrep, kappa) = (self.irrep, self.kappa);
        let comp = self
            .components
            .entry(d)
            .or_insert_with(|| HomogeneousComponent::new(irrep, kappa, d));
        let sv = spectral_vector(irrep, kappa, &base);
        let (v, _, _) = comp.joint_eigenvector(&sv.values);
        let u = leading_vector(irrep, &base);
        let k = (0..u.len()).max_by(|&a, &b| u[a].norm().total_cmp(&u[b].norm())).unwrap();
        let lead = v[comp.position(&base.alpha, k, irrep.n_tau)] / u[k];
        let p = comp.to_poly(&(v / lead), irrep.n_tau);
        Ok(p.shift_en(lo))
    }
}

/// `τ(r_α⁻¹)T` in the seminormal basis: the coefficient of `x^α` in `ζ_{α,T}`.
pub fn leading_vector(irrep: &IrrepData, label: &Label) -> CVec {
    let mut e = CVec::zeros(irrep.n_tau);
    e[label.tableau] = Complex64::new(1.0, 0.0);
    irrep.rep_seminormal(&rank_function(&label.alpha).inverse()) * e
}

/// One-shot form of [`NsjpBuilder::build`].
pub fn nsjp(irrep: &IrrepData, kappa: f64, label: &Label) -> Result<LaurentVPoly> {
    NsjpBuilder::new(irrep, kappa).build(label)
}

/// Max over `i` of `‖U_i ζ − λ_i ζ‖` in coefficient max-norm.
pub fn eigen_residual(irrep: &IrrepData, kappa: f64, label: &Label, p: &LaurentVPoly) -> f64 {
    let sv = spectral_vector(irrep, kappa, label);
    (0..irrep.n())
        .map(|i| {
            cherednik_apply(irrep, kappa, i, p)
                .dist(&p.scale(Complex64::new(sv.values[i], 0.0)))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::{build_irrep, q, QMatrix, Rational};
    use num_traits::{ToPrimitive, Zero};
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeMap;

    fn irrep(s: &str) -> IrrepData {
        build_irrep(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn rank_function_examples() {
        assert!(rank_function(&[3, 2, 0]).is_identity());
        assert_eq!(rank_function(&[0, 2, 1]).images(), &[2, 0, 1]);
        assert!(rank_function(&[1, 1, 0]).is_identity());
        assert_eq!(rank_function(&[0, 2, 1]), rank_function(&[3, 5, 4]));
    }

    #[test]
    fn degree_zero_is_constant() {
        let r = irrep("2,1");
        for t in 0..2 {
            let label = Label { alpha: vec![0, 0, 0], tableau: t };
            let z = nsjp(&r, 0.25, &label).unwrap();
            assert!(z.dist(&LaurentVPoly::basis_monomial(vec![0, 0, 0], 2, t)) < 1e-12);
        }
    }

    #[test]
    fn eigen_residuals_and_homogeneity() {
        for (s, kappa, cap) in [("2,1", 0.25, 3), ("3,1", -0.15, 2), ("2,2", 0.1, 2)] {
            let r = irrep(s);
            let mut b = NsjpBuilder::new(&r, kappa);
            for d in 0..=cap {
                for label in labels_of_degree(&r, d) {
                    let z = b.build(&label).unwrap();
                    assert!(eigen_residual(&r, kappa, &label, &z) < 1e-10, "{s} {label}");
                    assert_eq!(z.degrees(), vec![d]);
                    let lead = z.coeff(&label.alpha).unwrap();
                    assert!((lead - leading_vector(&r, &label)).camax() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn laurent_shift_matches_en_power() {
        let r = irrep("2,1");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut b = NsjpBuilder::new(&r, 0.2);
        for _ in 0..6 {
            let alpha: Vec<i32> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
            let t = rng.gen_range(0..2);
            let m = rng.gen_range(-2..=2);
            let z = b.build(&Label { alpha: alpha.clone(), tableau: t }).unwrap();
            let shifted: Vec<i32> = alpha.iter().map(|a| a + m).collect();
            let zs = b.build(&Label { alpha: shifted.clone(), tableau: t }).unwrap();
            assert!(zs.dist(&z.shift_en(m)) < 1e-12);
            assert!(eigen_residual(&r, 0.2, &Label { alpha: shifted, tableau: t }, &zs) < 1e-10);
        }
    }

    #[test]
    fn kappa_zero_is_the_limit() {
        let r = irrep("2,1");
        for alpha in [vec![0, 1, 0], vec![1, 0, 1], vec![2, 0, -1]] {
            for t in 0..2 {
                let label = Label { alpha: alpha.clone(), tableau: t };
                let z0 = nsjp(&r, 0.0, &label).unwrap();
                assert_eq!(z0.len(), 1);
                assert!(eigen_residual(&r, 0.0, &label, &z0) < 1e-12);
                let zs = nsjp(&r, 1e-7, &label).unwrap();
                assert!(z0.dist(&zs) < 1e-5, "{label}");
            }
        }
    }

    #[test]
    fn rejects_collisions_and_large_degree() {
        let r = irrep("2,1");
        // at κ = 1/2 the labels ((0,1,0),T₁) and ((1,0,0),T₁) share a spectral vector
        let label = Label { alpha: vec![0, 1, 0], tableau: 1 };
        assert!(matches!(nsjp(&r, 0.5, &label), Err(Error::SpectralCollision { .. })));
        let big = Label { alpha: vec![5, 0, 0], tableau: 0 };
        assert!(matches!(nsjp(&r, 0.1, &big), Err(Error::DegreeCap { .. })));
    }

    // Independent exact construction: U_i on degree-1 polynomials at κ = 1/4,
    // with monomials x_m ⊗ T_k as basis, then the exact joint null space.
    type QPoly = BTreeMap<Vec<i32>, Vec<Rational>>;

    fn q_add(p: &mut QPoly, e: Vec<i32>, v: &[Rational]) {
        let entry = p.entry(e).or_insert_with(|| vec![Rational::zero(); v.len()]);
        for (a, b) in entry.iter_mut().zip(v) {
            *a += *b;
        }
    }

    fn q_apply(m: &QMatrix, v: &[Rational]) -> Vec<Rational> {
        (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum()).collect()
    }

    fn exact_u(r: &IrrepData, kappa: Rational, i: usize, e: &[i32], v: &[Rational]) -> QPoly {
        let n = e.len();
        let mut out = QPoly::new();
        // D_i applied to x_i x^e ⊗ v
        let mut f = e.to_vec();
        f[i] += 1;
        let a = f[i];
        let mut g = f.clone();
        g[i] -= 1;
        q_add(&mut out, g, &v.iter().map(|c| *c * q(a as i128, 1)).collect::<Vec<_>>());
        for j in 0..n {
            if j == i {
                continue;
            }
            let t = r.rep_exact(&Perm::transposition(n, i, j));
            let tv: Vec<Rational> = q_apply(&t, v).iter().map(|c| *c * kappa).collect();
            // brute-force division: (x_i^a x_j^b − x_i^b x_j^a)/(x_i − x_j) for small a, b ≥ 0
            let (a, b) = (f[i], f[j]);
            let (hi, lo, sgn) = if a >= b { (a, b, 1) } else { (b, a, -1) };
            for k in 0..(hi - lo) {
                let mut h = f.clone();
                if sgn > 0 {
                    h[i] = lo + (hi - lo - 1 - k);
                    h[j] = lo + k;
                } else {
                    h[j] = lo + (hi - lo - 1 - k);
                    h[i] = lo + k;
                }
                q_add(&mut out, h, &tv.iter().map(|c| *c * q(sgn as i128, 1)).collect::<Vec<_>>());
            }
        }
        for j in 0..i {
            let t = r.rep_exact(&Perm::transposition(n, i, j));
            let mut h = e.to_vec();
            h.swap(i, j);
            q_add(&mut out, h, &q_apply(&t, v).iter().map(|c| -*c * kappa).collect::<Vec<_>>());
        }
        out
    }

    #[test]
    fn exact_oracle_degree_one() {
        let r = irrep("2,1");
        let kappa = q(1, 4);
        let monos = [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let nt = 2;
        let dim = monos.len() * nt;
        let label = Label { alpha: vec![1, 0, 0], tableau: 0 };
        let rk = rank_function(&label.alpha);
        let mut stacked = QMatrix::zeros(3 * dim, dim);
        for i in 0..3 {
            let lam = q(label.alpha[i] as i128 + 1, 1) + kappa * q(r.content(0, rk.apply(i) + 1) as i128, 1);
            for (mi, e) in monos.iter().enumerate() {
                for k in 0..nt {
                    let mut v = vec![Rational::zero(); nt];
                    v[k] = q(1, 1);
                    let col = mi * nt + k;
                    for (f, c) in exact_u(&r, kappa, i, e, &v) {
                        let row = monos.iter().position(|m| *m == f).unwrap() * nt;
                        for t in 0..nt {
                            stacked[(i * dim + row + t, col)] += c[t];
                        }
                    }
                    stacked[(i * dim + col, col)] -= lam;
                }
            }
        }
        let ns = stacked.null_space();
        assert_eq!(ns.len(), 1);
        let lead = ns[0][0];
        let exact: Vec<f64> = ns[0].iter().map(|c| (*c / lead).to_f64().unwrap()).collect();
        let z = nsjp(&r, 0.25, &label).unwrap();
        for (mi, e) in monos.iter().enumerate() {
            for t in 0..nt {
                let got = z.coeff(e).map_or(Complex64::new(0.0, 0.0), |v| v[t]);
                assert!((got - Complex64::new(exact[mi * nt + t], 0.0)).norm() < 1e-12);
            }
        }
    }
}
