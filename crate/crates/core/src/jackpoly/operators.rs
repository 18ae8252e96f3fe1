use num_complex::Complex64;

use super::laurent::LaurentVPoly;
use crate::symgroup::{IrrepData, Perm};

/// `(x^α − x^{α(i,j)})/(x_i − x_j)` as a list of `(exponent, sign)` terms,
/// via the geometric sum; valid for negative exponents as well.
pub fn divided_difference(alpha: &[i32], i: usize, j: usize) -> Vec<(Vec<i32>, f64)> {
    let (a, b) = (alpha[i], alpha[j]);
    if a == b {
        return Vec::new();
    }
    // For a > b: (x_i x_j)^b Σ_{k<a−b} x_i^{a−b−1−k} x_j^k; for a < b the
    // same sum with i and j exchanged and a minus sign.
    let (hi, lo, sign, p, q) = if a > b { (a, b, 1.0, i, j) } else { (b, a, -1.0, j, i) };
    let len = hi - lo;
    (0..len)
        .map(|k| {
            let mut e = alpha.to_vec();
            e[p] = lo + (len - 1 - k);
            e[q] = lo + k;
            (e, sign)
        })
        .collect()
}

/// Dunkl operator `D_i p = ∂_i p + κ Σ_{j≠i} τ((i,j)) (p(x) − p(x(i,j)))/(x_i − x_j)`,
/// `i` 0-based.
pub fn dunkl_apply(irrep: &IrrepData, kappa: f64, i: usize, p: &LaurentVPoly) -> LaurentVPoly {
    let n = p.nvars();
    let mut out = LaurentVPoly::zero(n, p.dim());
    let k = Complex64::new(kappa, 0.0);
    for (alpha, v) in p.terms() {
        if alpha[i] != 0 {
            let mut e = alpha.clone();
            e[i] -= 1;
            out.add_term(e, &(v * Complex64::new(alpha[i] as f64, 0.0)));
        }
        if kappa == 0.0 {
            continue;
        }
        for j in (0..n).filter(|&j| j != i) {
            let tv = irrep.transposition_seminormal(i, j) * v * k;
            for (e, s) in divided_difference(alpha, i, j) {
                out.add_term(e, &(&tv * Complex64::new(s, 0.0)));
            }
        }
    }
    out
}

/// The action `p ↦ τ((i,j)) p(x(i,j))`.
pub fn transposition_apply(irrep: &IrrepData, i: usize, j: usize, p: &LaurentVPoly) -> LaurentVPoly {
    p.permute_vars(&Perm::transposition(p.nvars(), i, j))
        .map_coeffs(irrep.transposition_seminormal(i, j))
}

/// Cherednik–Dunkl operator `U_i = D_i x_i − κ Σ_{j<i} (i,j)`, `i` 0-based.
pub fn cherednik_apply(irrep: &IrrepData, kappa: f64, i: usize, p: &LaurentVPoly) -> LaurentVPoly {
    let n = p.nvars();
    let mut e = vec![0; n];
    e[i] = 1;
    let mut out = dunkl_apply(irrep, kappa, i, &p.shift(&e));
    for j in 0..i {
        out = out.sub(&transposition_apply(irrep, i, j, p).scale(Complex64::new(kappa, 0.0)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jackpoly::laurent::CVec;
    use crate::symgroup::build_irrep;
    use rand::{Rng, SeedableRng};

    fn irrep(s: &str) -> IrrepData {
        build_irrep(&s.parse().unwrap()).unwrap()
    }

    fn random_poly(rng: &mut impl Rng, n: usize, dim: usize, max_deg: i32, laurent: bool) -> LaurentVPoly {
        let mut p = LaurentVPoly::zero(n, dim);
        for _ in 0..6 {
            let lo = if laurent { -1 } else { 0 };
            let alpha: Vec<i32> = (0..n).map(|_| rng.gen_range(lo..=max_deg)).collect();
            let v = CVec::from_fn(dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            p.add_term(alpha, &v);
        }
        p
    }

    #[test]
    fn divided_difference_evaluates_correctly() {
        let x = [Complex64::new(0.7, 0.4), Complex64::new(-1.1, 0.3), Complex64::new(0.2, -0.9)];
        for alpha in [vec![3, 0, 1], vec![-2, 1, 0], vec![1, 4, -1], vec![2, 2, 5]] {
            let w = Perm::transposition(3, 0, 1);
            let mono = |e: &[i32]| -> Complex64 { x.iter().zip(e).map(|(a, &k)| a.powi(k)).product() };
            let lhs = (mono(&alpha) - mono(&w.act_on_exponent(&alpha))) / (x[0] - x[1]);
            let rhs: Complex64 = divided_difference(&alpha, 0, 1)
                .iter()
                .map(|(e, s)| mono(e) * *s)
                .sum();
            assert!((lhs - rhs).norm() < 1e-12, "{alpha:?}");
        }
    }

    #[test]
    fn dunkl_on_low_degree() {
        let r = irrep("2,1");
        let kappa = 0.5;
        for k in 0..2 {
            let one = LaurentVPoly::basis_monomial(vec![0, 0, 0], 2, k);
            assert!(dunkl_apply(&r, kappa, 1, &one).is_zero());

            let x1 = LaurentVPoly::basis_monomial(vec![1, 0, 0], 2, k);
            let mut expect = one.clone();
            for j in 1..3 {
                expect = expect.add(&one.map_coeffs(r.transposition_seminormal(0, j)).scale(Complex64::new(kappa, 0.0)));
            }
            assert!(dunkl_apply(&r, kappa, 0, &x1).dist(&expect) < 1e-14);

            let x2 = LaurentVPoly::basis_monomial(vec![0, 1, 0], 2, k);
            let expect = one.map_coeffs(r.transposition_seminormal(0, 1)).scale(Complex64::new(-kappa, 0.0));
            assert!(dunkl_apply(&r, kappa, 0, &x2).dist(&expect) < 1e-14);
        }
    }

    #[test]
    fn cherednik_on_constants() {
        let r = irrep("3,1");
        let kappa = 0.3;
        for k in 0..r.n_tau {
            let one = LaurentVPoly::basis_monomial(vec![0; 4], r.n_tau, k);
            for i in 0..4 {
                let lhs = cherednik_apply(&r, kappa, i, &one);
                let ev = 1.0 + kappa * r.content(k, i + 1) as f64;
                assert!(lhs.dist(&one.scale(Complex64::new(ev, 0.0))) < 1e-13);
            }
        }
    }

    #[test]
    fn dunkl_equivariance() {
        // w D_i = D_{w(i)} w
        let r = irrep("2,1");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let p = random_poly(&mut rng, 3, 2, 2, false);
            let w = Perm::random(3, &mut rng);
            for i in 0..3 {
                let lhs = dunkl_apply(&r, 0.37, i, &p).act_irrep(&r, &w);
                let rhs = dunkl_apply(&r, 0.37, w.apply(i), &p.act_irrep(&r, &w));
                assert!(lhs.dist(&rhs) < 1e-12);
            }
        }
    }

    #[test]
    fn cherednik_braid_like_identity() {
        // s_i U_i s_i = U_{i+1} + κ s_i
        let r = irrep("3,1");
        let kappa = 0.21;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let p = random_poly(&mut rng, 4, 3, 2, false);
            for i in 0..3 {
                let s = Perm::simple(4, i);
                let lhs = cherednik_apply(&r, kappa, i, &p.act_irrep(&r, &s)).act_irrep(&r, &s);
                let rhs = cherednik_apply(&r, kappa, i + 1, &p)
                    .add(&p.act_irrep(&r, &s).scale(Complex64::new(kappa, 0.0)));
                assert!(lhs.dist(&rhs) < 1e-12, "i={i}");
            }
        }
    }

    #[test]
    fn cherednik_operators_commute() {
        let r = irrep("2,1");
        let kappa = 0.29;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let p = random_poly(&mut rng, 3, 2, 2, false);
            for i in 0..3 {
                for j in i + 1..3 {
                    let a = cherednik_apply(&r, kappa, i, &cherednik_apply(&r, kappa, j, &p));
                    let b = cherednik_apply(&r, kappa, j, &cherednik_apply(&r, kappa, i, &p));
                    assert!(a.dist(&b) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn laurent_shift_of_cherednik() {
        let r = irrep("2,1");
        let kappa = 0.17;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..5 {
            let p = random_poly(&mut rng, 3, 2, 2, true);
            let m = rng.gen_range(-2..=2);
            for i in 0..3 {
                let lhs = cherednik_apply(&r, kappa, i, &p.shift_en(m));
                let rhs = cherednik_apply(&r, kappa, i, &p)
                    .add(&p.scale(Complex64::new(m as f64, 0.0)))
                    .shift_en(m);
                assert!(lhs.dist(&rhs) < 1e-12);
            }
        }
    }
}
