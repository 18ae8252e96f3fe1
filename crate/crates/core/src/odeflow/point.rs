use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symgroup::Perm;

/// A point of the torus in angle coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusPoint {
    pub theta: Vec<f64>,
}

/// Reduce an angle to `(−π, π]`.
pub fn principal_angle(t: f64) -> f64 {
    let r = t.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

impl TorusPoint {
    pub fn new(theta: Vec<f64>) -> Self {
        TorusPoint { theta: theta.into_iter().map(principal_angle).collect() }
    }

    /// `x₀ = (1, ω, …, ω^{N−1})`, `ω = e^{2πi/N}`.
    pub fn base(n: usize) -> Self {
        TorusPoint::new(base_angles(n))
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        TorusPoint::new((0..n).map(|_| rng.gen_range(-PI..PI)).collect())
    }

    /// A random point of the fundamental chamber with pairwise gaps of at least `margin` radians.
    pub fn random_in_c0<R: Rng + ?Sized>(n: usize, margin: f64, rng: &mut R) -> Self {
        loop {
            let t1 = rng.gen_range(-PI..PI);
            let mut rest: Vec<f64> = (1..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
            rest.sort_by(f64::total_cmp);
            let mut th = vec![0.0];
            th.extend(rest);
            th.push(2.0 * PI);
            if th.windows(2).all(|w| w[1] - w[0] >= margin) {
                th.pop();
                return TorusPoint::new(th.iter().map(|v| v + t1).collect());
            }
        }
    }

    pub fn n(&self) -> usize {
        self.theta.len()
    }

    pub fn coords(&self) -> Vec<Complex64> {
        self.theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    /// `min_{i<j} |x_i − x_j|`.
    pub fn margin(&self) -> f64 {
        margin(&self.coords())
    }

    pub fn check_regular(&self, floor: f64) -> Result<()> {
        let m = self.margin();
        if m < floor {
            return Err(Error::SingularPoint { margin: m, floor });
        }
        Ok(())
    }

    /// `x w`, i.e. `(xw)_i = x_{w(i)}`.
    pub fn permute(&self, w: &Perm) -> Self {
        TorusPoint { theta: w.act_on_point(&self.theta) }
    }

    /// `e^{iφ} x`.
    pub fn rotate(&self, phi: f64) -> Self {
        TorusPoint::new(self.theta.iter().map(|t| t + phi).collect())
    }

    /// The unique `w_x` with `w_x(1) = 1` and `x w_x⁻¹` in the fundamental chamber.
    pub fn chamber_perm(&self) -> Perm {
        let n = self.n();
        let t1 = self.theta[0];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let da = (self.theta[a] - t1).rem_euclid(2.0 * PI);
            let db = (self.theta[b] - t1).rem_euclid(2.0 * PI);
            (a != 0).cmp(&(b != 0)).then(da.total_cmp(&db))
        });
        // order[k] = w_x⁻¹(k)
        Perm::from_images(order).expect("ordering is a permutation").inverse()
    }

    pub fn in_c0(&self) -> bool {
        self.chamber_perm().is_identity()
    }

    /// Angles unwrapped as `θ₁ < θ₂ < ⋯ < θ_N < θ₁ + 2π`; meaningful in the fundamental chamber.
    pub fn unwrapped(&self) -> Vec<f64> {
        let t1 = self.theta[0];
        let mut out = vec![t1];
        out.extend(self.theta[1..].iter().map(|t| t1 + (t - t1).rem_euclid(2.0 * PI)));
        out
    }
}

/// Angles `2π(j−1)/N` of `x₀`.
pub fn base_angles(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
}

pub fn margin(x: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            m = m.min((x[i] - x[j]).norm());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn chamber_perm_lands_in_c0() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let x = TorusPoint::random(4, &mut rng);
            let w = x.chamber_perm();
            assert_eq!(w.apply(0), 0);
            let y = x.permute(&w.inverse());
            assert!(y.in_c0(), "{x:?}");
            let u = y.unwrapped();
            assert!(u.windows(2).all(|p| p[0] < p[1]) && u[3] < u[0] + 2.0 * PI);
        }
    }

    #[test]
    fn base_point_is_in_c0() {
        assert!(TorusPoint::base(3).in_c0());
        let x0 = TorusPoint::base(4);
        assert!((x0.margin() - 2f64.sqrt()).abs() < 1e-12);
        assert!(x0.permute(&Perm::long_cycle(4)).in_c0());
        assert!(!x0.permute(&Perm::transposition(4, 2, 3)).in_c0());
    }
}
