//! Adaptive Dormand–Prince 5(4) integration of matrix ODEs `Y' = f(t, Y)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{is_finite, CMat};

#[derive(Clone, Copy, Debug)]
pub struct StepOptions {
    /// Relative and absolute local error tolerance.
    pub tol: f64,
    /// Smallest admissible step relative to the interval length.
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for StepOptions {
    fn default() -> Self {
        StepOptions { tol: 1e-10, min_step: 1e-13, max_steps: 200_000 }
    }
}

impl StepOptions {
    pub fn with_tol(tol: f64) -> Self {
        StepOptions { tol, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct FlowResult {
    pub value: CMat,
    /// Sum of accepted local error estimates (in the scaled norm times tol).
    pub error_estimate: f64,
    pub step_count: usize,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// 5th order weights are the last row of A; E = b5 − b4.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate from `t0` to `t1` starting at `y0`.
pub fn integrate<F>(f: F, t0: f64, t1: f64, y0: &CMat, opts: &StepOptions) -> Result<FlowResult>
where
    F: Fn(f64, &CMat) -> CMat,
{
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(FlowResult { value: y0.clone(), error_estimate: 0.0, step_count: 0 });
    }
    let dir = span.signum();
    let len = span.abs();
    let mut t = t0;
    let mut y = y0.clone();
    let mut h = 0.01 * len;
    let mut k1 = f(t, &y);
    let mut steps = 0;
    let mut err_total = 0.0;
    while (t1 - t) * dir > 0.0 {
        if steps >= opts.max_steps {
            return Err(Error::StepUnderflow { t, h });
        }
        let last = h >= (t1 - t).abs();
        if last {
            h = (t1 - t).abs();
        }
        let hs = h * dir;
        let mut k = Vec::with_capacity(7);
        k.push(k1.clone());
        for s in 1..7 {
            let mut ys = y.clone();
            for (j, kj) in k.iter().enumerate().take(s) {
                if A[s][j] != 0.0 {
                    ys += kj * Complex64::new(hs * A[s][j], 0.0);
                }
            }
            k.push(f(t + C[s] * hs, &ys));
        }
        // y_new is the 5th order stage point (FSAL)
        let mut ynew = y.clone();
        for (j, kj) in k.iter().enumerate().take(6) {
            if A[6][j] != 0.0 {
                ynew += kj * Complex64::new(hs * A[6][j], 0.0);
            }
        }
        let k7 = f(t + hs, &ynew);
        let mut err = CMat::zeros(y.nrows(), y.ncols());
        for (j, kj) in k.iter().enumerate().take(6) {
            if E[j] != 0.0 {
                err += kj * Complex64::new(hs * E[j], 0.0);
            }
        }
        err += &k7 * Complex64::new(hs * E[6], 0.0);
        let mut en = 0.0f64;
        for ((e, a), b) in err.iter().zip(y.iter()).zip(ynew.iter()) {
            let scale = opts.tol * (1.0 + a.norm().max(b.norm()));
            en = en.max(e.norm() / scale);
        }
        if !en.is_finite() || !is_finite(&ynew) {
            return Err(Error::NonFinite { t });
        }
        if en <= 1.0 {
            t = if last { t1 } else { t + hs };
            y = ynew;
            k1 = k7;
            steps += 1;
            err_total += en * opts.tol;
        }
        let factor = if en == 0.0 { 5.0 } else { (0.9 * en.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h < opts.min_step * len && (t1 - t).abs() > opts.min_step * len {
            return Err(Error::StepUnderflow { t, h });
        }
    }
    Ok(FlowResult { value: y, error_estimate: err_total, step_count: steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dist, identity};

    #[test]
    fn scalar_exponential() {
        let y0 = identity(1);
        let a = Complex64::new(0.3, 1.7);
        let r = integrate(|_, y| y * a, 0.0, 2.0, &y0, &StepOptions::with_tol(1e-12)).unwrap();
        assert!((r.value[(0, 0)] - (a * 2.0).exp()).norm() < 1e-10);
    }

    #[test]
    fn non_commuting_linear_system() {
        // Y' = Y (A + t B) checked against a fine fixed-step RK4 reference.
        let a = CMat::from_row_slice(2, 2, &[Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(-0.5, 0.0)]);
        let b = CMat::from_row_slice(2, 2, &[Complex64::new(0.2, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.3), Complex64::new(0.0, 0.0)]);
        let f = |t: f64, y: &CMat| y * (&a + &b * Complex64::new(t, 0.0));
        let r = integrate(f, 0.0, 1.0, &identity(2), &StepOptions::with_tol(1e-12)).unwrap();
        let n = 20000;
        let h = 1.0 / n as f64;
        let mut y = identity(2);
        for s in 0..n {
            let t = s as f64 * h;
            let hc = Complex64::new(h, 0.0);
            let k1 = f(t, &y);
            let k2 = f(t + h / 2.0, &(&y + &k1 * (hc / 2.0)));
            let k3 = f(t + h / 2.0, &(&y + &k2 * (hc / 2.0)));
            let k4 = f(t + h, &(&y + &k3 * hc));
            y += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4) * (hc / 6.0);
        }
        assert!(dist(&r.value, &y) < 1e-10);
    }

    #[test]
    fn backwards_and_empty_intervals() {
        let y0 = identity(1);
        let r = integrate(|_, y| y.clone(), 1.0, 0.0, &y0, &StepOptions::default()).unwrap();
        assert!((r.value[(0, 0)].re - (-1.0f64).exp()).abs() < 1e-9);
        let r = integrate(|_, y| y.clone(), 1.0, 1.0, &y0, &StepOptions::default()).unwrap();
        assert_eq!(r.step_count, 0);
    }

    #[test]
    fn blow_up_is_reported() {
        let y0 = identity(1);
        let r = integrate(|t, y| y * Complex64::new(1.0 / (1.0 - t).powi(3), 0.0), 0.0, 1.0, &y0, &StepOptions::default());
        assert!(r.is_err());
    }
}
