//! C ABI over `jackweight`.
//!
//! Objects are opaque handles created by `jw_*_new`/`jw_solve_h` and released by the matching
//! `*_free`. Every fallible call returns a [`JwStatus`]; the message of the last failure on the
//! calling thread is available from [`jw_last_error`]. Matrices are written row-major as
//! interleaved `re, im` doubles.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use jackweight::linalg::CMat;
use jackweight::odeflow::{FlowConfig, TorusPoint};
use jackweight::symgroup::{build_irrep, stembridge_profile, IrrepData, Partition};
use jackweight::weightsolve::{solve_h, weight_k, WeightSolveResult};
use jackweight::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JwStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad shape, index, parameter or configuration.
    InvalidArgument = 2,
    /// The point or path touches the singular set.
    SingularPoint = 3,
    /// The integrator failed.
    Integration = 4,
    /// The parameter is exceptional for the requested object.
    Exceptional = 5,
    /// The output buffer is shorter than required.
    BufferTooSmall = 6,
    Panic = 7,
    Other = 8,
}

fn status_of(e: &Error) -> JwStatus {
    match e {
        Error::InvalidPartition(_)
        | Error::OneDimensional(_)
        | Error::InvalidPermutation(_)
        | Error::DegreeCap { .. }
        | Error::InvalidConfig(_) => JwStatus::InvalidArgument,
        Error::SingularPoint { .. }
        | Error::PathCollision { .. }
        | Error::OutsideRadius { .. }
        | Error::WrongHalfDisc(_) => JwStatus::SingularPoint,
        Error::StepUnderflow { .. } | Error::NonFinite { .. } => JwStatus::Integration,
        Error::SpectralCollision { .. } | Error::HalfIntegerKappa(_) | Error::RankDeficient { .. } => {
            JwStatus::Exceptional
        }
        _ => JwStatus::Other,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: JwStatus, msg: impl Into<String>) -> JwStatus {
    set_error(msg.into());
    status
}

fn guard(f: impl FnOnce() -> Result<(), JwStatus>) -> JwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(JwStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: jackweight::Result<T>) -> Result<T, JwStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), JwStatus> {
    if p.is_null() {
        Err(fail(JwStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn write_matrix(m: &CMat, out: *mut f64, len: usize) -> Result<(), JwStatus> {
    non_null(out, "out")?;
    let need = 2 * m.nrows() * m.ncols();
    if len < need {
        return Err(fail(JwStatus::BufferTooSmall, format!("need {need} doubles, got {len}")));
    }
    let buf = std::slice::from_raw_parts_mut(out, need);
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let k = 2 * (r * m.ncols() + c);
            buf[k] = m[(r, c)].re;
            buf[k + 1] = m[(r, c)].im;
        }
    }
    Ok(())
}

/// An irreducible representation of the symmetric group in orthogonal form.
pub struct JwIrrep(IrrepData);

/// A solved weight: `H` and the data needed to evaluate `K(x)`.
pub struct JwWeight {
    irrep: IrrepData,
    flow: FlowConfig,
    sol: WeightSolveResult,
}

/// Message of the last failure on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn jw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn jw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds the representation for the partition `parts[0..len]`.
///
/// # Safety
/// `parts` must point to `len` readable values and `out` to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn jw_irrep_new(parts: *const usize, len: usize, out: *mut *mut JwIrrep) -> JwStatus {
    guard(|| {
        non_null(parts, "parts")?;
        non_null(out, "out")?;
        let p = lift(Partition::new(std::slice::from_raw_parts(parts, len).to_vec()))?;
        let ir = lift(build_irrep(&p))?;
        *out = Box::into_raw(Box::new(JwIrrep(ir)));
        Ok(())
    })
}

/// # Safety
/// `irrep` must come from [`jw_irrep_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn jw_irrep_free(irrep: *mut JwIrrep) {
    if !irrep.is_null() {
        drop(Box::from_raw(irrep));
    }
}

/// Writes `N`, `n_τ` and `m_τ` (the size of the `+1` block of `σ`). Any output may be null.
///
/// # Safety
/// `irrep` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_irrep_dims(
    irrep: *const JwIrrep,
    n: *mut usize,
    n_tau: *mut usize,
    m_tau: *mut usize,
) -> JwStatus {
    guard(|| {
        non_null(irrep, "irrep")?;
        let ir = &(*irrep).0;
        for (p, v) in [(n, ir.n()), (n_tau, ir.n_tau), (m_tau, ir.m_tau)] {
            if !p.is_null() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Matrix of the adjacent transposition `(i, i+1)`, `0 ≤ i < N−1`, into `out[0..2 n_τ²]`.
///
/// # Safety
/// `irrep` must be a live handle and `out` writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn jw_irrep_generator(irrep: *const JwIrrep, i: usize, out: *mut f64, len: usize) -> JwStatus {
    guard(|| {
        non_null(irrep, "irrep")?;
        let ir = &(*irrep).0;
        if i + 1 >= ir.n() {
            return Err(fail(JwStatus::InvalidArgument, format!("generator {i} out of range")));
        }
        write_matrix(ir.transposition(i, i + 1), out, len)
    })
}

/// Multiplicities `e_0..e_{N−1}` of the eigenvalues `ω^j` of `τ(w₀)`, into `out[0..N]`.
///
/// # Safety
/// `irrep` must be a live handle and `out` writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn jw_irrep_upsilon_multiplicities(
    irrep: *const JwIrrep,
    out: *mut usize,
    len: usize,
) -> JwStatus {
    guard(|| {
        non_null(irrep, "irrep")?;
        non_null(out, "out")?;
        let m = stembridge_profile(&(*irrep).0).multiplicities;
        if len < m.len() {
            return Err(fail(JwStatus::BufferTooSmall, format!("need {} values, got {len}", m.len())));
        }
        std::slice::from_raw_parts_mut(out, m.len()).copy_from_slice(&m);
        Ok(())
    })
}

/// Solves for `H` at `kappa` with flow tolerance `tol` (`tol ≤ 0` picks `1e-10`).
///
/// # Safety
/// `irrep` must be a live handle and `out` writable for one pointer.
#[no_mangle]
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub unsafe extern "C" fn jw_solve_h(irrep: *const JwIrrep, kappa: f64, tol: f64, out: *mut *mut JwWeight) -> JwStatus {
    guard(|| {
        non_null(irrep, "irrep")?;
        non_null(out, "out")?;
        if !(kappa.abs() < 0.5) {
            return Err(fail(JwStatus::InvalidArgument, format!("|kappa| must be below 1/2, got {kappa}")));
        }
        let ir = (*irrep).0.clone();
        let flow = FlowConfig::with_tol(if tol > 0.0 { tol } else { 1e-10 });
        let sol = lift(solve_h(&ir, kappa, &flow))?;
        *out = Box::into_raw(Box::new(JwWeight { irrep: ir, flow, sol }));
        Ok(())
    })
}

/// # Safety
/// `weight` must come from [`jw_solve_h`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn jw_weight_free(weight: *mut JwWeight) {
    if !weight.is_null() {
        drop(Box::from_raw(weight));
    }
}

/// `H` into `out[0..2 n_τ²]`.
///
/// # Safety
/// `weight` must be a live handle and `out` writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn jw_weight_h(weight: *const JwWeight, out: *mut f64, len: usize) -> JwStatus {
    guard(|| {
        non_null(weight, "weight")?;
        write_matrix(&(*weight).sol.h, out, len)
    })
}

/// Singular-value gap of the commutation system and the smallest eigenvalue of `H`.
///
/// # Safety
/// `weight` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn jw_weight_diagnostics(weight: *const JwWeight, gap: *mut f64, min_eig: *mut f64) -> JwStatus {
    guard(|| {
        non_null(weight, "weight")?;
        let sol = &(*weight).sol;
        if !gap.is_null() {
            *gap = sol.gap();
        }
        if !min_eig.is_null() {
            *min_eig = sol.positivity.iter().cloned().fold(f64::INFINITY, f64::min);
        }
        Ok(())
    })
}

/// `K(x)` at `x_j = e^{iθ_j}`, `θ = theta[0..N]`, into `out[0..2 n_τ²]`.
///
/// # Safety
/// `weight` must be a live handle, `theta` readable for `n` values and `out` writable for `len`.
#[no_mangle]
pub unsafe extern "C" fn jw_weight_k(
    weight: *const JwWeight,
    theta: *const f64,
    n: usize,
    out: *mut f64,
    len: usize,
) -> JwStatus {
    guard(|| {
        non_null(weight, "weight")?;
        non_null(theta, "theta")?;
        let w = &*weight;
        if n != w.irrep.n() {
            return Err(fail(JwStatus::InvalidArgument, format!("expected {} angles, got {n}", w.irrep.n())));
        }
        let x = TorusPoint::new(std::slice::from_raw_parts(theta, n).to_vec());
        let k = lift(weight_k(&w.irrep, w.sol.kappa, &w.sol.h, &x, &w.flow))?;
        write_matrix(&k, out, len)
    })
}
