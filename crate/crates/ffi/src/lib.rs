//! C ABI for `acbm-core`.
//!
//! Conventions:
//! - every fallible call returns an [`AcbmStatus`]; on failure
//!   `acbm_last_error_message()` describes it (thread-local);
//! - points are opaque handles released with `acbm_point_free`;
//! - strings returned through `char **` are owned by the caller and
//!   released with `acbm_string_free`;
//! - tensors are written row-major in the index order of the Rust API:
//!   Γ, c, D as `[k][i][j]`; F, N, N̂ as `[i][j][k]`; R as `[i][j][k][l]`;
//!   e(Γ) as `[l][k][i][j]`. All indices are 0-based.
//!
//! No Rust panic crosses the boundary; one is reported as `ACBM_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use acbm_core::acbm::class_label;
use acbm_core::manifolds::{self, default_grid};
use acbm_core::report::{render_eval, render_verify, Format};
use acbm_core::verify::{tolerance_from_env, verify};
use acbm_core::{evaluate, Error, TensorBundle};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcbmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownManifold = 3,
    /// The point is excluded from the chart or the geometry is singular there.
    Domain = 4,
    /// `acbm_verify` ran but some comparison or theorem item failed.
    VerificationFailed = 5,
    Panic = 6,
}

/// Tensor blocks readable with `acbm_point_tensor`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcbmTensor {
    InducedMetric = 0,
    Commutators = 1,
    Gamma = 2,
    GammaDirderiv = 3,
    F = 4,
    D = 5,
    N = 6,
    NHat = 7,
    Curvature = 8,
    Ricci = 9,
    RicciStar = 10,
    DEta = 11,
}

/// Scalar invariants at one point.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AcbmScalars {
    pub norm_nabla_phi: f64,
    pub norm_n: f64,
    pub norm_n_hat: f64,
    pub tau: f64,
    pub tau_star: f64,
    pub tau_star_star: f64,
    pub k12: f64,
    pub k13: f64,
    pub k23: f64,
}

/// An evaluated point: every quantity of the engine at one chart point.
pub struct AcbmPoint {
    manifold: String,
    radius: f64,
    u: [f64; 3],
    bundle: TensorBundle,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(AcbmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::UnknownManifold(_) => AcbmStatus::UnknownManifold,
            e if e.is_domain() => AcbmStatus::Domain,
            _ => AcbmStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(AcbmStatus::NullPointer, format!("`{what}` is null"))
}

fn guard(f: impl FnOnce() -> Result<AcbmStatus, Failure>) -> AcbmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AcbmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(AcbmStatus::InvalidArgument, format!("`{what}` is not UTF-8")))
}

unsafe fn point_ref<'a>(p: *const AcbmPoint) -> Result<&'a AcbmPoint, Failure> {
    p.as_ref().ok_or_else(|| null("point"))
}

unsafe fn give_string(s: String, out: *mut *mut c_char) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(AcbmStatus::Panic, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Number of doubles `acbm_point_tensor` writes for `which`.
#[no_mangle]
pub extern "C" fn acbm_tensor_len(which: AcbmTensor) -> usize {
    match which {
        AcbmTensor::InducedMetric | AcbmTensor::Ricci | AcbmTensor::RicciStar | AcbmTensor::DEta => 9,
        AcbmTensor::GammaDirderiv | AcbmTensor::Curvature => 81,
        _ => 27,
    }
}

/// Evaluates `manifold` ("s31", "h31" or "flat") of radius `radius` at
/// `u[0..3]`. On success `*out` receives a handle for `acbm_point_free`.
///
/// # Safety
/// `manifold` must be a NUL-terminated string, `u` must point to 3 doubles
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn acbm_point_new(
    manifold: *const c_char,
    radius: f64,
    u: *const f64,
    out: *mut *mut AcbmPoint,
) -> AcbmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let manifold = read_str(manifold, "manifold")?;
        if u.is_null() {
            return Err(null("u"));
        }
        let u = [*u, *u.add(1), *u.add(2)];
        let chart = manifolds::chart(manifold, radius)?;
        let bundle = evaluate(&chart, u)?;
        *out = Box::into_raw(Box::new(AcbmPoint {
            manifold: manifold.to_string(),
            radius,
            u,
            bundle,
        }));
        Ok(AcbmStatus::Ok)
    })
}

/// Releases a point. Null is ignored.
///
/// # Safety
/// `point` must come from `acbm_point_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn acbm_point_free(point: *mut AcbmPoint) {
    if !point.is_null() {
        drop(Box::from_raw(point));
    }
}

/// Copies one tensor block into `out`, which holds `len` doubles
/// (at least `acbm_tensor_len(which)`).
///
/// # Safety
/// `point` must be a live handle and `out` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn acbm_point_tensor(
    point: *const AcbmPoint,
    which: AcbmTensor,
    out: *mut f64,
    len: usize,
) -> AcbmStatus {
    guard(|| {
        let p = point_ref(point)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let need = acbm_tensor_len(which);
        if len < need {
            return Err(Failure(
                AcbmStatus::InvalidArgument,
                format!("buffer holds {len} doubles, {need} needed"),
            ));
        }
        let q = &p.bundle.quantities;
        let flat: Vec<f64> = match which {
            AcbmTensor::InducedMetric => q.induced_metric.iter().flatten().copied().collect(),
            AcbmTensor::Commutators => q.commutators.iter().flatten().flatten().copied().collect(),
            AcbmTensor::Gamma => q.gamma.iter().flatten().flatten().copied().collect(),
            AcbmTensor::GammaDirderiv => q.gamma_dirderiv.iter().flatten().flatten().flatten().copied().collect(),
            AcbmTensor::F => q.f.iter().flatten().flatten().copied().collect(),
            AcbmTensor::D => q.d.iter().flatten().flatten().copied().collect(),
            AcbmTensor::N => q.n.iter().flatten().flatten().copied().collect(),
            AcbmTensor::NHat => q.n_hat.iter().flatten().flatten().copied().collect(),
            AcbmTensor::Curvature => q.r.iter().flatten().flatten().flatten().copied().collect(),
            AcbmTensor::Ricci => q.rho.iter().flatten().copied().collect(),
            AcbmTensor::RicciStar => q.rho_star.iter().flatten().copied().collect(),
            AcbmTensor::DEta => q.d_eta.iter().flatten().copied().collect(),
        };
        std::slice::from_raw_parts_mut(out, need).copy_from_slice(&flat);
        Ok(AcbmStatus::Ok)
    })
}

/// # Safety
/// `point` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn acbm_point_scalars(point: *const AcbmPoint, out: *mut AcbmScalars) -> AcbmStatus {
    guard(|| {
        let q = &point_ref(point)?.bundle.quantities;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = AcbmScalars {
            norm_nabla_phi: q.norm_nabla_phi,
            norm_n: q.norm_n,
            norm_n_hat: q.norm_n_hat,
            tau: q.tau,
            tau_star: q.tau_star,
            tau_star_star: q.tau_star_star,
            k12: q.sectional[0],
            k13: q.sectional[1],
            k23: q.sectional[2],
        };
        Ok(AcbmStatus::Ok)
    })
}

/// Looks up one scalar by its report name, e.g. "Gamma_221" or "norm_N".
///
/// # Safety
/// `point` must be a live handle, `name` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn acbm_point_quantity(
    point: *const AcbmPoint,
    name: *const c_char,
    out: *mut f64,
) -> AcbmStatus {
    guard(|| {
        let p = point_ref(point)?;
        let name = read_str(name, "name")?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        match p.bundle.quantities.named().into_iter().find(|(n, _)| n == name) {
            Some((_, v)) => {
                *out = v;
                Ok(AcbmStatus::Ok)
            }
            None => Err(Failure(
                AcbmStatus::InvalidArgument,
                format!("no quantity named `{name}`"),
            )),
        }
    })
}

/// Class membership label, e.g. "F5⊕F9" (UTF-8) or "F0".
///
/// # Safety
/// `point` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn acbm_point_classes(point: *const AcbmPoint, out: *mut *mut c_char) -> AcbmStatus {
    guard(|| {
        let p = point_ref(point)?;
        if out.is_null() {
            return Err(null("out"));
        }
        give_string(class_label(&p.bundle.decomposition.membership), out)?;
        Ok(AcbmStatus::Ok)
    })
}

/// The full evaluation report as JSON, identical to `acbm eval --format json`.
///
/// # Safety
/// `point` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn acbm_point_report_json(point: *const AcbmPoint, out: *mut *mut c_char) -> AcbmStatus {
    guard(|| {
        let p = point_ref(point)?;
        if out.is_null() {
            return Err(null("out"));
        }
        give_string(render_eval(&p.manifold, p.radius, p.u, &p.bundle, Format::Json), out)?;
        Ok(AcbmStatus::Ok)
    })
}

/// Verifies `manifold` at `radius` over its default grid. `tol` is the
/// relative tolerance; pass 0 for the default (`ACBM_TOL`, else 1e-9).
/// The JSON report is written to `*out_json` whenever verification ran,
/// including when it returns `ACBM_STATUS_VERIFICATION_FAILED`.
///
/// # Safety
/// `manifold` must be NUL-terminated and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn acbm_verify(
    manifold: *const c_char,
    radius: f64,
    tol: f64,
    out_json: *mut *mut c_char,
) -> AcbmStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        *out_json = ptr::null_mut();
        let manifold = read_str(manifold, "manifold")?;
        let tol = if tol == 0.0 { tolerance_from_env() } else { tol };
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Failure(
                AcbmStatus::InvalidArgument,
                format!("tolerance must be positive, got {tol}"),
            ));
        }
        let suite = manifolds::suite(manifold, radius)?;
        let report = verify(&suite, &default_grid(manifold), tol)?;
        let pass = report.overall;
        give_string(render_verify(&[report], Format::Json), out_json)?;
        if pass {
            Ok(AcbmStatus::Ok)
        } else {
            set_error("verification failed");
            Ok(AcbmStatus::VerificationFailed)
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn acbm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn acbm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn acbm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_lengths_cover_every_block() {
        assert_eq!(acbm_tensor_len(AcbmTensor::Gamma), 27);
        assert_eq!(acbm_tensor_len(AcbmTensor::Curvature), 81);
        assert_eq!(acbm_tensor_len(AcbmTensor::GammaDirderiv), 81);
        assert_eq!(acbm_tensor_len(AcbmTensor::DEta), 9);
    }

    #[test]
    fn errors_map_to_status() {
        assert_eq!(
            Failure::from(Error::UnknownManifold("x".into())).0,
            AcbmStatus::UnknownManifold
        );
        assert_eq!(Failure::from(Error::InvalidRadius(-1.0)).0, AcbmStatus::InvalidArgument);
        let domain = Error::OutOfDomain {
            chart: "s31".into(),
            point: [0.0; 3],
        };
        assert_eq!(Failure::from(domain).0, AcbmStatus::Domain);
    }

    #[test]
    fn panics_are_contained() {
        assert_eq!(guard(|| panic!("boom")), AcbmStatus::Panic);
        assert!(!acbm_last_error_message().is_null());
    }

    #[test]
    fn version_is_nul_terminated() {
        let v = unsafe { CStr::from_ptr(acbm_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
