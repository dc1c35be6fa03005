//! C interface to `sphere-cw`.
//!
//! Shapes cross the boundary as opaque handles created by `sphere_cw_*`
//! constructors and released with the matching `*_free` function. Every
//! fallible call returns a [`SphereCwStatus`]; on failure the message of the
//! most recent error on the calling thread is available from
//! [`sphere_cw_last_error`]. Strings returned by the library are owned by the
//! caller and must be released with [`sphere_cw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sphere_cw::approx::ApproximationConfig;
use sphere_cw::io::{parse_shape, shape_to_json, Shape};
use sphere_cw::metrics::{hausdorff, is_constant_width};
use sphere_cw::{generators, ConvexBody, Error, Polytope, UnitVector};

/// Result of every fallible call. Values are stable across releases.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereCwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    BufferTooSmall = 4,
    ZeroVector = 10,
    DegenerateLune = 11,
    DegenerateArc = 12,
    AmbiguousSide = 13,
    BadRadius = 14,
    BadSpan = 15,
    InvalidBody = 16,
    NotOnBoundary = 17,
    NotSelfDual = 18,
    NotSupporting = 19,
    NotStrictlyConvex = 20,
    DualOverlap = 21,
    NotConstantWidth = 22,
    BudgetExhausted = 23,
    CertificationFailed = 24,
    SeedNotSubdual = 25,
    EmptyIntersection = 26,
    InvalidConfig = 27,
}

impl From<&Error> for SphereCwStatus {
    fn from(e: &Error) -> Self {
        use SphereCwStatus as S;
        match e {
            Error::ZeroVector => S::ZeroVector,
            Error::DegenerateLune => S::DegenerateLune,
            Error::DegenerateArc => S::DegenerateArc,
            Error::AmbiguousSide => S::AmbiguousSide,
            Error::BadRadius(_) => S::BadRadius,
            Error::BadSpan(_) => S::BadSpan,
            Error::InvalidBody(_) => S::InvalidBody,
            Error::NotOnBoundary(_) => S::NotOnBoundary,
            Error::NotSelfDual(_) => S::NotSelfDual,
            Error::NotSupporting(_) => S::NotSupporting,
            Error::NotStrictlyConvex(_) => S::NotStrictlyConvex,
            Error::DualOverlap(_) => S::DualOverlap,
            Error::NotConstantWidth { .. } => S::NotConstantWidth,
            Error::BudgetExhausted { .. } => S::BudgetExhausted,
            Error::CertificationFailed(_) => S::CertificationFailed,
            Error::SeedNotSubdual(_) => S::SeedNotSubdual,
            Error::EmptyIntersection => S::EmptyIntersection,
            Error::InvalidConfig(_) => S::InvalidConfig,
        }
    }
}

/// Opaque handle to a piecewise-circular convex body.
pub struct SphereCwBody(ConvexBody);

/// Opaque handle to a spherical polygon given by its vertices.
pub struct SphereCwPolytope(Polytope);

/// Width summary of a body, in radians.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct SphereCwMetrics {
    pub thickness: f64,
    pub diameter: f64,
    pub width_min: f64,
    pub width_max: f64,
    /// Hausdorff distance to the polar dual; negative when the dual is undefined.
    pub self_duality_residual: f64,
}

/// Outcome of an approximation run.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct SphereCwCertificate {
    pub epsilon: f64,
    pub hausdorff_bound: f64,
    pub width_min: f64,
    pub width_max: f64,
    pub self_duality_residual: f64,
    pub steps: usize,
    pub rounds: usize,
    pub vertices: usize,
    pub pass: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(SphereCwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), format!("{}: {e}", e.name()))
    }
}

fn null() -> Failure {
    Failure(SphereCwStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SphereCwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(String::new());
            SphereCwStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SphereCwStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Reads three doubles; input already of unit length is kept bit-for-bit.
unsafe fn vector(p: *const f64) -> Result<UnitVector, Failure> {
    if p.is_null() {
        return Err(null());
    }
    let v = std::slice::from_raw_parts(p, 3);
    Ok(UnitVector::try_from([v[0], v[1], v[2]])?)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).map_err(|_| Failure(SphereCwStatus::InvalidUtf8, "interior NUL".into()))?.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn sphere_cw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Name of a status code as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sphere_cw_status_name(status: SphereCwStatus) -> *const c_char {
    let name: &'static CStr = match status {
        SphereCwStatus::Ok => c"Ok",
        SphereCwStatus::NullPointer => c"NullPointer",
        SphereCwStatus::InvalidUtf8 => c"InvalidUtf8",
        SphereCwStatus::Panic => c"Panic",
        SphereCwStatus::BufferTooSmall => c"BufferTooSmall",
        SphereCwStatus::ZeroVector => c"ZeroVector",
        SphereCwStatus::DegenerateLune => c"DegenerateLune",
        SphereCwStatus::DegenerateArc => c"DegenerateArc",
        SphereCwStatus::AmbiguousSide => c"AmbiguousSide",
        SphereCwStatus::BadRadius => c"BadRadius",
        SphereCwStatus::BadSpan => c"BadSpan",
        SphereCwStatus::InvalidBody => c"InvalidBody",
        SphereCwStatus::NotOnBoundary => c"NotOnBoundary",
        SphereCwStatus::NotSelfDual => c"NotSelfDual",
        SphereCwStatus::NotSupporting => c"NotSupporting",
        SphereCwStatus::NotStrictlyConvex => c"NotStrictlyConvex",
        SphereCwStatus::DualOverlap => c"DualOverlap",
        SphereCwStatus::NotConstantWidth => c"NotConstantWidth",
        SphereCwStatus::BudgetExhausted => c"BudgetExhausted",
        SphereCwStatus::CertificationFailed => c"CertificationFailed",
        SphereCwStatus::SeedNotSubdual => c"SeedNotSubdual",
        SphereCwStatus::EmptyIntersection => c"EmptyIntersection",
        SphereCwStatus::InvalidConfig => c"InvalidConfig",
    };
    name.as_ptr()
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a body handle. Null is ignored.
///
/// # Safety
/// `body` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_body_free(body: *mut SphereCwBody) {
    if !body.is_null() {
        drop(Box::from_raw(body));
    }
}

/// Releases a polytope handle. Null is ignored.
///
/// # Safety
/// `polytope` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_polytope_free(polytope: *mut SphereCwPolytope) {
    if !polytope.is_null() {
        drop(Box::from_raw(polytope));
    }
}

/// Spherical cap about `center` (three doubles, any nonzero length).
///
/// # Safety
/// `center` must point to three doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_cap(center: *const f64, radius: f64, out: *mut *mut SphereCwBody) -> SphereCwStatus {
    guard(|| put(out, SphereCwBody(generators::cap(vector(center)?, radius)?)))
}

/// The octant triangle with vertices at the coordinate axes.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_octant(out: *mut *mut SphereCwPolytope) -> SphereCwStatus {
    guard(|| put(out, SphereCwPolytope(generators::octant())))
}

/// Random self-dual polygon with about `n` vertices, deterministic in `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_random_polytope(n: usize, seed: u64, out: *mut *mut SphereCwPolytope) -> SphereCwStatus {
    guard(|| put(out, SphereCwPolytope(generators::random_selfdual_polytope(n, seed)?)))
}

/// Builds a polytope from `n` vertices stored as `3 * n` doubles.
///
/// # Safety
/// `xyz` must point to `3 * n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_polytope_new(xyz: *const f64, n: usize, out: *mut *mut SphereCwPolytope) -> SphereCwStatus {
    guard(|| {
        let vertices = (0..n).map(|i| vector(xyz.wrapping_add(3 * i))).collect::<Result<Vec<_>, _>>()?;
        let p = Polytope::new(vertices);
        p.ensure_valid()?;
        put(out, SphereCwPolytope(p))
    })
}

/// Number of vertices of a polytope, or 0 for a null handle.
///
/// # Safety
/// `polytope` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_polytope_len(polytope: *const SphereCwPolytope) -> usize {
    polytope.as_ref().map_or(0, |p| p.0.vertices().len())
}

/// Copies the vertices into `xyz` as `x, y, z` triples. `capacity` counts vertices.
///
/// # Safety
/// `polytope` must be a live handle and `xyz` must hold `3 * capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_polytope_vertices(
    polytope: *const SphereCwPolytope,
    xyz: *mut f64,
    capacity: usize,
) -> SphereCwStatus {
    guard(|| {
        let v = get(polytope)?.0.vertices();
        if xyz.is_null() {
            return Err(null());
        }
        if capacity < v.len() {
            return Err(Failure(SphereCwStatus::BufferTooSmall, format!("need room for {} vertices", v.len())));
        }
        let dst = std::slice::from_raw_parts_mut(xyz, 3 * v.len());
        for (chunk, p) in dst.chunks_exact_mut(3).zip(v) {
            chunk.copy_from_slice(&[p.x(), p.y(), p.z()]);
        }
        Ok(())
    })
}

/// Converts a polytope to a body with great-arc edges.
///
/// # Safety
/// `polytope` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_polytope_to_body(
    polytope: *const SphereCwPolytope,
    out: *mut *mut SphereCwBody,
) -> SphereCwStatus {
    guard(|| put(out, SphereCwBody(get(polytope)?.0.to_body()?)))
}

/// Parses a shape file (polytope or piecewise-circular body) into a body.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_body_from_json(json: *const c_char, out: *mut *mut SphereCwBody) -> SphereCwStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Failure(SphereCwStatus::InvalidUtf8, "input is not UTF-8".into()))?;
        put(out, SphereCwBody(parse_shape(text)?.to_body()?))
    })
}

/// Serializes a body; release the result with [`sphere_cw_string_free`].
///
/// # Safety
/// `body` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_body_to_json(body: *const SphereCwBody, out: *mut *mut c_char) -> SphereCwStatus {
    guard(|| put_string(out, shape_to_json(&Shape::Body(get(body)?.0.clone()))))
}

/// Serializes a polytope; release the result with [`sphere_cw_string_free`].
///
/// # Safety
/// `polytope` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_polytope_to_json(
    polytope: *const SphereCwPolytope,
    out: *mut *mut c_char,
) -> SphereCwStatus {
    guard(|| put_string(out, shape_to_json(&Shape::Polytope(get(polytope)?.0.clone()))))
}

/// Polar dual of a body.
///
/// # Safety
/// `body` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_body_dual(body: *const SphereCwBody, out: *mut *mut SphereCwBody) -> SphereCwStatus {
    guard(|| put(out, SphereCwBody(get(body)?.0.polar_dual()?)))
}

/// Thickness, diameter, width range and self-duality residual.
///
/// # Safety
/// `body` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_body_metrics(body: *const SphereCwBody, out: *mut SphereCwMetrics) -> SphereCwStatus {
    guard(|| {
        let report = is_constant_width(&get(body)?.0, std::f64::consts::FRAC_PI_2, 1e-6)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = SphereCwMetrics {
            thickness: report.thickness,
            diameter: report.diameter,
            width_min: report.width_min,
            width_max: report.width_max,
            self_duality_residual: report.self_duality_residual.unwrap_or(-1.0),
        };
        Ok(())
    })
}

/// Hausdorff distance between two bodies.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_hausdorff(a: *const SphereCwBody, b: *const SphereCwBody, out: *mut f64) -> SphereCwStatus {
    guard(|| {
        let h = hausdorff(&get(a)?.0, &get(b)?.0)?;
        *out.as_mut().ok_or_else(null)? = h;
        Ok(())
    })
}

/// Approximates a body of constant width π/2 by a self-dual polygon within
/// `epsilon`. `cert` may be null. On certification failure the polygon is
/// not returned and the status is `CertificationFailed`.
///
/// # Safety
/// `body` must be a live handle; `out` must be writable; `cert` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sphere_cw_approximate(
    body: *const SphereCwBody,
    epsilon: f64,
    out: *mut *mut SphereCwPolytope,
    cert: *mut SphereCwCertificate,
) -> SphereCwStatus {
    guard(|| {
        let cfg = ApproximationConfig::with_epsilon(epsilon);
        let result = sphere_cw::approximate_polytope(&get(body)?.0, &cfg)?;
        let c = &result.certificate;
        if let Some(cert) = cert.as_mut() {
            *cert = SphereCwCertificate {
                epsilon: c.epsilon,
                hausdorff_bound: c.hausdorff_bound,
                width_min: c.width_min,
                width_max: c.width_max,
                self_duality_residual: c.self_duality_residual,
                steps: c.steps,
                rounds: c.rounds,
                vertices: c.vertices,
                pass: c.pass,
            };
        }
        put(out, SphereCwPolytope(result.polytope))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(sphere_cw_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn status_names_are_stable() {
        let name = |s| unsafe { CStr::from_ptr(sphere_cw_status_name(s)) }.to_str().unwrap();
        assert_eq!(name(SphereCwStatus::Ok), "Ok");
        assert_eq!(name(SphereCwStatus::NotConstantWidth), "NotConstantWidth");
        assert_eq!(SphereCwStatus::from(&Error::InvalidConfig(String::new())) as i32, 27);
    }

    #[test]
    fn null_arguments_are_reported() {
        unsafe {
            assert_eq!(sphere_cw_cap(ptr::null(), 0.5, ptr::null_mut()), SphereCwStatus::NullPointer);
            let mut out = ptr::null_mut();
            assert_eq!(sphere_cw_body_dual(ptr::null(), &mut out), SphereCwStatus::NullPointer);
            assert!(out.is_null());
            assert_eq!(sphere_cw_polytope_len(ptr::null()), 0);
            sphere_cw_body_free(ptr::null_mut());
            sphere_cw_string_free(ptr::null_mut());
        }
        assert_eq!(last_error(), "null pointer argument");
    }

    #[test]
    fn cap_round_trip_and_errors() {
        unsafe {
            let mut body = ptr::null_mut();
            let z = [0.0, 0.0, 2.0];
            assert_eq!(sphere_cw_cap(z.as_ptr(), std::f64::consts::FRAC_PI_4, &mut body), SphereCwStatus::Ok);
            assert_eq!(last_error(), "");
            let mut m = SphereCwMetrics::default();
            assert_eq!(sphere_cw_body_metrics(body, &mut m), SphereCwStatus::Ok);
            assert!((m.thickness - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
            assert!(m.self_duality_residual <= 1e-10);

            let mut json = ptr::null_mut();
            assert_eq!(sphere_cw_body_to_json(body, &mut json), SphereCwStatus::Ok);
            let mut back = ptr::null_mut();
            assert_eq!(sphere_cw_body_from_json(json, &mut back), SphereCwStatus::Ok);
            let mut h = f64::NAN;
            assert_eq!(sphere_cw_hausdorff(body, back, &mut h), SphereCwStatus::Ok);
            assert_eq!(h, 0.0);
            sphere_cw_string_free(json);
            sphere_cw_body_free(back);
            sphere_cw_body_free(body);

            let mut bad = ptr::null_mut();
            assert_eq!(sphere_cw_cap(z.as_ptr(), -1.0, &mut bad), SphereCwStatus::BadRadius);
            assert!(last_error().starts_with("BadRadius"));
            assert_eq!(sphere_cw_cap([0.0; 3].as_ptr(), 0.3, &mut bad), SphereCwStatus::ZeroVector);
            assert_eq!(sphere_cw_body_from_json(c"{".as_ptr(), &mut bad), SphereCwStatus::InvalidBody);
            assert!(bad.is_null());
        }
    }

    #[test]
    fn approximate_cap() {
        unsafe {
            let mut body = ptr::null_mut();
            sphere_cw_cap([0.0, 0.0, 1.0].as_ptr(), std::f64::consts::FRAC_PI_4, &mut body);
            let mut poly = ptr::null_mut();
            let mut cert = SphereCwCertificate::default();
            assert_eq!(sphere_cw_approximate(body, 0.1, &mut poly, &mut cert), SphereCwStatus::Ok);
            assert!(cert.pass && cert.hausdorff_bound <= 0.2);
            let n = sphere_cw_polytope_len(poly);
            assert_eq!(n, cert.vertices);
            let mut xyz = vec![0.0; 3 * n];
            assert_eq!(sphere_cw_polytope_vertices(poly, xyz.as_mut_ptr(), n - 1), SphereCwStatus::BufferTooSmall);
            assert_eq!(sphere_cw_polytope_vertices(poly, xyz.as_mut_ptr(), n), SphereCwStatus::Ok);
            let mut rebuilt = ptr::null_mut();
            assert_eq!(sphere_cw_polytope_new(xyz.as_ptr(), n, &mut rebuilt), SphereCwStatus::Ok);
            assert_eq!((*rebuilt).0, (*poly).0);
            sphere_cw_polytope_free(rebuilt);
            sphere_cw_polytope_free(poly);

            let mut small = ptr::null_mut();
            sphere_cw_cap([0.0, 0.0, 1.0].as_ptr(), 0.4, &mut small);
            let mut none = ptr::null_mut();
            assert_eq!(sphere_cw_approximate(small, 0.1, &mut none, ptr::null_mut()), SphereCwStatus::NotConstantWidth);
            assert!(none.is_null());
            sphere_cw_body_free(small);
            sphere_cw_body_free(body);
        }
    }

    #[test]
    fn polytopes() {
        unsafe {
            let mut o = ptr::null_mut();
            assert_eq!(sphere_cw_octant(&mut o), SphereCwStatus::Ok);
            assert_eq!(sphere_cw_polytope_len(o), 3);
            let mut json = ptr::null_mut();
            sphere_cw_polytope_to_json(o, &mut json);
            assert_eq!(
                CStr::from_ptr(json).to_str().unwrap(),
                r#"{"kind":"polytope","vertices":[[1.0,0.0,0.0],[0.0,1.0,0.0],[0.0,0.0,1.0]]}"#
            );
            sphere_cw_string_free(json);
            let mut b = ptr::null_mut();
            assert_eq!(sphere_cw_polytope_to_body(o, &mut b), SphereCwStatus::Ok);
            let mut d = ptr::null_mut();
            assert_eq!(sphere_cw_body_dual(b, &mut d), SphereCwStatus::Ok);
            let mut h = 1.0;
            sphere_cw_hausdorff(b, d, &mut h);
            assert!(h <= 1e-12);
            for handle in [b, d] {
                sphere_cw_body_free(handle);
            }
            sphere_cw_polytope_free(o);

            let (mut p, mut q) = (ptr::null_mut(), ptr::null_mut());
            assert_eq!(sphere_cw_random_polytope(8, 42, &mut p), SphereCwStatus::Ok);
            sphere_cw_random_polytope(8, 42, &mut q);
            assert_eq!((*p).0, (*q).0);
            sphere_cw_polytope_free(p);
            sphere_cw_polytope_free(q);
            assert_eq!(sphere_cw_random_polytope(2, 1, &mut p), SphereCwStatus::InvalidConfig);
        }
    }
}
