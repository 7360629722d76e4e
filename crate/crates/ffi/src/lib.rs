//! C ABI over `elliptic-quintic`.
//!
//! Every fallible call returns an [`EqStatus`] and writes results through
//! out-pointers. Handles are opaque and must be released with their `_free`
//! function; strings returned as `char *` are released with
//! [`eq_string_free`]. Panics never cross the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use elliptic_quintic::audit::run_audit;
use elliptic_quintic::claims::{ClaimsReport, Format};
use elliptic_quintic::elliptic::{complete_k, dn_third_of_k, jacobi};
use elliptic_quintic::modular::{singular_modulus, Rational};
use elliptic_quintic::quintic::{
    build_family, recover_modulus, solve, Candidates, ModulusCandidate, SnBranch, SolveCertificate,
};
use elliptic_quintic::recognize::{recognize, AlgebraicCandidate, BigReal};
use elliptic_quintic::trisection::{dn_third_closed_form_with_branch, RadicalBranch};
use elliptic_quintic::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Convergence = 3,
    SingularDenominator = 4,
    NoAdmissibleRoot = 5,
    NotARoot = 6,
    BranchFailure = 7,
    Parse = 8,
    /// Every modulus solves the instance (`x = 1`, `h = 0`).
    Underdetermined = 9,
    /// No relation or candidate within the requested bounds.
    NotFound = 10,
    IndexOutOfRange = 11,
    Panic = 12,
}

impl From<&Error> for EqStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain { .. } => EqStatus::Domain,
            Error::Convergence { .. } => EqStatus::Convergence,
            Error::SingularDenominator { .. } => EqStatus::SingularDenominator,
            Error::NoAdmissibleRoot { .. } => EqStatus::NoAdmissibleRoot,
            Error::NotARoot { .. } => EqStatus::NotARoot,
            Error::BranchFailure { .. } => EqStatus::BranchFailure,
            Error::Parse(_) => EqStatus::Parse,
        }
    }
}

type Outcome = Result<(), EqStatus>;

fn fail(e: Error) -> EqStatus {
    EqStatus::from(&e)
}

fn guard(f: impl FnOnce() -> Outcome) -> EqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EqStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => EqStatus::Panic,
    }
}

/// Writes through `out` after checking for null.
unsafe fn put<T>(out: *mut T, v: T) -> Outcome {
    if out.is_null() {
        return Err(EqStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

unsafe fn get<'a, T>(handle: *const T) -> Result<&'a T, EqStatus> {
    handle.as_ref().ok_or(EqStatus::NullPointer)
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

unsafe fn release<T>(handle: *mut T) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Static, NUL-terminated library version.
#[no_mangle]
pub extern "C" fn eq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn eq_status_message(status: EqStatus) -> *const c_char {
    let s: &'static str = match status {
        EqStatus::Ok => "ok\0",
        EqStatus::NullPointer => "null pointer argument\0",
        EqStatus::Domain => "argument outside its domain\0",
        EqStatus::Convergence => "iteration did not converge\0",
        EqStatus::SingularDenominator => "singular denominator\0",
        EqStatus::NoAdmissibleRoot => "no admissible root\0",
        EqStatus::NotARoot => "value is not a root\0",
        EqStatus::BranchFailure => "radical branch failure\0",
        EqStatus::Parse => "parse error\0",
        EqStatus::Underdetermined => "underdetermined: every modulus is a solution\0",
        EqStatus::NotFound => "nothing found within the bounds\0",
        EqStatus::IndexOutOfRange => "index out of range\0",
        EqStatus::Panic => "internal panic\0",
    };
    s.as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// sn, cn and dn at `(u, m)`.
///
/// # Safety
/// Out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_jacobi(u: f64, m: f64, sn: *mut f64, cn: *mut f64, dn: *mut f64) -> EqStatus {
    guard(|| {
        if sn.is_null() || cn.is_null() || dn.is_null() {
            return Err(EqStatus::NullPointer);
        }
        let t = jacobi(u, m).map_err(fail)?;
        put(sn, t.sn)?;
        put(cn, t.cn)?;
        put(dn, t.dn)
    })
}

/// Complete integral `K(m)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_complete_k(m: f64, out: *mut f64) -> EqStatus {
    guard(|| put(out, complete_k(m).map_err(fail)?))
}

/// Coefficients of the quintic in `Y`, constant term first, at real `x` and
/// `h`. Both arrays need room for 6 values; imaginary parts are zero for
/// `|x| <= 1`.
///
/// # Safety
/// `re` and `im` must be valid for 6 writes each.
#[no_mangle]
pub unsafe extern "C" fn eq_family_coefficients(x: f64, h: f64, re: *mut f64, im: *mut f64) -> EqStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(EqStatus::NullPointer);
        }
        for (i, c) in build_family(x).polynomial(h).iter().enumerate() {
            re.add(i).write(c.re);
            im.add(i).write(c.im);
        }
        Ok(())
    })
}

/// `k_r` for `r = num/den` with the residual `|K(1-m)/K(m) - sqrt(r)|`.
///
/// # Safety
/// Out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_singular_modulus(num: u64, den: u64, k: *mut f64, residual: *mut f64) -> EqStatus {
    guard(|| {
        let s = singular_modulus(Rational::new(num, den).map_err(fail)?).map_err(fail)?;
        put(k, s.k())?;
        put(residual, s.residual)
    })
}

/// `dn(K/3)` at modulus `k`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_dn_third(k: f64, out: *mut f64) -> EqStatus {
    guard(|| put(out, dn_third_of_k(k * k).map_err(fail)?))
}

/// Nested-radical `dn(K/3)`; `negated` flips the sign of the inner radical.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_dn_third_closed_form(k: f64, negated: bool, out: *mut f64) -> EqStatus {
    let branch = if negated { RadicalBranch::Negated } else { RadicalBranch::Principal };
    guard(|| put(out, dn_third_closed_form_with_branch(k, branch).map_err(fail)?))
}

/// Certificates for every recovered modulus at `(x, h)`.
pub struct EqSolve {
    certificates: Vec<SolveCertificate>,
}

/// Solves the quintic at `(x, h)`. Returns `Underdetermined` with a null
/// handle for `x = 1, h = 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_solve(x: f64, h: f64, out: *mut *mut EqSolve) -> EqStatus {
    guard(|| {
        put(out, ptr::null_mut())?;
        match solve(x, h).map_err(fail)? {
            Candidates::Underdetermined => Err(EqStatus::Underdetermined),
            Candidates::Found(certificates) => put(out, boxed(EqSolve { certificates })),
        }
    })
}

/// Number of certificates; 0 for null.
///
/// # Safety
/// `handle` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn eq_solve_count(handle: *const EqSolve) -> usize {
    handle.as_ref().map_or(0, |h| h.certificates.len())
}

unsafe fn certificate<'a>(handle: *const EqSolve, index: usize) -> Result<&'a SolveCertificate, EqStatus> {
    get(handle)?.certificates.get(index).ok_or(EqStatus::IndexOutOfRange)
}

/// Recovered `m` of certificate `index` and its elliptic-root residual.
///
/// # Safety
/// `handle` must be live; out-pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_solve_modulus(
    handle: *const EqSolve,
    index: usize,
    m: *mut f64,
    residual: *mut f64,
) -> EqStatus {
    guard(|| {
        let c = certificate(handle, index)?;
        put(m, c.recovered_m0.unwrap_or(f64::NAN))?;
        put(residual, c.residual)
    })
}

/// The five roots of certificate `index`, elliptic root first, with their
/// residuals. Each array needs room for 5 values.
///
/// # Safety
/// `handle` must be live; arrays valid for 5 writes each.
#[no_mangle]
pub unsafe extern "C" fn eq_solve_roots(
    handle: *const EqSolve,
    index: usize,
    re: *mut f64,
    im: *mut f64,
    residuals: *mut f64,
) -> EqStatus {
    guard(|| {
        if re.is_null() || im.is_null() || residuals.is_null() {
            return Err(EqStatus::NullPointer);
        }
        let c = certificate(handle, index)?;
        let res = std::iter::once(c.residual).chain(c.co_root_residuals.iter().copied());
        for (i, (z, r)) in c.roots().into_iter().zip(res).take(5).enumerate() {
            re.add(i).write(z.re);
            im.add(i).write(z.im);
            residuals.add(i).write(r);
        }
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or live, and not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eq_solve_free(handle: *mut EqSolve) {
    release(handle)
}

/// Moduli with `x = dn(u)` and `h = sn(3u)`.
pub struct EqModuli {
    candidates: Vec<ModulusCandidate>,
}

/// Recovers every admissible `m` for `(x, h)`. Returns `Underdetermined`
/// with a null handle for `x = 1, h = 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_recover_modulus(x: f64, h: f64, out: *mut *mut EqModuli) -> EqStatus {
    guard(|| {
        put(out, ptr::null_mut())?;
        match recover_modulus(x, h).map_err(fail)? {
            Candidates::Underdetermined => Err(EqStatus::Underdetermined),
            Candidates::Found(candidates) => put(out, boxed(EqModuli { candidates })),
        }
    })
}

/// # Safety
/// `handle` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn eq_moduli_count(handle: *const EqModuli) -> usize {
    handle.as_ref().map_or(0, |h| h.candidates.len())
}

/// Candidate `index`: `m`, `u`, quintic residual at `Y = sqrt(m)`, and
/// whether `3u` lies on the reflected branch `2K - F`.
///
/// # Safety
/// `handle` must be live; out-pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_moduli_get(
    handle: *const EqModuli,
    index: usize,
    m: *mut f64,
    u: *mut f64,
    residual: *mut f64,
    reflected: *mut bool,
) -> EqStatus {
    guard(|| {
        let c = get(handle)?.candidates.get(index).ok_or(EqStatus::IndexOutOfRange)?;
        put(m, c.m)?;
        put(u, c.u)?;
        put(residual, c.residual)?;
        put(reflected, c.branch == SnBranch::Reflected)
    })
}

/// # Safety
/// `handle` must be null or live, and not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eq_moduli_free(handle: *mut EqModuli) {
    release(handle)
}

/// A claims report.
pub struct EqReport {
    report: ClaimsReport,
}

/// Runs the full audit.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_audit_run(out: *mut *mut EqReport) -> EqStatus {
    guard(|| {
        put(out, ptr::null_mut())?;
        put(out, boxed(EqReport { report: run_audit() }))
    })
}

/// Claim counts, and whether no gating claim failed.
///
/// # Safety
/// `handle` must be live; out-pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_report_summary(
    handle: *const EqReport,
    pass: *mut usize,
    fail: *mut usize,
    undetermined: *mut usize,
    exit_ok: *mut bool,
) -> EqStatus {
    guard(|| {
        let r = &get(handle)?.report;
        let s = r.summary();
        put(pass, s.pass)?;
        put(fail, s.fail)?;
        put(undetermined, s.undetermined)?;
        put(exit_ok, r.exit_ok())
    })
}

/// Renders the report as text or JSON lines into a new string.
///
/// # Safety
/// `handle` must be live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_report_render(
    handle: *const EqReport,
    json_lines: bool,
    out: *mut *mut c_char,
) -> EqStatus {
    guard(|| {
        let r = &get(handle)?.report;
        let format = if json_lines { Format::JsonLines } else { Format::Text };
        put(out, to_c_string(r.render(format)))
    })
}

/// # Safety
/// `handle` must be null or live, and not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eq_report_free(handle: *mut EqReport) {
    release(handle)
}

/// An integer polynomial found by lattice reduction.
pub struct EqCandidate {
    candidate: AlgebraicCandidate,
}

/// Recognizes the decimal string `value` read at `precision` bits. Returns
/// `NotFound` with a null handle when no relation fits the bounds.
///
/// # Safety
/// `value` must be a NUL-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eq_recognize(
    value: *const c_char,
    precision: u32,
    max_degree: usize,
    max_height: i64,
    out: *mut *mut EqCandidate,
) -> EqStatus {
    guard(|| {
        put(out, ptr::null_mut())?;
        if value.is_null() {
            return Err(EqStatus::NullPointer);
        }
        let text = CStr::from_ptr(value).to_str().map_err(|_| EqStatus::Parse)?;
        let alpha = BigReal::parse_decimal(text, precision).map_err(fail)?;
        match recognize(&alpha, max_degree, max_height).map_err(fail)? {
            Some(candidate) => put(out, boxed(EqCandidate { candidate })),
            None => Err(EqStatus::NotFound),
        }
    })
}

/// # Safety
/// `handle` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn eq_candidate_degree(handle: *const EqCandidate) -> usize {
    handle.as_ref().map_or(0, |h| h.candidate.degree)
}

/// Copies the coefficients, constant term first, into `out` (room for
/// `degree + 1` values).
///
/// # Safety
/// `handle` must be live; `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn eq_candidate_coefficients(handle: *const EqCandidate, out: *mut i64, len: usize) -> EqStatus {
    guard(|| {
        let c = &get(handle)?.candidate;
        if out.is_null() {
            return Err(EqStatus::NullPointer);
        }
        if len < c.coefficients.len() {
            return Err(EqStatus::IndexOutOfRange);
        }
        ptr::copy_nonoverlapping(c.coefficients.as_ptr(), out, c.coefficients.len());
        Ok(())
    })
}

/// The polynomial as text, e.g. `Y^2 - 2`; free with [`eq_string_free`].
///
/// # Safety
/// `handle` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn eq_candidate_polynomial(handle: *const EqCandidate) -> *mut c_char {
    match handle.as_ref() {
        Some(h) => to_c_string(h.candidate.polynomial_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `handle` must be null or live, and not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eq_candidate_free(handle: *mut EqCandidate) {
    release(handle)
}
