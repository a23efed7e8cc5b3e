//! C ABI over `mermin-core`.
//!
//! Every fallible function returns a [`MerminStatus`] and writes its result
//! through an out-pointer. On failure a message is available from
//! [`mermin_last_error_message`] on the same thread. Objects are opaque
//! handles released with their matching `_free` function; strings returned
//! by the library are released with [`mermin_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mermin_core::bounds::{self, MaximizeOptions, MeasurementSetting, Mode};
use mermin_core::eigenops::{eigen_basis, verify_identities};
use mermin_core::instructional::{device_verdict, Device};
use mermin_core::pauli::PauliSum;
use mermin_core::state::{named_state, StateVector, SymCoeffs};
use mermin_core::{Complex64, Error};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MerminStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    DimensionMismatch = 4,
    Unsupported = 5,
    VerificationFailed = 6,
    Panic = 7,
}

/// Optimization mode for [`mermin_maximize`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MerminMode {
    /// One `(x, y)` pair shared by all qubits.
    Uniform = 0,
    /// Independent `(x, y)` per qubit.
    General = 1,
}

/// Opaque state vector.
pub struct MerminState {
    inner: StateVector,
}

/// Opaque linear combination of Pauli words.
pub struct MerminPauliSum {
    inner: PauliSum,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MerminStatus {
    match e {
        Error::Parse(_) | Error::UnknownId(_) => MerminStatus::Parse,
        Error::DimensionMismatch { .. } | Error::CoefficientCount { .. } => {
            MerminStatus::DimensionMismatch
        }
        Error::UnsupportedQubits(_)
        | Error::UnsupportedExpression(_)
        | Error::TooManyQubits { .. }
        | Error::NotExchangeSymmetric => MerminStatus::Unsupported,
        _ => MerminStatus::InvalidArgument,
    }
}

struct Fail(MerminStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(MerminStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MerminStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MerminStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            MerminStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(MerminStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

fn box_state(v: StateVector) -> *mut MerminState {
    Box::into_raw(Box::new(MerminState { inner: v }))
}

fn box_sum(s: PauliSum) -> *mut MerminPauliSum {
    Box::into_raw(Box::new(MerminPauliSum { inner: s }))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mermin_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mermin_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mermin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a named state (`u3`, `ghz4`, `v31`, `tv41`, ...). `coeffs_re` and
/// `coeffs_im` hold `n_coeffs` pair coefficients for the symmetrized
/// families; pass `n_coeffs = 0` for the defaults. `coeffs_im` may be NULL.
///
/// # Safety
/// `id` must be a NUL-terminated string; coefficient arrays must hold
/// `n_coeffs` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_state_named(
    id: *const c_char,
    coeffs_re: *const f64,
    coeffs_im: *const f64,
    n_coeffs: usize,
    out: *mut *mut MerminState,
) -> MerminStatus {
    guard(|| {
        let id = str_arg(id, "id")?;
        let out = out_arg(out, "out")?;
        let coeffs = if n_coeffs == 0 {
            None
        } else {
            let re = slice_arg(coeffs_re, n_coeffs, "coeffs_re")?;
            let values = if coeffs_im.is_null() {
                re.iter().map(|r| Complex64::new(*r, 0.0)).collect()
            } else {
                let im = slice_arg(coeffs_im, n_coeffs, "coeffs_im")?;
                re.iter()
                    .zip(im)
                    .map(|(r, i)| Complex64::new(*r, *i))
                    .collect()
            };
            Some(SymCoeffs::new(values)?)
        };
        *out = box_state(named_state(id, coeffs.as_ref())?);
        Ok(())
    })
}

/// Builds a state from `2^n` amplitudes. `im` may be NULL for real vectors.
///
/// # Safety
/// `re` (and `im` when non-NULL) must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_state_from_amplitudes(
    n: u32,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut MerminState,
) -> MerminStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let re = slice_arg(re, len, "re")?;
        let amps = if im.is_null() {
            re.iter().map(|r| Complex64::new(*r, 0.0)).collect()
        } else {
            let im = slice_arg(im, len, "im")?;
            re.iter()
                .zip(im)
                .map(|(r, i)| Complex64::new(*r, *i))
                .collect()
        };
        *out = box_state(StateVector::from_amps(n as usize, amps)?);
        Ok(())
    })
}

/// Releases a state. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mermin_state_free(s: *mut MerminState) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of qubits, or 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mermin_state_qubits(s: *const MerminState) -> u32 {
    s.as_ref().map_or(0, |s| s.inner.n() as u32)
}

/// Copies the `2^n` amplitudes into `re_out` and `im_out`.
///
/// # Safety
/// `s` must be a live handle; both buffers must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn mermin_state_amplitudes(
    s: *const MerminState,
    re_out: *mut f64,
    im_out: *mut f64,
    len: usize,
) -> MerminStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("state"))?;
        let amps = s.inner.amps();
        if len != amps.len() {
            return Err(Error::DimensionMismatch {
                expected: amps.len(),
                actual: len,
            }
            .into());
        }
        if re_out.is_null() || im_out.is_null() {
            return Err(null("output buffer"));
        }
        for (k, a) in amps.iter().enumerate() {
            *re_out.add(k) = a.re;
            *im_out.add(k) = a.im;
        }
        Ok(())
    })
}

/// Serializes a state as `{"n": .., "amps": [[re, im], ...]}`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable. Free the result with
/// [`mermin_string_free`].
#[no_mangle]
pub unsafe extern "C" fn mermin_state_to_json(
    s: *const MerminState,
    out: *mut *mut c_char,
) -> MerminStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("state"))?;
        let out = out_arg(out, "out")?;
        let text = serde_json::to_string(&s.inner).expect("serializable");
        *out = to_c_string(text);
        Ok(())
    })
}

/// Parses a Pauli sum such as `s(1,2,2) - 2*s(2,1,2)`. With `n = 0` the
/// qubit count is taken from the first word.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_pauli_parse(
    text: *const c_char,
    n: u32,
    out: *mut *mut MerminPauliSum,
) -> MerminStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let out = out_arg(out, "out")?;
        let sum = if n == 0 {
            text.parse::<PauliSum>()?
        } else {
            PauliSum::parse_with_n(text, n as usize)?
        };
        *out = box_sum(sum);
        Ok(())
    })
}

/// Releases a Pauli sum. NULL is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mermin_pauli_free(p: *mut MerminPauliSum) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Renders a Pauli sum in the parse grammar.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_pauli_to_string(
    p: *const MerminPauliSum,
    out: *mut *mut c_char,
) -> MerminStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("pauli"))?;
        *out_arg(out, "out")? = to_c_string(p.inner.to_string());
        Ok(())
    })
}

/// `out = a + b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_pauli_add(
    a: *const MerminPauliSum,
    b: *const MerminPauliSum,
    out: *mut *mut MerminPauliSum,
) -> MerminStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        let b = b.as_ref().ok_or_else(|| null("b"))?;
        let out = out_arg(out, "out")?;
        *out = box_sum(a.inner.checked_add(&b.inner)?);
        Ok(())
    })
}

/// `out = a · b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_pauli_mul(
    a: *const MerminPauliSum,
    b: *const MerminPauliSum,
    out: *mut *mut MerminPauliSum,
) -> MerminStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        let b = b.as_ref().ok_or_else(|| null("b"))?;
        let out = out_arg(out, "out")?;
        *out = box_sum(a.inner.checked_mul(&b.inner)?);
        Ok(())
    })
}

/// Writes whether `a` and `b` commute.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_pauli_commutes(
    a: *const MerminPauliSum,
    b: *const MerminPauliSum,
    out: *mut bool,
) -> MerminStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        let b = b.as_ref().ok_or_else(|| null("b"))?;
        *out_arg(out, "out")? = a.inner.commutes(&b.inner)?;
        Ok(())
    })
}

/// `out = p v` as a new state.
///
/// # Safety
/// `p`, `v` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_pauli_apply(
    p: *const MerminPauliSum,
    v: *const MerminState,
    out: *mut *mut MerminState,
) -> MerminStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("pauli"))?;
        let v = v.as_ref().ok_or_else(|| null("state"))?;
        let out = out_arg(out, "out")?;
        *out = box_state(p.inner.apply(&v.inner)?);
        Ok(())
    })
}

unsafe fn setting_arg(n: usize, x: *const f64, y: *const f64) -> Result<MeasurementSetting, Fail> {
    let x = slice_arg(x, 3 * n, "x")?;
    let y = slice_arg(y, 3 * n, "y")?;
    let triples = |s: &[f64]| s.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
    Ok(MeasurementSetting::new(triples(x), triples(y))?)
}

/// Mermin expectation `μ_n(v)`. `x` and `y` hold `3n` direction components,
/// qubit by qubit.
///
/// # Safety
/// `v` must be a live handle; `x`, `y` must hold `3n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_expectation(
    v: *const MerminState,
    x: *const f64,
    y: *const f64,
    out: *mut f64,
) -> MerminStatus {
    guard(|| {
        let v = v.as_ref().ok_or_else(|| null("state"))?;
        let s = setting_arg(v.inner.n(), x, y)?;
        *out_arg(out, "out")? = bounds::expectation(&v.inner, &s)?;
        Ok(())
    })
}

/// Maximizes `|μ_n(v)|`. Writes the value and, when `x_out`/`y_out` are
/// non-NULL, the `3n` components of the achieving directions. `starts = 0`
/// selects the default start count.
///
/// # Safety
/// `v` must be a live handle; `value_out` must be writable; non-NULL
/// direction buffers must hold `3n` values.
#[no_mangle]
pub unsafe extern "C" fn mermin_maximize(
    v: *const MerminState,
    mode: MerminMode,
    seed: u64,
    starts: u32,
    value_out: *mut f64,
    x_out: *mut f64,
    y_out: *mut f64,
) -> MerminStatus {
    guard(|| {
        let v = v.as_ref().ok_or_else(|| null("state"))?;
        let value_out = out_arg(value_out, "value_out")?;
        let mode = match mode {
            MerminMode::Uniform => Mode::Uniform,
            MerminMode::General => Mode::General,
        };
        let opts = MaximizeOptions {
            starts: if starts == 0 {
                bounds::DEFAULT_STARTS
            } else {
                starts as usize
            },
            seed,
        };
        let r = bounds::maximize(&v.inner, mode, &opts)?;
        *value_out = r.value;
        for (buf, dirs) in [(x_out, r.setting.x()), (y_out, r.setting.y())] {
            if !buf.is_null() {
                for (k, c) in dirs.iter().flatten().enumerate() {
                    *buf.add(k) = *c;
                }
            }
        }
        Ok(())
    })
}

/// Default seed used by [`mermin_maximize`] callers that want the reference runs.
#[no_mangle]
pub extern "C" fn mermin_default_seed() -> u64 {
    bounds::DEFAULT_SEED
}

/// Solves a built-in instructional-set device (`u3`, `u4-2`, `tv41`, ...).
///
/// # Safety
/// `id` must be NUL-terminated; `explainable` and `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_device_verdict(
    id: *const c_char,
    explainable: *mut bool,
    count: *mut u64,
) -> MerminStatus {
    guard(|| {
        let id = str_arg(id, "id")?;
        let explainable = out_arg(explainable, "explainable")?;
        let count = out_arg(count, "count")?;
        let v = device_verdict(&Device::from_id(id)?)?;
        *explainable = v.explainable;
        *count = v.report.count as u64;
        Ok(())
    })
}

/// Eigenoperator basis of a state as JSON `{"operators": [...], "eigenvalues": [...]}`.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_eigen_basis_json(
    v: *const MerminState,
    out: *mut *mut c_char,
) -> MerminStatus {
    guard(|| {
        let v = v.as_ref().ok_or_else(|| null("state"))?;
        let out = out_arg(out, "out")?;
        let b = eigen_basis(&v.inner)?;
        let ops: Vec<String> = b.operators.iter().map(ToString::to_string).collect();
        let json = serde_json::json!({ "operators": ops, "eigenvalues": b.eigenvalues });
        *out = to_c_string(json.to_string());
        Ok(())
    })
}

/// Runs the identity suite. Returns `VerificationFailed` if any check fails;
/// the JSON report is written to `report_out` when non-NULL either way.
///
/// # Safety
/// `report_out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn mermin_verify_identities(report_out: *mut *mut c_char) -> MerminStatus {
    guard(|| {
        let report = verify_identities();
        if let Some(out) = report_out.as_mut() {
            *out = to_c_string(serde_json::to_string(&report).expect("serializable"));
        }
        if report.all_passed() {
            Ok(())
        } else {
            let names: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
            Err(Fail(MerminStatus::VerificationFailed, names.join(", ")))
        }
    })
}
