//! C ABI over `twistverify`.
//!
//! Every fallible call returns a [`TvStatus`]; on failure a message is kept
//! per thread and can be read with [`tv_last_error`]. Handles are opaque and
//! must be released with the matching `_free` function. Strings returned by
//! the library are released with [`tv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twistverify::cli::{cross_check, parse_families, SuiteDocument};
use twistverify::ktheory::evaluate_word_matrix;
use twistverify::sheaf::{cohomology, evaluate_word, DObject, Divisor, Evaluation};
use twistverify::verifier::{
    suite_relators, suite_verdict, verify_relation_suite, Representation, SearchConfig,
    SuiteVerdict, VerificationReport,
};
use twistverify::words::Word;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    /// A word could not be evaluated inside the calculus.
    Stuck = 5,
    Mismatch = 6,
    Exhausted = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Bit for the K-theory representation in `tv_verify`'s mask.
pub const TV_REP_KTHEORY: u32 = 1;
/// Bit for the sheaf representation in `tv_verify`'s mask.
pub const TV_REP_SHEAF: u32 = 2;

/// A parsed word.
pub struct TvWord(Word);

/// An object of the derived category.
pub struct TvObject(DObject);

/// The outcome of a verification suite.
pub struct TvReport(SuiteDocument);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: TvStatus, msg: impl Into<String>) -> TvStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> TvStatus) -> TvStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(TvStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TvStatus> {
    if s.is_null() {
        return Err(fail(TvStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(TvStatus::InvalidUtf8, "string is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a word such as `"a b1 a' t"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_word_parse(text: *const c_char, out: *mut *mut TvWord) -> TvStatus {
    guard(|| {
        if out.is_null() {
            return fail(TvStatus::NullPointer, "null output pointer");
        }
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match s.parse::<Word>() {
            Ok(w) => {
                *out = Box::into_raw(Box::new(TvWord(w)));
                TvStatus::Ok
            }
            Err(e) => fail(TvStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `w` must be NULL or a handle from [`tv_word_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tv_word_free(w: *mut TvWord) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Number of letters, or 0 for NULL.
///
/// # Safety
/// `w` must be NULL or a live word handle.
#[no_mangle]
pub unsafe extern "C" fn tv_word_len(w: *const TvWord) -> usize {
    w.as_ref().map_or(0, |w| w.0.len())
}

/// Parses an object such as `"O([1,0])[2]"` or `"k(1)"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tv_object_parse(text: *const c_char, out: *mut *mut TvObject) -> TvStatus {
    guard(|| {
        if out.is_null() {
            return fail(TvStatus::NullPointer, "null output pointer");
        }
        let s = match read_str(text) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match s.parse::<DObject>() {
            Ok(o) => {
                *out = Box::into_raw(Box::new(TvObject(o)));
                TvStatus::Ok
            }
            Err(e) => fail(TvStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `o` must be NULL or a live object handle.
#[no_mangle]
pub unsafe extern "C" fn tv_object_free(o: *mut TvObject) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Text form of an object; free with [`tv_string_free`]. NULL on NULL input.
///
/// # Safety
/// `o` must be NULL or a live object handle.
#[no_mangle]
pub unsafe extern "C" fn tv_object_to_string(o: *const TvObject) -> *mut c_char {
    o.as_ref()
        .map_or(ptr::null_mut(), |o| into_c_string(o.0.to_string()))
}

/// `h^0` and `h^1` of `O(D)` for `D = coeffs[0..n]`.
///
/// # Safety
/// `coeffs` must point to `n` readable values; `h0` and `h1` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tv_cohomology(
    coeffs: *const i64,
    n: usize,
    h0: *mut u64,
    h1: *mut u64,
) -> TvStatus {
    guard(|| {
        if coeffs.is_null() || h0.is_null() || h1.is_null() {
            return fail(TvStatus::NullPointer, "null pointer argument");
        }
        if n == 0 {
            return fail(TvStatus::InvalidArgument, "n must be positive");
        }
        let d = Divisor(std::slice::from_raw_parts(coeffs, n).to_vec());
        match cohomology(&d) {
            Ok(dims) => {
                *h0 = dims.h0;
                *h1 = dims.h1;
                TvStatus::Ok
            }
            Err(e) => fail(TvStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Applies `w` to `obj` on `X_n`. Returns `Stuck` (with a diagnostic in
/// [`tv_last_error`]) when a letter does not reduce.
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tv_act(
    n: usize,
    w: *const TvWord,
    obj: *const TvObject,
    out: *mut *mut TvObject,
) -> TvStatus {
    guard(|| {
        let (Some(w), Some(obj)) = (w.as_ref(), obj.as_ref()) else {
            return fail(TvStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(TvStatus::NullPointer, "null output pointer");
        }
        if let Err(e) = w.0.check(n) {
            return fail(TvStatus::InvalidArgument, e.to_string());
        }
        if let Err(e) = obj.0.check(n) {
            return fail(TvStatus::InvalidArgument, e.to_string());
        }
        match evaluate_word(&w.0, &obj.0, n) {
            Evaluation::Done(o) => {
                *out = Box::into_raw(Box::new(TvObject(o)));
                TvStatus::Ok
            }
            Evaluation::Stuck(st) => fail(
                TvStatus::Stuck,
                format!(
                    "`{}` left to apply to {}: {}",
                    st.remaining, st.object, st.reason
                ),
            ),
        }
    })
}

/// Writes the `(n+1)×(n+1)` K-theory matrix of `w`, row-major, into `out`.
///
/// # Safety
/// `w` must be live and `out` must have room for `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn tv_word_matrix(
    n: usize,
    w: *const TvWord,
    out: *mut i64,
    out_len: usize,
) -> TvStatus {
    guard(|| {
        let Some(w) = w.as_ref() else {
            return fail(TvStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(TvStatus::NullPointer, "null output buffer");
        }
        if let Err(e) = w.0.check(n) {
            return fail(TvStatus::InvalidArgument, e.to_string());
        }
        let d = n + 1;
        if out_len < d * d {
            return fail(TvStatus::BufferTooSmall, format!("need {} entries", d * d));
        }
        let m = evaluate_word_matrix(&w.0, n);
        let dst = std::slice::from_raw_parts_mut(out, d * d);
        for (k, x) in m.entries.iter().flatten().enumerate() {
            match i64::try_from(x) {
                Ok(v) => dst[k] = v,
                Err(_) => return fail(TvStatus::InvalidArgument, "entry overflows i64"),
            }
        }
        TvStatus::Ok
    })
}

/// Runs a verification suite. `families` is a comma separated list or
/// `"all"`; `rep_mask` combines `TV_REP_KTHEORY` and `TV_REP_SHEAF`; a
/// `budget` of 0 selects the default. The report is written to `out` even
/// when the suite does not verify; the return value is its verdict.
///
/// # Safety
/// `families` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tv_verify(
    n: usize,
    families: *const c_char,
    rep_mask: u32,
    budget: usize,
    out: *mut *mut TvReport,
) -> TvStatus {
    guard(|| {
        if out.is_null() {
            return fail(TvStatus::NullPointer, "null output pointer");
        }
        let spec = match read_str(families) {
            Ok(s) => s,
            Err(st) => return st,
        };
        if n == 0 {
            return fail(TvStatus::InvalidArgument, "n must be positive");
        }
        let mut reps = Vec::new();
        if rep_mask & TV_REP_KTHEORY != 0 {
            reps.push(Representation::Ktheory);
        }
        if rep_mask & TV_REP_SHEAF != 0 {
            reps.push(Representation::Sheaf);
        }
        if reps.is_empty() || rep_mask & !(TV_REP_KTHEORY | TV_REP_SHEAF) != 0 {
            return fail(TvStatus::InvalidArgument, "bad representation mask");
        }
        let fams = match parse_families(spec, n) {
            Ok(f) => f,
            Err(e) => return fail(TvStatus::InvalidArgument, e.to_string()),
        };
        let rels = match suite_relators(n, &fams) {
            Ok(r) => r,
            Err(e) => return fail(TvStatus::InvalidArgument, e.to_string()),
        };
        let mut config = SearchConfig::default();
        if budget > 0 {
            config.budget = budget;
        }
        let reports = match verify_relation_suite(n, &fams, &reps, config) {
            Ok(r) => r,
            Err(e) => return fail(TvStatus::InvalidArgument, e.to_string()),
        };
        let violations = cross_check(&reports, &rels, n);
        let mut verdict = suite_verdict(&reports);
        if !violations.is_empty() {
            verdict = SuiteVerdict::Mismatch;
        }
        let doc = SuiteDocument {
            n,
            verdict,
            cross_check_violations: violations,
            records: reports
                .iter()
                .flat_map(VerificationReport::records)
                .collect(),
        };
        *out = Box::into_raw(Box::new(TvReport(doc)));
        verdict_status(verdict)
    })
}

fn verdict_status(v: SuiteVerdict) -> TvStatus {
    match v {
        SuiteVerdict::Verified => TvStatus::Ok,
        SuiteVerdict::Mismatch => TvStatus::Mismatch,
        SuiteVerdict::Exhausted => TvStatus::Exhausted,
    }
}

/// Verdict of a report: `Ok`, `Mismatch` or `Exhausted`.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tv_report_verdict(r: *const TvReport) -> TvStatus {
    match r.as_ref() {
        Some(r) => verdict_status(r.0.verdict),
        None => fail(TvStatus::NullPointer, "null handle"),
    }
}

/// Number of per-object records.
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tv_report_len(r: *const TvReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.records.len())
}

/// The report as a JSON document; free with [`tv_string_free`].
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tv_report_to_json(r: *const TvReport) -> *mut c_char {
    r.as_ref()
        .and_then(|r| serde_json::to_string(&r.0).ok())
        .map_or(ptr::null_mut(), into_c_string)
}

/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn tv_report_free(r: *mut TvReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
