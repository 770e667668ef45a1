//! C interface to `polog`.
//!
//! Every fallible call returns a [`PologStatus`]; on failure the message is
//! available from [`polog_last_error_message`] on the same thread. Handles
//! are opaque and released with their `_free` function. Strings returned
//! through `char **` out-parameters are released with
//! [`polog_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polog::kb::{load_kb, write_kb};
use polog::report::{run_query, Engine};
use polog::syntactic::{build_ker, KerResult};
use polog::{Error, Formula, Limits, PartiallyOrderedKb};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PologStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    CapExceeded = 5,
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PologEngine {
    Oracle = 0,
    Semantic = 1,
    Cons = 2,
    Ker = 3,
    Alt = 4,
}

impl From<PologEngine> for Engine {
    fn from(e: PologEngine) -> Engine {
        match e {
            PologEngine::Oracle => Engine::Oracle,
            PologEngine::Semantic => Engine::Semantic,
            PologEngine::Cons => Engine::Cons,
            PologEngine::Ker => Engine::Ker,
            PologEngine::Alt => Engine::Alt,
        }
    }
}

/// A loaded knowledge base.
pub struct PologKb {
    kb: PartiallyOrderedKb,
}

/// The kernels of a knowledge base, with search statistics.
pub struct PologKer {
    kb: PartiallyOrderedKb,
    result: KerResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PologStatus {
    match e.root() {
        Error::CapExceeded { .. } => PologStatus::CapExceeded,
        Error::EmptyInput | Error::Syntax { .. } | Error::KbSyntax { .. } => PologStatus::Parse,
        _ => PologStatus::Invalid,
    }
}

fn fail(status: PologStatus, message: &str) -> PologStatus {
    set_error(message);
    status
}

/// Runs `body`, turning panics into [`PologStatus::Panic`].
fn guard(body: impl FnOnce() -> PologStatus) -> PologStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(PologStatus::Panic, "internal error"),
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, PologStatus> {
    if s.is_null() {
        return Err(fail(PologStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(PologStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn give_string(s: String, out: *mut *mut c_char) -> PologStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            PologStatus::Ok
        }
        Err(_) => fail(PologStatus::Invalid, "result contains a NUL byte"),
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(PologStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// The message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn polog_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn polog_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a base in the `.polog` text format.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polog_kb_load(source: *const c_char, out: *mut *mut PologKb) -> PologStatus {
    guard(|| {
        non_null!(out);
        *out = ptr::null_mut();
        let source = match text(source) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match load_kb(source) {
            Ok(kb) => {
                *out = Box::into_raw(Box::new(PologKb { kb }));
                PologStatus::Ok
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// # Safety
/// `kb` must come from [`polog_kb_load`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn polog_kb_free(kb: *mut PologKb) {
    if !kb.is_null() {
        drop(Box::from_raw(kb));
    }
}

/// Number of formulas, or 0 for a null handle.
///
/// # Safety
/// `kb` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polog_kb_len(kb: *const PologKb) -> usize {
    kb.as_ref().map_or(0, |k| k.kb.len())
}

/// The base in `.polog` text form.
///
/// # Safety
/// `kb` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polog_kb_write(kb: *const PologKb, out: *mut *mut c_char) -> PologStatus {
    guard(|| {
        non_null!(kb, out);
        give_string(write_kb(&(*kb).kb), out)
    })
}

/// Decides whether `query` follows from the base, using `engine` and the
/// default resource caps.
///
/// # Safety
/// `kb` must be a live handle, `query` a NUL-terminated string and
/// `entailed` writable.
#[no_mangle]
pub unsafe extern "C" fn polog_kb_entails(
    kb: *const PologKb,
    query: *const c_char,
    engine: PologEngine,
    entailed: *mut bool,
) -> PologStatus {
    guard(|| {
        non_null!(kb, entailed);
        let query = match text(query) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let psi: Formula = match query.parse() {
            Ok(f) => f,
            Err(e) => return fail(PologStatus::Parse, &format!("query: {e}")),
        };
        match run_query(&(*kb).kb, &psi, engine.into(), &Limits::default()) {
            Ok(report) => {
                *entailed = report.entailed;
                PologStatus::Ok
            }
            Err(e) => fail(status_of(&e), &e.to_string()),
        }
    })
}

/// Computes the kernels of the base.
///
/// # Safety
/// `kb` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polog_ker_build(kb: *const PologKb, out: *mut *mut PologKer) -> PologStatus {
    guard(|| {
        non_null!(kb, out);
        let kb = (*kb).kb.clone();
        let result = build_ker(&kb);
        *out = Box::into_raw(Box::new(PologKer { kb, result }));
        PologStatus::Ok
    })
}

/// # Safety
/// `ker` must come from [`polog_ker_build`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn polog_ker_free(ker: *mut PologKer) {
    if !ker.is_null() {
        drop(Box::from_raw(ker));
    }
}

/// Number of kernels, or 0 for a null handle.
///
/// # Safety
/// `ker` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polog_ker_count(ker: *const PologKer) -> usize {
    ker.as_ref().map_or(0, |k| k.result.kernels.len())
}

/// Consistency tests made by the search, not counting the initial test of
/// the whole base.
///
/// # Safety
/// `ker` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polog_ker_branch_tests(ker: *const PologKer) -> usize {
    ker.as_ref().map_or(0, |k| k.result.branch_consistency_tests)
}

/// The labels of kernel `index`, sorted and separated by `,`.
///
/// # Safety
/// `ker` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn polog_ker_labels(ker: *const PologKer, index: usize, out: *mut *mut c_char) -> PologStatus {
    guard(|| {
        non_null!(ker, out);
        let ker = &*ker;
        match ker.result.kernels.get(index) {
            Some(&k) => give_string(ker.kb.labels_of(k).join(","), out),
            None => fail(
                PologStatus::OutOfRange,
                &format!("kernel {index} of {}", ker.result.kernels.len()),
            ),
        }
    })
}
