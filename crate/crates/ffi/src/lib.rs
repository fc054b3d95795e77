//! C ABI over `setlab`.
//!
//! Families are opaque `SetlabFamily` handles owned by the caller and
//! released with `setlab_family_free`. Every fallible call returns a
//! `SetlabStatus`; on failure `setlab_last_error` describes the problem for
//! the calling thread. Strings returned through out-pointers are NUL
//! terminated UTF-8 and must be released with `setlab_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use setlab::canon::canonical_form;
use setlab::constructions::star;
use setlab::family::{is_stable, shift_family, stabilize};
use setlab::predicates::is_conditionally_intersecting;
use setlab::search::{parse_range, verify_theorem, SearchOptions, Theorem, VerifyRequest};
use setlab::text::{parse_family, write_family};
use setlab::{ConditionParams, Error, SetFamily, ShiftPair};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetlabStatus {
    Ok = 0,
    /// A required pointer was null.
    Null = 1,
    /// A precondition of the operation does not hold.
    Argument = 2,
    /// Well-formed input beyond what the operation handles.
    Capability = 3,
    /// Family text did not parse.
    Parse = 4,
    /// A string argument was not UTF-8.
    Utf8 = 5,
    /// The library panicked; the handle state is unchanged.
    Panic = 6,
    /// Internal invariant, checkpoint or I/O failure.
    Internal = 7,
}

/// Opaque family handle.
pub struct SetlabFamily(SetFamily);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no NUL"));
}

fn status_of(e: &Error) -> SetlabStatus {
    match e {
        Error::Argument(_) => SetlabStatus::Argument,
        Error::Capability(_) => SetlabStatus::Capability,
        Error::Parse { .. } => SetlabStatus::Parse,
        _ => SetlabStatus::Internal,
    }
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), (SetlabStatus, String)>) -> SetlabStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SetlabStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside setlab");
            SetlabStatus::Panic
        }
    }
}

type Fail = (SetlabStatus, String);

fn lib<T>(r: setlab::Result<T>) -> Result<T, Fail> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn handle<'a>(p: *const SetlabFamily) -> Result<&'a SetFamily, Fail> {
    p.as_ref().map(|f| &f.0).ok_or((SetlabStatus::Null, "family handle is null".into()))
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or((SetlabStatus::Null, "output pointer is null".into()))
}

unsafe fn string<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err((SetlabStatus::Null, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (SetlabStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn opt_string<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        string(p, what).map(Some)
    }
}

fn boxed(f: SetFamily) -> *mut SetlabFamily {
    Box::into_raw(Box::new(SetlabFamily(f)))
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (SetlabStatus::Internal, "output contains NUL".into()))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn setlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses the family text format.
#[no_mangle]
pub unsafe extern "C" fn setlab_family_parse(
    text: *const c_char,
    out: *mut *mut SetlabFamily,
) -> SetlabStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let f = lib(parse_family(string(text, "text")?))?;
        *out = boxed(f);
        Ok(())
    })
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn setlab_family_free(family: *mut SetlabFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Releases a string returned by this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn setlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn setlab_family_len(family: *const SetlabFamily, out: *mut usize) -> SetlabStatus {
    guard(|| {
        *out_ptr(out)? = handle(family)?.len();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn setlab_family_ground(
    family: *const SetlabFamily,
    out: *mut usize,
) -> SetlabStatus {
    guard(|| {
        *out_ptr(out)? = handle(family)?.ground();
        Ok(())
    })
}

/// The family in the text format.
#[no_mangle]
pub unsafe extern "C" fn setlab_family_to_text(
    family: *const SetlabFamily,
    out: *mut *mut c_char,
) -> SetlabStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        *out = c_string(write_family(handle(family)?))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn setlab_is_conditionally_intersecting(
    family: *const SetlabFamily,
    d: usize,
    s: usize,
    t: usize,
    out: *mut bool,
) -> SetlabStatus {
    guard(|| {
        let f = handle(family)?;
        let params = lib(ConditionParams::new(d, s, t))?;
        *out_ptr(out)? = is_conditionally_intersecting(f, params);
        Ok(())
    })
}

/// The image under the shift replacing `j` by `i`.
#[no_mangle]
pub unsafe extern "C" fn setlab_shift(
    family: *const SetlabFamily,
    i: usize,
    j: usize,
    out: *mut *mut SetlabFamily,
) -> SetlabStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let f = handle(family)?;
        let pair = lib(ShiftPair::new(i, j))?;
        *out = boxed(lib(shift_family(f, pair))?);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn setlab_is_stable(family: *const SetlabFamily, out: *mut bool) -> SetlabStatus {
    guard(|| {
        *out_ptr(out)? = is_stable(handle(family)?);
        Ok(())
    })
}

/// A stable family reached by repeated shifts.
#[no_mangle]
pub unsafe extern "C" fn setlab_stabilize(
    family: *const SetlabFamily,
    out: *mut *mut SetlabFamily,
) -> SetlabStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        *out = boxed(stabilize(handle(family)?).0);
        Ok(())
    })
}

/// Least relabeling; fails with `Capability` above the canonicalization
/// limit.
#[no_mangle]
pub unsafe extern "C" fn setlab_canonical_form(
    family: *const SetlabFamily,
    out: *mut *mut SetlabFamily,
) -> SetlabStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        *out = boxed(lib(canonical_form(handle(family)?))?);
        Ok(())
    })
}

/// All `k`-subsets of `[n]` containing `center`.
#[no_mangle]
pub unsafe extern "C" fn setlab_construct_star(
    n: usize,
    k: usize,
    center: usize,
    out: *mut *mut SetlabFamily,
) -> SetlabStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        *out = boxed(lib(star(n, k, center))?);
        Ok(())
    })
}

/// Verifies a named theorem and returns the reports as a JSON array.
/// Ranges use the command-line syntax (`6`, `5..7`, `5,7`); unused ranges
/// are null. `threads` of 0 uses the default worker count.
#[no_mangle]
pub unsafe extern "C" fn setlab_verify_json(
    theorem: *const c_char,
    n: *const c_char,
    k: *const c_char,
    d: *const c_char,
    s: *const c_char,
    u: *const c_char,
    threads: usize,
    out: *mut *mut c_char,
) -> SetlabStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let theorem: Theorem = lib(string(theorem, "theorem")?.parse())?;
        let range = |p: *const c_char, what: &str| -> Result<Vec<usize>, Fail> {
            match opt_string(p, what)? {
                Some(text) => lib(parse_range(text)),
                None => Ok(Vec::new()),
            }
        };
        let req = VerifyRequest {
            theorem,
            n: lib(parse_range(string(n, "n")?))?,
            k: range(k, "k")?,
            d: range(d, "d")?,
            s: range(s, "s")?,
            u: range(u, "u")?,
        };
        let opts = SearchOptions {
            threads: (threads > 0).then_some(threads),
            ..SearchOptions::default()
        };
        let reports = lib(verify_theorem(&req, &opts))?;
        let items: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
        *out = c_string(format!("[{}]", items.join(",")))?;
        Ok(())
    })
}
