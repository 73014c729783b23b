//! C interface to the sl2hyper engine.
//!
//! Every fallible function returns an [`Sl2Status`]; on failure the message
//! is available from [`sl2_last_error`] on the same thread. Elements are
//! opaque handles released with [`sl2_element_free`]; strings returned to
//! the caller are released with [`sl2_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sl2hyper::arith::Prime;
use sl2hyper::blocks::{block_decomposition, check_cap, pim_report, BlockError, Level, DEFAULT_DIM_CAP};
use sl2hyper::eps::EpsVec;
use sl2hyper::expr;
use sl2hyper::hyperalgebra::AlgebraElement;
use sl2hyper::idempotents::{Idempotents, TupleAJ};

/// Status codes; the first four match the exit codes of the command line.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Status {
    Ok = 0,
    CheckFailed = 1,
    InvalidArgument = 2,
    CapExceeded = 3,
    Internal = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Level {
    Quick = 0,
    Full = 1,
}

impl From<Sl2Level> for Level {
    fn from(l: Sl2Level) -> Self {
        match l {
            Sl2Level::Quick => Level::Quick,
            Sl2Level::Full => Level::Full,
        }
    }
}

/// An element of the hyperalgebra over a fixed prime field.
pub struct Sl2Element {
    inner: AlgebraElement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(Sl2Status, String);

impl Failure {
    fn invalid(msg: impl ToString) -> Self {
        Failure(Sl2Status::InvalidArgument, msg.to_string())
    }
}

impl From<BlockError> for Failure {
    fn from(e: BlockError) -> Self {
        let status = match e {
            BlockError::CapExceeded { .. } => Sl2Status::CapExceeded,
            BlockError::Length { .. } | BlockError::NotInBlock { .. } | BlockError::Idempotent(_) => {
                Sl2Status::InvalidArgument
            }
            _ => Sl2Status::CheckFailed,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> Sl2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            Sl2Status::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            Sl2Status::Internal
        }
    }
}

fn prime(p: u32) -> Result<Prime, Failure> {
    Prime::new(p as u64).map_err(Failure::invalid)
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::invalid(format!("{what} is null")));
    }
    // SAFETY: non-null and nul-terminated by the caller's contract.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| Failure::invalid(format!("{what} is not UTF-8")))
}

unsafe fn element<'a>(e: *const Sl2Element, what: &str) -> Result<&'a AlgebraElement, Failure> {
    // SAFETY: a non-null handle came from this library and is still live.
    unsafe { e.as_ref() }
        .map(|h| &h.inner)
        .ok_or_else(|| Failure::invalid(format!("{what} is null")))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::invalid("output pointer is null"))
    } else {
        Ok(())
    }
}

fn handle(e: AlgebraElement) -> *mut Sl2Element {
    Box::into_raw(Box::new(Sl2Element { inner: e }))
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(Sl2Status::Internal, "output contains a nul byte".into()))
}

/// Message of the last failure on this thread, or null after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn sl2_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and evaluates `expr` over `F_p`.
///
/// # Safety
/// `expr` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl2_element_parse(
    p: u32,
    expr: *const c_char,
    out: *mut *mut Sl2Element,
) -> Sl2Status {
    guard(|| {
        out_ptr(out)?;
        let p = prime(p)?;
        let src = unsafe { text(expr, "expression") }?;
        let e = expr::evaluate(src, &Idempotents::shared(p)).map_err(Failure::invalid)?;
        unsafe { *out = handle(e) };
        Ok(())
    })
}

unsafe fn binary(
    a: *const Sl2Element,
    b: *const Sl2Element,
    out: *mut *mut Sl2Element,
    op: fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
) -> Sl2Status {
    guard(|| {
        out_ptr(out)?;
        let (a, b) = unsafe { (element(a, "left operand")?, element(b, "right operand")?) };
        if a.prime() != b.prime() {
            return Err(Failure::invalid(format!(
                "operands live over different primes {} and {}",
                a.prime().get(),
                b.prime().get()
            )));
        }
        unsafe { *out = handle(op(a, b)) };
        Ok(())
    })
}

/// `*out = a * b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl2_element_mul(
    a: *const Sl2Element,
    b: *const Sl2Element,
    out: *mut *mut Sl2Element,
) -> Sl2Status {
    unsafe { binary(a, b, out, |x, y| x * y) }
}

/// `*out = a + b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl2_element_add(
    a: *const Sl2Element,
    b: *const Sl2Element,
    out: *mut *mut Sl2Element,
) -> Sl2Status {
    unsafe { binary(a, b, out, |x, y| x + y) }
}

/// Whether two handles hold the same element.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl2_element_equal(
    a: *const Sl2Element,
    b: *const Sl2Element,
    out: *mut bool,
) -> Sl2Status {
    guard(|| {
        out_ptr(out)?;
        let (a, b) = unsafe { (element(a, "left operand")?, element(b, "right operand")?) };
        unsafe { *out = a == b };
        Ok(())
    })
}

/// Canonical text of the element, released with [`sl2_string_free`].
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl2_element_to_string(
    e: *const Sl2Element,
    out: *mut *mut c_char,
) -> Sl2Status {
    guard(|| {
        out_ptr(out)?;
        let e = unsafe { element(e, "element") }?;
        let s = c_string(e.to_string())?;
        unsafe { *out = s };
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl2_element_free(e: *mut Sl2Element) {
    if !e.is_null() {
        // SAFETY: allocated by `handle` and not yet freed.
        drop(unsafe { Box::from_raw(e) });
    }
}

/// JSON report of every block of `A_r`. Returns `CheckFailed` with the
/// report still written when a comparison fails.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl2_blocks_json(
    p: u32,
    r: u32,
    dim_cap: u64,
    level: Sl2Level,
    out: *mut *mut c_char,
) -> Sl2Status {
    let mut passed = true;
    let status = guard(|| {
        out_ptr(out)?;
        if r == 0 || r > 16 {
            return Err(Failure::invalid(format!("level {r} is out of range")));
        }
        let d = block_decomposition(prime(p)?, r, dim_cap, level.into())?;
        passed = d.passed();
        let s = c_string(serde_json::to_string(&d).expect("plain data serializes"))?;
        unsafe { *out = s };
        Ok(())
    });
    if status == Sl2Status::Ok && !passed {
        set_error("a block check failed");
        return Sl2Status::CheckFailed;
    }
    status
}

/// JSON report of the module generated by `eps` in the block of `pairs`,
/// refused above the default dimension cap.
///
/// # Safety
/// `pairs` and `eps` must be nul-terminated strings and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn sl2_pim_json(
    p: u32,
    pairs: *const c_char,
    eps: *const c_char,
    level: Sl2Level,
    out: *mut *mut c_char,
) -> Sl2Status {
    let mut passed = true;
    let status = guard(|| {
        out_ptr(out)?;
        let p = prime(p)?;
        let pairs = unsafe { text(pairs, "pairs") }?;
        let eps = unsafe { text(eps, "eps") }?;
        let tuple = TupleAJ::parse(p, pairs).map_err(Failure::invalid)?;
        check_cap(p, tuple.r(), DEFAULT_DIM_CAP)?;
        let eps: EpsVec = eps.parse().map_err(Failure::invalid)?;
        let d = pim_report(&tuple, eps, &Idempotents::shared(p), level.into())?;
        passed = d.passed();
        let s = c_string(serde_json::to_string(&d).expect("plain data serializes"))?;
        unsafe { *out = s };
        Ok(())
    });
    if status == Sl2Status::Ok && !passed {
        set_error("a module check failed");
        return Sl2Status::CheckFailed;
    }
    status
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl2_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}
