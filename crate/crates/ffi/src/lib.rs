//! C ABI over `semiext`. Objects are opaque handles created by `*_new`,
//! `*_parse` or `*_builtin` and released with the matching `*_free`. Every
//! fallible call returns a [`SemiextStatus`]; the message of the last
//! failure on the calling thread is available from
//! [`semiext_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use semiext::eggbox::eggbox_export;
use semiext::green_ext::{cross_check_green, mismatches};
use semiext::{cayley, green, zoo, Error, ExtensionSemigroup, FiniteSemigroup, SizeGuard};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemiextStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    MalformedTable = 4,
    NonAssociative = 5,
    InvalidParameters = 6,
    SizeGuardExceeded = 7,
    IndexOutOfRange = 8,
    BaseNotMonoid = 9,
    UnknownBuiltin = 10,
    Overflow = 11,
    Panic = 12,
    Other = 13,
}

/// Opaque finite semigroup.
pub struct SemiextSemigroup(FiniteSemigroup);

/// Opaque extension `I_λ^n(S)`.
pub struct SemiextExtension(ExtensionSemigroup);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SemiextRegularity {
    pub regular: bool,
    pub orthodox: bool,
    pub inverse: bool,
    pub idempotents: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SemiextGreenCounts {
    pub r: usize,
    pub l: usize,
    pub h: usize,
    pub d: usize,
    pub j: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SemiextStatus {
    match e {
        Error::Parse { .. } => SemiextStatus::Parse,
        Error::MalformedTable(_) | Error::BadIdentity { .. } | Error::BadZero { .. } => SemiextStatus::MalformedTable,
        Error::NonAssociative(..) => SemiextStatus::NonAssociative,
        Error::InvalidParameters(_) => SemiextStatus::InvalidParameters,
        Error::SizeGuardExceeded { .. } => SemiextStatus::SizeGuardExceeded,
        Error::IndexOutOfRange { .. } => SemiextStatus::IndexOutOfRange,
        Error::BaseNotMonoid => SemiextStatus::BaseNotMonoid,
        _ => SemiextStatus::Other,
    }
}

struct Failure(SemiextStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> SemiextStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SemiextStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SemiextStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(SemiextStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(null)
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SemiextStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn guard_of(limit: usize) -> SizeGuard {
    if limit == 0 {
        SizeGuard::from_env()
    } else {
        SizeGuard::new(limit)
    }
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn semiext_status_message(status: SemiextStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SemiextStatus::Ok => c"ok",
        SemiextStatus::NullPointer => c"null pointer argument",
        SemiextStatus::InvalidUtf8 => c"string argument is not UTF-8",
        SemiextStatus::Parse => c"Cayley text could not be parsed",
        SemiextStatus::MalformedTable => c"table is malformed",
        SemiextStatus::NonAssociative => c"operation is not associative",
        SemiextStatus::InvalidParameters => c"invalid parameters",
        SemiextStatus::SizeGuardExceeded => c"size guard exceeded",
        SemiextStatus::IndexOutOfRange => c"element index out of range",
        SemiextStatus::BaseNotMonoid => c"base semigroup is not a monoid",
        SemiextStatus::UnknownBuiltin => c"unknown builtin name",
        SemiextStatus::Overflow => c"result does not fit the output type",
        SemiextStatus::Panic => c"internal panic",
        SemiextStatus::Other => c"operation failed",
    };
    s.as_ptr()
}

/// Detail of the last failure on this thread, valid until the next failing
/// call on the same thread. Empty when nothing has failed.
#[no_mangle]
pub extern "C" fn semiext_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Validates a row-major table of `order * order` entries.
///
/// # Safety
/// `table` must point to `order * order` readable values and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_semigroup_from_table(
    table: *const u32,
    order: usize,
    out: *mut *mut SemiextSemigroup,
) -> SemiextStatus {
    guarded(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        if table.is_null() {
            return Err(null());
        }
        let cells = order
            .checked_mul(order)
            .ok_or_else(|| Failure(SemiextStatus::Overflow, "order too large".into()))?;
        let flat = std::slice::from_raw_parts(table, cells);
        let rows: Vec<Vec<usize>> = flat.chunks(order.max(1)).map(|r| r.iter().map(|&v| v as usize).collect()).collect();
        let s = FiniteSemigroup::validate(&rows, None, None)?;
        *out = boxed(SemiextSemigroup(s));
        Ok(())
    })
}

/// Parses Cayley text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_semigroup_parse(text: *const c_char, out: *mut *mut SemiextSemigroup) -> SemiextStatus {
    guarded(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let s = cayley::read_semigroup(str_arg(text)?)?;
        *out = boxed(SemiextSemigroup(s));
        Ok(())
    })
}

/// A builtin semigroup by name (`trivial`, `Z2`, `min2`, `leftzero2`,
/// `null2`, `T2`, `chain3`, `A2`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_semigroup_builtin(name: *const c_char, out: *mut *mut SemiextSemigroup) -> SemiextStatus {
    guarded(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let name = str_arg(name)?;
        let s = zoo::by_name(name)
            .ok_or_else(|| Failure(SemiextStatus::UnknownBuiltin, format!("unknown builtin {name:?}")))?;
        *out = boxed(SemiextSemigroup(s));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn semiext_semigroup_free(s: *mut SemiextSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn semiext_semigroup_order(s: *const SemiextSemigroup) -> usize {
    s.as_ref().map_or(0, |s| s.0.size())
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_semigroup_product(
    s: *const SemiextSemigroup,
    a: usize,
    b: usize,
    out: *mut usize,
) -> SemiextStatus {
    guarded(|| {
        let s = &deref(s)?.0;
        let out = out_ref(out)?;
        for x in [a, b] {
            if x >= s.size() {
                return Err(Error::IndexOutOfRange { index: x, size: s.size() }.into());
            }
        }
        *out = s.product(a, b);
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_semigroup_regularity(
    s: *const SemiextSemigroup,
    out: *mut SemiextRegularity,
) -> SemiextStatus {
    guarded(|| {
        let s = &deref(s)?.0;
        let out = out_ref(out)?;
        let r = s.regularity();
        *out = SemiextRegularity {
            regular: r.is_regular,
            orthodox: r.is_orthodox,
            inverse: r.is_inverse,
            idempotents: s.idempotents().len(),
        };
        Ok(())
    })
}

/// Number of classes of each Green relation.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_semigroup_green_counts(
    s: *const SemiextSemigroup,
    out: *mut SemiextGreenCounts,
) -> SemiextStatus {
    guarded(|| {
        let s = &deref(s)?.0;
        let out = out_ref(out)?;
        let [r, l, h, d, j] = green(s).counts();
        *out = SemiextGreenCounts { r, l, h, d, j };
        Ok(())
    })
}

/// Eggbox diagram in dot format; release with [`semiext_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_semigroup_eggbox(s: *const SemiextSemigroup, out: *mut *mut c_char) -> SemiextStatus {
    guarded(|| {
        let s = &deref(s)?.0;
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let names: Vec<String> = s.elements().map(|i| s.name(i)).collect();
        let dot = eggbox_export(&green(s), &names);
        *out = CString::new(dot)
            .map_err(|_| Failure(SemiextStatus::Other, "element name contains NUL".into()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn semiext_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

/// Builds `I_λ^n(S)` over a copy of `base`.
///
/// # Safety
/// `base` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_extension_new(
    base: *const SemiextSemigroup,
    lambda: usize,
    n: usize,
    out: *mut *mut SemiextExtension,
) -> SemiextStatus {
    guarded(|| {
        let base = &deref(base)?.0;
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let e = ExtensionSemigroup::new(base.clone(), lambda, n)?;
        *out = boxed(SemiextExtension(e));
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn semiext_extension_free(e: *mut SemiextExtension) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Closed-form number of elements.
///
/// # Safety
/// `e` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_extension_count(e: *const SemiextExtension, out: *mut u64) -> SemiextStatus {
    guarded(|| {
        let e = &deref(e)?.0;
        let out = out_ref(out)?;
        *out = u64::try_from(e.count())
            .map_err(|_| Failure(SemiextStatus::Overflow, "count exceeds 64 bits".into()))?;
        Ok(())
    })
}

/// Cayley table of the extension as a new semigroup handle. A `guard` of 0
/// uses the default limit (or `SEMIEXT_SIZE_GUARD`).
///
/// # Safety
/// `e` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_extension_materialize(
    e: *const SemiextExtension,
    guard: usize,
    out: *mut *mut SemiextSemigroup,
) -> SemiextStatus {
    guarded(|| {
        let e = &deref(e)?.0;
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let m = e.materialize(guard_of(guard))?;
        *out = boxed(SemiextSemigroup(m.semigroup));
        Ok(())
    })
}

/// Number of disagreements between the permutation characterization of
/// Green's relations and brute force, over all pairs and relations.
///
/// # Safety
/// `e` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn semiext_extension_green_mismatches(
    e: *const SemiextExtension,
    guard: usize,
    out: *mut usize,
) -> SemiextStatus {
    guarded(|| {
        let e = &deref(e)?.0;
        let out = out_ref(out)?;
        let reports = cross_check_green(e, guard_of(guard))?;
        *out = mismatches(&reports).len();
        Ok(())
    })
}
