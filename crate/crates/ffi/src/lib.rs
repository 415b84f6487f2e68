//! C ABI over mdsforge. Codes and fields are opaque handles; every call
//! returns an [`MdsStatus`] and the message of the last failure on the
//! calling thread is available from [`mds_last_error`]. Strings returned
//! through out-pointers are owned by the caller and released with
//! [`mds_string_free`].
//!
//! Field elements cross the boundary as `m` base-p digits (constant term
//! first), so a vector of `len` symbols is a flat array of `len * m`
//! `uint64_t` values.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mdsforge::certify::non_rs_certificate;
use mdsforge::code::EvalCode;
use mdsforge::codec::{decode_erasures, ReceivedWord};
use mdsforge::conditions::{existence_bound, BoundQuery, BoundVariant};
use mdsforge::error::Error;
use mdsforge::families::construct;
use mdsforge::field::{make_field, FieldContext, FieldElement};
use mdsforge::io::{certificate_to_value, to_canonical_string, CodeFile};
use mdsforge::limits::Limits;
use serde_json::{json, Value};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidParams = 3,
    BoundViolated = 4,
    ConditionViolated = 5,
    TooLarge = 6,
    DimensionMismatch = 7,
    TooManyErasures = 8,
    Inconsistent = 9,
    Format = 10,
    Internal = 11,
    Panic = 12,
}

/// Opaque evaluation code.
pub struct MdsCode {
    code: EvalCode,
}

/// Opaque finite field.
pub struct MdsField {
    ctx: FieldContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MdsStatus {
    match e {
        Error::NotPrime(_)
        | Error::InvalidParams(_)
        | Error::CharacteristicDividesK { .. }
        | Error::BinomialDivisible { .. }
        | Error::KEven(_)
        | Error::DuplicateColumns(..)
        | Error::IndexOutOfRange { .. } => MdsStatus::InvalidParams,
        Error::BoundViolated(_) => MdsStatus::BoundViolated,
        Error::ConditionViolated { .. } => MdsStatus::ConditionViolated,
        Error::TooLarge { .. } | Error::Infeasible { .. } => MdsStatus::TooLarge,
        Error::DimensionMismatch { .. } | Error::RankDeficient { .. } | Error::Singular | Error::ZeroMultiplier(_) => {
            MdsStatus::DimensionMismatch
        }
        Error::TooManyErasures { .. } => MdsStatus::TooManyErasures,
        Error::Inconsistent { .. } => MdsStatus::Inconsistent,
        Error::Format(_) | Error::InvalidElement(_) => MdsStatus::Format,
        Error::Internal(_) => MdsStatus::Internal,
    }
}

type FfiResult = std::result::Result<(), (MdsStatus, String)>;

fn lib(e: Error) -> (MdsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (MdsStatus, String) {
    (MdsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any failure (including a panic) as the thread's last error.
fn guard(f: impl FnOnce() -> FfiResult) -> MdsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MdsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MdsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (MdsStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (MdsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (MdsStatus::Internal, "string contains nul".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn code_ref<'a>(code: *const MdsCode) -> Result<&'a EvalCode, (MdsStatus, String)> {
    code.as_ref().map(|c| &c.code).ok_or_else(|| null("code"))
}

unsafe fn digits<'a>(ptr: *const u64, len: usize, what: &str) -> Result<&'a [u64], (MdsStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

fn unflatten(ctx: &FieldContext, flat: &[u64]) -> Result<Vec<FieldElement>, (MdsStatus, String)> {
    flat.chunks(ctx.m()).map(|d| ctx.element(d).map_err(lib)).collect()
}

unsafe fn flatten_into(xs: &[FieldElement], m: usize, out: *mut u64, out_len: usize) -> FfiResult {
    let need = xs.len() * m;
    if out_len != need {
        return Err((MdsStatus::DimensionMismatch, format!("output buffer holds {out_len} digits, need {need}")));
    }
    if out.is_null() {
        return Err(null("output buffer"));
    }
    let dst = std::slice::from_raw_parts_mut(out, need);
    for (chunk, x) in dst.chunks_mut(m).zip(xs) {
        chunk.copy_from_slice(x.digits());
    }
    Ok(())
}

unsafe fn store_code(out: *mut *mut MdsCode, code: EvalCode) -> FfiResult {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(MdsCode { code }));
    Ok(())
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn mds_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mds_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds GF(p^m) with the library's default modulus.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mds_field_new(p: u64, m: u32, out: *mut *mut MdsField) -> MdsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let ctx = make_field(p, m as usize).map_err(lib)?;
        *out = Box::into_raw(Box::new(MdsField { ctx }));
        Ok(())
    })
}

/// # Safety
/// `field` must come from [`mds_field_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mds_field_free(field: *mut MdsField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Digits per element (the extension degree m), or 0 for null.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mds_field_degree(field: *const MdsField) -> usize {
    field.as_ref().map_or(0, |f| f.ctx.m())
}

/// out = a·b, each an array of m digits.
///
/// # Safety
/// `a`, `b` and `out` must each point to m digits.
#[no_mangle]
pub unsafe extern "C" fn mds_field_mul(field: *const MdsField, a: *const u64, b: *const u64, out: *mut u64) -> MdsStatus {
    guard(|| {
        let ctx = &field.as_ref().ok_or_else(|| null("field"))?.ctx;
        let m = ctx.m();
        let x = ctx.element(digits(a, m, "a")?).map_err(lib)?;
        let y = ctx.element(digits(b, m, "b")?).map_err(lib)?;
        flatten_into(&[ctx.mul(&x, &y)], m, out, m)
    })
}

/// Parses a code file (JSON text).
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mds_code_from_json(json: *const c_char, out: *mut *mut MdsCode) -> MdsStatus {
    guard(|| {
        let file = CodeFile::parse(read_str(json, "json")?).map_err(lib)?;
        store_code(out, file.code)
    })
}

/// Builds a family instance; `params_json` is an object of integer
/// parameters such as `{"p":13,"k":3,"n":6}`.
///
/// # Safety
/// Both strings must be nul-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mds_code_construct(family: *const c_char, params_json: *const c_char, out: *mut *mut MdsCode) -> MdsStatus {
    guard(|| {
        let family = read_str(family, "family")?;
        let params = read_str(params_json, "params_json")?;
        let v: Value = serde_json::from_str(params).map_err(|e| (MdsStatus::Format, format!("params_json: {e}")))?;
        let obj = v.as_object().ok_or((MdsStatus::Format, "params_json must be an object".to_string()))?;
        let mut args = BTreeMap::new();
        for (k, v) in obj {
            let n = v.as_u64().ok_or((MdsStatus::Format, format!("parameter {k} must be a non-negative integer")))?;
            args.insert(k.clone(), n);
        }
        let code = construct(family, &args, &Limits::from_env()).map_err(lib)?;
        store_code(out, code)
    })
}

/// # Safety
/// `code` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mds_code_free(code: *mut MdsCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Canonical code-file JSON.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mds_code_to_json(code: *const MdsCode, out: *mut *mut c_char) -> MdsStatus {
    guard(|| {
        let c = code_ref(code)?;
        write_string(out, CodeFile::new(c.clone()).to_canonical_string())
    })
}

/// Code length, or 0 for null.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mds_code_n(code: *const MdsCode) -> usize {
    code.as_ref().map_or(0, |c| c.code.n())
}

/// Code dimension, or 0 for null.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mds_code_k(code: *const MdsCode) -> usize {
    code.as_ref().map_or(0, |c| c.code.k())
}

/// Digits per symbol, or 0 for null.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mds_code_degree(code: *const MdsCode) -> usize {
    code.as_ref().map_or(0, |c| c.code.ctx().m())
}

/// Certificate JSON; `min_distance` nonzero also enumerates all codewords.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mds_code_certify(code: *const MdsCode, min_distance: i32, out: *mut *mut c_char) -> MdsStatus {
    guard(|| {
        let c = code_ref(code)?;
        let cert = non_rs_certificate(c, &Limits::from_env(), min_distance != 0).map_err(lib)?;
        write_string(out, to_canonical_string(&certificate_to_value(&cert)))
    })
}

/// Encodes k symbols (`msg_len` = k·m digits) into n symbols (`out_len` = n·m).
///
/// # Safety
/// The buffers must hold the stated number of digits.
#[no_mangle]
pub unsafe extern "C" fn mds_code_encode(code: *const MdsCode, msg: *const u64, msg_len: usize, out: *mut u64, out_len: usize) -> MdsStatus {
    guard(|| {
        let c = code_ref(code)?;
        let m = c.ctx().m();
        let need = c.k() * m;
        if msg_len != need {
            return Err((MdsStatus::DimensionMismatch, format!("message holds {msg_len} digits, need {need}")));
        }
        let message = unflatten(c.ctx(), digits(msg, msg_len, "msg")?)?;
        let cw = c.encode(&message).map_err(lib)?;
        flatten_into(&cw, m, out, out_len)
    })
}

/// Recovers the message from n received symbols (`received_len` = n·m
/// digits); `erased[i]` nonzero marks symbol i as erased and its digits are
/// ignored. Writes k·m digits to `out`.
///
/// # Safety
/// `received` must hold `received_len` digits, `erased` n bytes and `out`
/// `out_len` digits.
#[no_mangle]
pub unsafe extern "C" fn mds_code_decode(
    code: *const MdsCode,
    received: *const u64,
    received_len: usize,
    erased: *const u8,
    out: *mut u64,
    out_len: usize,
) -> MdsStatus {
    guard(|| {
        let c = code_ref(code)?;
        let (n, m) = (c.n(), c.ctx().m());
        if received_len != n * m {
            return Err((MdsStatus::DimensionMismatch, format!("received holds {received_len} digits, need {}", n * m)));
        }
        let flat = digits(received, received_len, "received")?;
        if erased.is_null() {
            return Err(null("erased"));
        }
        let mask = std::slice::from_raw_parts(erased, n);
        let symbols = flat
            .chunks(m)
            .zip(mask)
            .map(|(d, &e)| if e != 0 { Ok(None) } else { c.ctx().element(d).map(Some).map_err(lib) })
            .collect::<Result<Vec<_>, _>>()?;
        let msg = decode_erasures(c, &ReceivedWord::new(symbols)).map_err(lib)?;
        flatten_into(&msg, m, out, out_len)
    })
}

/// Counting bound; `q_decimal` is the field size in decimal, `variant` is
/// 0 for general and 1 for Vieta. Writes `{"holds":..,"lhs":"..","rhs":".."}`.
///
/// # Safety
/// `q_decimal` must be nul-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mds_bound(q_decimal: *const c_char, n: u64, k: u64, m_i: u64, variant: u32, out: *mut *mut c_char) -> MdsStatus {
    guard(|| {
        let q = read_str(q_decimal, "q_decimal")?
            .parse()
            .map_err(|_| (MdsStatus::Format, "q_decimal is not a non-negative integer".to_string()))?;
        let variant = match variant {
            0 => BoundVariant::General,
            1 => BoundVariant::Vieta,
            v => return Err((MdsStatus::InvalidParams, format!("unknown bound variant {v}"))),
        };
        let res = existence_bound(&BoundQuery { q, n, k, m_i, variant }).map_err(lib)?;
        let v = json!({ "holds": res.holds, "lhs": res.lhs.to_string(), "rhs": res.rhs.to_string() });
        write_string(out, to_canonical_string(&v))
    })
}
