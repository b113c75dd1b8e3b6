//! C ABI over `rm-rpa`.
//!
//! Codes and decoder configurations are opaque heap handles created with a
//! `*_new` function and released with the matching `*_free`. Every fallible
//! call returns an [`RpaStatus`]; on failure a description is available from
//! [`rpa_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use rm_rpa::{
    complexity_gain, count_fht_bound, decode, DecoderConfig, Error, Factor, LlrVector, RmCode,
    RngStream, Schedule, Variant,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RpaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    Resource = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RpaVariant {
    Rpa = 0,
    Srpa = 1,
    Sdss = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RpaSchedule {
    Full = 0,
    TopOnly = 1,
}

/// An RM(m, r) code.
pub struct RpaCode(RmCode);

/// A decoder configuration.
pub struct RpaDecoder(DecoderConfig);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> RpaStatus {
    match err {
        Error::LengthMismatch { .. } => RpaStatus::LengthMismatch,
        Error::Resource(_) => RpaStatus::Resource,
        _ => RpaStatus::InvalidArgument,
    }
}

struct Fail(RpaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(RpaStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RpaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RpaStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside rm-rpa".into());
            RpaStatus::Panic
        }
    }
}

unsafe fn slice_in<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn slice_out<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Fail> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

fn check_len(expected: usize, actual: usize) -> Result<(), Fail> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual }.into())
    }
}

fn bad(msg: String) -> Fail {
    Fail(RpaStatus::InvalidArgument, msg)
}

/// Message of the last failed call on this thread, or null.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rpa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates RM(m, r) in `*out`.
///
/// # Safety
/// `out` must be null or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn rpa_code_new(m: u32, r: u32, out: *mut *mut RpaCode) -> RpaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let code = RmCode::new(m, r)?;
        *out = Box::into_raw(Box::new(RpaCode(code)));
        Ok(())
    })
}

/// # Safety
/// `code` must be null or a handle from [`rpa_code_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rpa_code_free(code: *mut RpaCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Block length, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rpa_code_n(code: *const RpaCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.n())
}

/// Dimension, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rpa_code_k(code: *const RpaCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.k())
}

/// Encodes `k` message bits (0/1 bytes) into `n` codeword bytes.
///
/// # Safety
/// The buffers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn rpa_code_encode(
    code: *const RpaCode,
    message: *const u8,
    message_len: usize,
    codeword: *mut u8,
    codeword_len: usize,
) -> RpaStatus {
    guard(|| {
        let code = &code.as_ref().ok_or_else(|| null("code"))?.0;
        let message = slice_in(message, message_len, "message")?;
        if message.iter().any(|&b| b > 1) {
            return Err(bad("message bytes must be 0 or 1".into()));
        }
        check_len(code.n(), codeword_len)?;
        let out = slice_out(codeword, codeword_len, "codeword")?;
        out.copy_from_slice(&code.encode(message)?.bits);
        Ok(())
    })
}

/// Creates a decoder with the variant's default schedule and θ.
///
/// `variant` takes an [`RpaVariant`] value. `r_p` is ignored for RPA and `r_q` is only used by SDSS.
///
/// # Safety
/// `out` must be null or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn rpa_decoder_new(
    variant: u32,
    r_p_num: u64,
    r_p_den: u64,
    r_q_num: u64,
    r_q_den: u64,
    out: *mut *mut RpaDecoder,
) -> RpaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let variant = match variant {
            v if v == RpaVariant::Rpa as u32 => Variant::Rpa,
            v if v == RpaVariant::Srpa as u32 => Variant::Srpa,
            v if v == RpaVariant::Sdss as u32 => Variant::Sdss,
            v => return Err(bad(format!("unknown variant {v}"))),
        };
        let r_p = Factor::new(r_p_num, r_p_den)?;
        let r_q = Factor::new(r_q_num, r_q_den)?;
        let cfg = DecoderConfig::for_variant(variant, r_p, r_q);
        cfg.validate()?;
        *out = Box::into_raw(Box::new(RpaDecoder(cfg)));
        Ok(())
    })
}

/// # Safety
/// `decoder` must be null or a handle from [`rpa_decoder_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rpa_decoder_free(decoder: *mut RpaDecoder) {
    if !decoder.is_null() {
        drop(Box::from_raw(decoder));
    }
}

/// `schedule` takes an [`RpaSchedule`] value.
///
/// # Safety
/// `decoder` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rpa_decoder_set_schedule(decoder: *mut RpaDecoder, schedule: u32) -> RpaStatus {
    guard(|| {
        let d = decoder.as_mut().ok_or_else(|| null("decoder"))?;
        d.0.schedule = match schedule {
            s if s == RpaSchedule::Full as u32 => Schedule::Full,
            s if s == RpaSchedule::TopOnly as u32 => Schedule::TopOnly,
            s => return Err(bad(format!("unknown schedule {s}"))),
        };
        Ok(())
    })
}

/// # Safety
/// `decoder` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rpa_decoder_set_theta(decoder: *mut RpaDecoder, theta: f64) -> RpaStatus {
    guard(|| {
        let d = decoder.as_mut().ok_or_else(|| null("decoder"))?;
        let mut cfg = d.0.clone();
        cfg.theta = theta;
        cfg.validate()?;
        d.0 = cfg;
        Ok(())
    })
}

/// Decodes `n` LLRs.
///
/// Randomness comes from stream `stream_id` of `seed`, so equal arguments give
/// equal results. `message` may be null when `message_len` is 0 and
/// `fht_count` may be null.
///
/// # Safety
/// Handles must be live and the buffers valid for the stated lengths.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn rpa_decode(
    decoder: *const RpaDecoder,
    code: *const RpaCode,
    llr: *const f64,
    llr_len: usize,
    seed: u64,
    stream_id: u64,
    codeword: *mut u8,
    codeword_len: usize,
    message: *mut u8,
    message_len: usize,
    fht_count: *mut u64,
) -> RpaStatus {
    guard(|| {
        let cfg = &decoder.as_ref().ok_or_else(|| null("decoder"))?.0;
        let code = &code.as_ref().ok_or_else(|| null("code"))?.0;
        check_len(code.n(), llr_len)?;
        check_len(code.n(), codeword_len)?;
        if message_len != 0 {
            check_len(code.k(), message_len)?;
        }
        let llr = LlrVector::new(slice_in(llr, llr_len, "llr")?.to_vec())?;
        let out_word = slice_out(codeword, codeword_len, "codeword")?;
        let out_msg = slice_out(message, message_len, "message")?;
        let outcome = decode(&llr, code, cfg, &RngStream::new(seed, stream_id))?;
        out_word.copy_from_slice(&outcome.codeword.bits);
        if !out_msg.is_empty() {
            out_msg.copy_from_slice(&outcome.message);
        }
        if let Some(f) = fht_count.as_mut() {
            *f = outcome.fht_count;
        }
        Ok(())
    })
}

/// Worst-case FHT decodings per codeword for this decoder on `code`.
///
/// # Safety
/// Handles must be live and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rpa_count_fht_bound(
    decoder: *const RpaDecoder,
    code: *const RpaCode,
    out: *mut u64,
) -> RpaStatus {
    guard(|| {
        let cfg = &decoder.as_ref().ok_or_else(|| null("decoder"))?.0;
        let code = &code.as_ref().ok_or_else(|| null("code"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = count_fht_bound(code, cfg)?;
        Ok(())
    })
}

/// `1 − measured_mean / reference_bound`.
#[no_mangle]
pub extern "C" fn rpa_complexity_gain(measured_mean: f64, reference_bound: u64) -> f64 {
    complexity_gain(measured_mean, reference_bound)
}
