//! C ABI for the `blockent` library.
//!
//! Samples and entropy profiles are opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns
//! a [`BlockentStatus`]; on failure a message is kept per thread and can be
//! read with [`blockent_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use blockent::blocks::{block_entropy, entropy_profile, BlockEntropyProfile};
use blockent::corpus::{compute_stats, load_sample, Sample};
use blockent::equiprob::{find_n_aep, word_distance};
use blockent::rate::estimate;
use blockent::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockentStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    EmptySample = 3,
    DegenerateStats = 4,
    EmptyPartition = 5,
    InvalidArgument = 6,
    NoCrossing = 7,
    ProfileTooShort = 8,
    Absent = 9,
    BufferTooSmall = 10,
    Internal = 99,
}

/// A normalized text sample.
pub struct BlockentSample {
    inner: Sample,
}

/// Shift-averaged block entropies `H_1 ..= H_nmax` of one sample.
pub struct BlockentProfile {
    inner: BlockEntropyProfile,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BlockentStats {
    pub char_count: usize,
    pub alphabet_size: usize,
    pub word_count: usize,
    pub distinct_word_count: usize,
    pub wdr: f64,
    pub alpha: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BlockentRate {
    pub n_z: f64,
    pub h_nz: f64,
    pub h_l: f64,
    pub redundancy: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BlockentEquiprob {
    /// Zero when no equiprobable block length was found up to the ceiling.
    pub has_n_aep: bool,
    pub n_aep: usize,
    pub n_max_checked: usize,
    pub longest_repeat: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BlockentWordDistance {
    pub d_aep: f64,
    pub log2_typical: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn status_of(error: &Error) -> BlockentStatus {
    match error {
        Error::Decode { .. } => BlockentStatus::InvalidUtf8,
        Error::EmptySample { .. } => BlockentStatus::EmptySample,
        Error::DegenerateStats => BlockentStatus::DegenerateStats,
        Error::EmptyPartition { .. } => BlockentStatus::EmptyPartition,
        Error::InvalidBlock { .. }
        | Error::InvalidAlpha(_)
        | Error::InsufficientData { .. }
        | Error::NonMonotoneAbscissae
        | Error::Config(_) => BlockentStatus::InvalidArgument,
        Error::NoCrossing { .. } => BlockentStatus::NoCrossing,
        Error::ProfileTooShort { .. } => BlockentStatus::ProfileTooShort,
        Error::AbsentEquiprobability => BlockentStatus::Absent,
        _ => BlockentStatus::Internal,
    }
}

/// Runs `f`, records any error or panic, and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), BlockentStatus>) -> BlockentStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BlockentStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            BlockentStatus::Internal
        }
    }
}

fn fail(error: Error) -> BlockentStatus {
    set_error(error.to_string());
    status_of(&error)
}

fn null(what: &str) -> BlockentStatus {
    set_error(format!("null pointer: {what}"));
    BlockentStatus::NullPointer
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, BlockentStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, BlockentStatus> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn blockent_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn blockent_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Decodes `len` bytes of UTF-8 and normalizes them into a sample.
///
/// # Safety
/// `bytes` must point to `len` readable bytes, `id` must be NUL-terminated,
/// and `out_sample` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blockent_sample_load(
    bytes: *const u8,
    len: usize,
    id: *const c_char,
    out_sample: *mut *mut BlockentSample,
) -> BlockentStatus {
    guard(|| {
        let slot = out(out_sample, "out_sample")?;
        *slot = ptr::null_mut();
        if bytes.is_null() && len > 0 {
            return Err(null("bytes"));
        }
        if id.is_null() {
            return Err(null("id"));
        }
        let id = CStr::from_ptr(id).to_str().map_err(|_| {
            set_error("sample id is not valid UTF-8");
            BlockentStatus::InvalidUtf8
        })?;
        let data = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(bytes, len)
        };
        let sample = load_sample(data, id).map_err(fail)?;
        *slot = Box::into_raw(Box::new(BlockentSample { inner: sample }));
        Ok(())
    })
}

/// # Safety
/// `sample` must be NULL or a handle from [`blockent_sample_load`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn blockent_sample_free(sample: *mut BlockentSample) {
    if !sample.is_null() {
        drop(Box::from_raw(sample));
    }
}

/// Number of characters after normalization, or 0 for NULL.
///
/// # Safety
/// `sample` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn blockent_sample_char_count(sample: *const BlockentSample) -> usize {
    sample.as_ref().map_or(0, |s| s.inner.len())
}

/// # Safety
/// `sample` must be a live handle and `out_stats` writable.
#[no_mangle]
pub unsafe extern "C" fn blockent_sample_stats(
    sample: *const BlockentSample,
    out_stats: *mut BlockentStats,
) -> BlockentStatus {
    guard(|| {
        let s = deref(sample, "sample")?;
        let dst = out(out_stats, "out_stats")?;
        let st = compute_stats(&s.inner).map_err(fail)?;
        *dst = BlockentStats {
            char_count: st.char_count,
            alphabet_size: st.alphabet_size,
            word_count: st.word_count,
            distinct_word_count: st.distinct_word_count,
            wdr: st.wdr,
            alpha: st.alpha,
        };
        Ok(())
    })
}

/// Shift-averaged block entropy `H_n`. When `out_shifts` is not NULL it
/// receives the `n` per-shift entropies and `shifts_len` must be at least `n`.
///
/// # Safety
/// `sample` must be a live handle, `out_mean` writable and `out_shifts`
/// NULL or writable for `shifts_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn blockent_block_entropy(
    sample: *const BlockentSample,
    n: usize,
    out_mean: *mut f64,
    out_shifts: *mut f64,
    shifts_len: usize,
) -> BlockentStatus {
    guard(|| {
        let s = deref(sample, "sample")?;
        let mean = out(out_mean, "out_mean")?;
        if !out_shifts.is_null() && shifts_len < n {
            set_error(format!("shift buffer holds {shifts_len}, need {n}"));
            return Err(BlockentStatus::BufferTooSmall);
        }
        let h = block_entropy(&s.inner, n).map_err(fail)?;
        *mean = h.mean;
        if !out_shifts.is_null() {
            std::slice::from_raw_parts_mut(out_shifts, n).copy_from_slice(&h.shifts);
        }
        Ok(())
    })
}

/// Computes `H_1 ..= H_nmax`.
///
/// # Safety
/// `sample` must be a live handle and `out_profile` writable.
#[no_mangle]
pub unsafe extern "C" fn blockent_profile_new(
    sample: *const BlockentSample,
    n_max: usize,
    out_profile: *mut *mut BlockentProfile,
) -> BlockentStatus {
    guard(|| {
        let s = deref(sample, "sample")?;
        let slot = out(out_profile, "out_profile")?;
        *slot = ptr::null_mut();
        if n_max == 0 {
            set_error("n_max must be at least 1");
            return Err(BlockentStatus::InvalidArgument);
        }
        let profile = entropy_profile(&s.inner, n_max).map_err(fail)?;
        *slot = Box::into_raw(Box::new(BlockentProfile { inner: profile }));
        Ok(())
    })
}

/// # Safety
/// `profile` must be NULL or a handle from [`blockent_profile_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn blockent_profile_free(profile: *mut BlockentProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Largest block length held by the profile, or 0 for NULL.
///
/// # Safety
/// `profile` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn blockent_profile_n_max(profile: *const BlockentProfile) -> usize {
    profile.as_ref().map_or(0, |p| p.inner.n_max)
}

/// `H_n` from the profile, `1 <= n <= n_max`.
///
/// # Safety
/// `profile` must be a live handle and `out_h` writable.
#[no_mangle]
pub unsafe extern "C" fn blockent_profile_h(
    profile: *const BlockentProfile,
    n: usize,
    out_h: *mut f64,
) -> BlockentStatus {
    guard(|| {
        let p = deref(profile, "profile")?;
        let dst = out(out_h, "out_h")?;
        *dst = p.inner.h(n).ok_or_else(|| {
            set_error(format!("block length {n} outside 1..={}", p.inner.n_max));
            BlockentStatus::InvalidArgument
        })?;
        Ok(())
    })
}

/// Zero crossing of the conditional entropy over orders `1..=cond_max`,
/// entropy rate and redundancy.
///
/// # Safety
/// `profile` must be a live handle and `out_rate` writable.
#[no_mangle]
pub unsafe extern "C" fn blockent_rate_estimate(
    profile: *const BlockentProfile,
    alphabet_size: usize,
    cond_max: usize,
    out_rate: *mut BlockentRate,
) -> BlockentStatus {
    guard(|| {
        let p = deref(profile, "profile")?;
        let dst = out(out_rate, "out_rate")?;
        if alphabet_size < 2 {
            set_error("alphabet size must be at least 2");
            return Err(BlockentStatus::InvalidArgument);
        }
        let (_, rate) = estimate(&p.inner, alphabet_size, cond_max).map_err(fail)?;
        *dst = BlockentRate {
            n_z: rate.n_z,
            h_nz: rate.h_nz,
            h_l: rate.h_l,
            redundancy: rate.redundancy,
        };
        Ok(())
    })
}

/// Smallest block length from which every partition is made of distinct
/// blocks, searched up to `ceiling`.
///
/// # Safety
/// `sample` must be a live handle and `out_result` writable.
#[no_mangle]
pub unsafe extern "C" fn blockent_find_n_aep(
    sample: *const BlockentSample,
    ceiling: usize,
    out_result: *mut BlockentEquiprob,
) -> BlockentStatus {
    guard(|| {
        let s = deref(sample, "sample")?;
        let dst = out(out_result, "out_result")?;
        let r = find_n_aep(&s.inner, ceiling).map_err(fail)?;
        *dst = BlockentEquiprob {
            has_n_aep: r.n_aep.is_some(),
            n_aep: r.n_aep.unwrap_or(0),
            n_max_checked: r.n_max_checked,
            longest_repeat: r.longest_repeat,
        };
        Ok(())
    })
}

/// Word distance `n_aep / (alpha + 1)` and `log2` of the typical-set size.
///
/// # Safety
/// `out_distance` must be writable.
#[no_mangle]
pub unsafe extern "C" fn blockent_word_distance(
    n_aep: usize,
    alpha: f64,
    h_l: f64,
    out_distance: *mut BlockentWordDistance,
) -> BlockentStatus {
    guard(|| {
        let dst = out(out_distance, "out_distance")?;
        let n = (n_aep > 0).then_some(n_aep);
        let w = word_distance(n, alpha, h_l).map_err(fail)?;
        *dst = BlockentWordDistance {
            d_aep: w.d_aep,
            log2_typical: w.log2_typical,
        };
        Ok(())
    })
}
