//! C ABI over `powerchar`.
//!
//! Every fallible function returns a [`PcStatus`]; on failure a message is
//! available from [`pc_last_error_message`] on the same thread. Character
//! tables are opaque handles created by [`pc_character_table_new`] and
//! released with [`pc_character_table_free`]. Root-of-unity values are
//! returned as exponents `j` meaning `e(j/order)`, with `-1` for the value 0.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use powerchar::characters::{character_family, CharacterTable, Order};
use powerchar::gauss_sums::{g_symbol, tau_char};
use powerchar::mean_values::{compute_constant, s_total_with, Method, SumConfig, DEFAULT_BUDGET};
use powerchar::ring::{residue_symbol, EisInt, GaussInt, QuadInt, RingKind};
use powerchar::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Overflow = 4,
    Capacity = 5,
    Budget = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PcComplex {
    pub re: f64,
    pub im: f64,
}

/// A sum evaluation. `predictor` and `ratio` are NaN when `y <= 1`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PcSumReport {
    pub order: u32,
    pub x: f64,
    pub y: f64,
    pub total_re: f64,
    pub total_im: f64,
    pub power_part: f64,
    pub remainder_re: f64,
    pub remainder_im: f64,
    pub predictor: f64,
    pub ratio: f64,
    pub moduli_count: u64,
    pub char_count: u64,
}

/// `C1` (order 3) or `C2` (order 4) with its Euler product.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PcConstant {
    pub order: u32,
    pub value: f64,
    pub euler_product: f64,
    pub prime_cutoff: u64,
    pub tail_bound: f64,
}

/// Opaque character table.
pub struct PcCharacterTable {
    inner: CharacterTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(PcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain(_) => PcStatus::Domain,
            Error::Overflow(_) => PcStatus::Overflow,
            Error::Capacity(_) => PcStatus::Capacity,
            Error::Budget { .. } => PcStatus::Budget,
        };
        Fail(status, e.to_string())
    }
}

fn null(name: &str) -> Fail {
    Fail(PcStatus::NullPointer, format!("{name} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PcStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            PcStatus::Panic
        }
    }
}

fn order_of(order: u32) -> Result<Order, Fail> {
    Order::from_value(order).map_err(|_| Fail(PcStatus::InvalidArgument, format!("order must be 3 or 4, got {order}")))
}

fn out_ref<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    // SAFETY: callers pass either null or a valid, writable pointer.
    unsafe { p.as_mut() }.ok_or_else(|| null(name))
}

fn exponent_code(e: Option<u32>) -> i32 {
    e.map_or(-1, |j| j as i32)
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

fn symbol<R: RingKind>(a: i64, b: i64, na: i64, nb: i64) -> Result<Option<u32>, Fail> {
    let x = QuadInt::<R>::try_new(a, b)?;
    let n = QuadInt::<R>::try_new(na, nb)?;
    Ok(residue_symbol(x, n)?)
}

/// Cubic residue symbol `((a + bω)/(na + nb·ω))₃` as an exponent, `-1` for 0.
///
/// # Safety
/// `out` must be null or point to writable memory for one `int32_t`.
#[no_mangle]
pub unsafe extern "C" fn pc_cubic_symbol(a: i64, b: i64, na: i64, nb: i64, out: *mut i32) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = exponent_code(symbol::<powerchar::ring::Eisenstein>(a, b, na, nb)?);
        Ok(())
    })
}

/// Quartic residue symbol `((a + bi)/(na + nb·i))₄` as an exponent, `-1` for 0.
///
/// # Safety
/// `out` must be null or point to writable memory for one `int32_t`.
#[no_mangle]
pub unsafe extern "C" fn pc_quartic_symbol(a: i64, b: i64, na: i64, nb: i64, out: *mut i32) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = exponent_code(symbol::<powerchar::ring::Gaussian>(a, b, na, nb)?);
        Ok(())
    })
}

/// Ring Gauss sum `g₃(r, n)` (order 3) or `g₄(r, n)` (order 4) for primary `n`.
///
/// # Safety
/// `out` must be null or point to writable memory for one `PcComplex`.
#[no_mangle]
pub unsafe extern "C" fn pc_gauss_sum(order: u32, ra: i64, rb: i64, na: i64, nb: i64, out: *mut PcComplex) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let g = match order_of(order)? {
            Order::Cubic => g_symbol(EisInt::try_new(ra, rb)?, EisInt::try_new(na, nb)?)?,
            Order::Quartic => g_symbol(GaussInt::try_new(ra, rb)?, GaussInt::try_new(na, nb)?)?,
        };
        *out = PcComplex { re: g.re, im: g.im };
        Ok(())
    })
}

/// Number of characters in the family of modulus `n`.
///
/// # Safety
/// `out_len` must be null or point to writable memory for one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn pc_family_size(order: u32, n: u64, out_len: *mut usize) -> PcStatus {
    guard(|| {
        let out = out_ref(out_len, "out_len")?;
        *out = match order_of(order)? {
            Order::Cubic => powerchar::enumerate_q::<powerchar::ring::Eisenstein>(n)?.len(),
            Order::Quartic => powerchar::enumerate_q::<powerchar::ring::Gaussian>(n)?.len(),
        };
        Ok(())
    })
}

/// Builds member `index` of the family of modulus `n`. Release with
/// [`pc_character_table_free`].
///
/// # Safety
/// `out` must be null or point to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_character_table_new(order: u32, n: u64, index: usize, out: *mut *mut PcCharacterTable) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let mut family = character_family(n, order_of(order)?)?;
        if index >= family.len() {
            return Err(Fail(PcStatus::InvalidArgument, format!("index {index} out of range for a family of {}", family.len())));
        }
        let inner = family.swap_remove(index);
        *out = Box::into_raw(Box::new(PcCharacterTable { inner }));
        Ok(())
    })
}

/// Releases a table. Null is ignored.
///
/// # Safety
/// `table` must be null or a handle from [`pc_character_table_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pc_character_table_free(table: *mut PcCharacterTable) {
    if !table.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(table) });
    }
}

fn table_ref<'a>(table: *const PcCharacterTable) -> Result<&'a CharacterTable, Fail> {
    // SAFETY: callers pass null or a live handle.
    unsafe { table.as_ref() }.map(|t| &t.inner).ok_or_else(|| null("table"))
}

/// Modulus of a table.
///
/// # Safety
/// `table` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_character_table_modulus(table: *const PcCharacterTable, out: *mut u64) -> PcStatus {
    guard(|| {
        let t = table_ref(table)?;
        *out_ref(out, "out")? = t.modulus;
        Ok(())
    })
}

/// `χ(m)` as an exponent, `-1` for 0.
///
/// # Safety
/// `table` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_character_table_value(table: *const PcCharacterTable, m: i64, out: *mut i32) -> PcStatus {
    guard(|| {
        let t = table_ref(table)?;
        *out_ref(out, "out")? = exponent_code(t.value(m));
        Ok(())
    })
}

/// Classical Gauss sum `τ(r, χ)`.
///
/// # Safety
/// `table` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn pc_tau(table: *const PcCharacterTable, r: i64, out: *mut PcComplex) -> PcStatus {
    guard(|| {
        let t = table_ref(table)?;
        let v = tau_char(r, t);
        *out_ref(out, "out")? = PcComplex { re: v.re, im: v.im };
        Ok(())
    })
}

/// Evaluates `S(x, y)`. `method`: 0 direct, 1 period. `budget` 0 selects the default.
///
/// # Safety
/// `out` must be null or point to writable memory for one `PcSumReport`.
#[no_mangle]
pub unsafe extern "C" fn pc_sum_total(order: u32, x: f64, y: f64, method: u32, budget: u64, out: *mut PcSumReport) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let method = match method {
            0 => Method::Direct,
            1 => Method::Period,
            m => return Err(Fail(PcStatus::InvalidArgument, format!("method must be 0 or 1, got {m}"))),
        };
        let budget = if budget == 0 { DEFAULT_BUDGET } else { budget as u128 };
        let r = s_total_with(order_of(order)?, x, y, &SumConfig { method, budget, timing: false })?;
        *out = PcSumReport {
            order,
            x,
            y,
            total_re: r.total_re,
            total_im: r.total_im,
            power_part: r.power_part,
            remainder_re: r.remainder_re,
            remainder_im: r.remainder_im,
            predictor: r.predictor.unwrap_or(f64::NAN),
            ratio: r.ratio.unwrap_or(f64::NAN),
            moduli_count: r.moduli_count,
            char_count: r.char_count,
        };
        Ok(())
    })
}

/// Computes `C1` or `C2` with primes up to `cutoff` (at least 100).
///
/// # Safety
/// `out` must be null or point to writable memory for one `PcConstant`.
#[no_mangle]
pub unsafe extern "C" fn pc_compute_constant(order: u32, cutoff: u64, out: *mut PcConstant) -> PcStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let c = compute_constant(order_of(order)?, cutoff)?;
        *out = PcConstant {
            order,
            value: c.value,
            euler_product: c.euler_product,
            prime_cutoff: c.prime_cutoff,
            tail_bound: c.tail_bound,
        };
        Ok(())
    })
}
