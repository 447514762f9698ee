//! C ABI for `unruh-teleport`.
//!
//! Every fallible function returns a [`UtStatus`]; on failure a message is
//! available from [`ut_last_error_message`] on the same thread until the next
//! failing call. Outputs are written through caller-provided pointers only
//! on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use unruh_teleport::analysis::{p_opt, q_opt, q_special, Optimum};
use unruh_teleport::channel::{acceleration_to_r, resource_state, ChannelParams};
use unruh_teleport::metrics::{evaluate, Scenario};
use unruh_teleport::teleport::InputParams;
use unruh_teleport::Error;

pub const UT_SCENARIO_SINGLE: i32 = 0;
pub const UT_SCENARIO_TWO: i32 = 1;

/// Number of entries in the row-major 4x4 resource matrix.
pub const UT_RESOURCE_LEN: usize = 16;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UtStatus {
    Ok = 0,
    NullPointer = 1,
    OutOfRange = 2,
    InvalidArgument = 3,
    Degenerate = 4,
    OracleMismatch = 5,
    Internal = 6,
}

/// Opaque channel handle.
pub struct UtChannel {
    params: ChannelParams,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct UtCoefficients {
    pub a: f64,
    pub d: f64,
    pub f: f64,
    pub n2: f64,
}

/// Metrics at one point. `concurrence` and `discord` are NaN and
/// `has_correlations` is false for the single-qubit scenario.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct UtMetrics {
    pub prep_probability: f64,
    pub fidelity: f64,
    pub qfi_theta: f64,
    pub qfi_phi: f64,
    pub coherence: f64,
    pub concurrence: f64,
    pub discord: f64,
    pub has_correlations: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> UtStatus {
    match e {
        Error::OutOfRange { .. } => UtStatus::OutOfRange,
        Error::Degenerate { .. } => UtStatus::Degenerate,
        Error::OracleMismatch { .. } => UtStatus::OracleMismatch,
        _ => UtStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (UtStatus, String)>) -> UtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UtStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            UtStatus::Internal
        }
    }
}

fn lib<T>(r: unruh_teleport::Result<T>) -> Result<T, (UtStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(name: &str) -> (UtStatus, String) {
    (UtStatus::NullPointer, format!("{name} is NULL"))
}

unsafe fn channel_ref<'a>(ch: *const UtChannel) -> Result<&'a UtChannel, (UtStatus, String)> {
    ch.as_ref().ok_or_else(|| null("channel"))
}

unsafe fn write_out<T>(out: *mut T, name: &str, value: T) -> Result<(), (UtStatus, String)> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

/// Creates a channel. The handle must be released with [`ut_channel_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ut_channel_new(vartheta: f64, p: f64, q: f64, r: f64, out: *mut *mut UtChannel) -> UtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = lib(ChannelParams::new(vartheta, p, q, r))?;
        out.write(Box::into_raw(Box::new(UtChannel { params })));
        Ok(())
    })
}

/// # Safety
/// `ch` must be NULL or a handle from [`ut_channel_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ut_channel_free(ch: *mut UtChannel) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

/// # Safety
/// `ch` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ut_channel_prep_probability(ch: *const UtChannel, out: *mut f64) -> UtStatus {
    guard(|| {
        let ch = channel_ref(ch)?;
        write_out(out, "out", unruh_teleport::channel::prep_probability(&ch.params))
    })
}

/// # Safety
/// `ch` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ut_channel_coefficients(ch: *const UtChannel, out: *mut UtCoefficients) -> UtStatus {
    guard(|| {
        let k = channel_ref(ch)?.params.coefficients();
        write_out(
            out,
            "out",
            UtCoefficients {
                a: k.a,
                d: k.d,
                f: k.f,
                n2: k.n2,
            },
        )
    })
}

/// Resource state from the simulated preparation, row-major in the basis
/// `00, 01, 10, 11`.
///
/// # Safety
/// `ch` must be a live handle; `re` and `im` must each point to
/// [`UT_RESOURCE_LEN`] writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ut_channel_resource(ch: *const UtChannel, re: *mut f64, im: *mut f64) -> UtStatus {
    guard(|| {
        let ch = channel_ref(ch)?;
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        let state = lib(resource_state(&ch.params))?.resource;
        for (k, z) in state.matrix().entries().iter().enumerate() {
            re.add(k).write(z.re);
            im.add(k).write(z.im);
        }
        Ok(())
    })
}

/// Evaluates every metric for input angles `(theta, phi)`.
///
/// # Safety
/// `ch` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ut_channel_evaluate(
    ch: *const UtChannel,
    scenario: i32,
    theta: f64,
    phi: f64,
    out: *mut UtMetrics,
) -> UtStatus {
    guard(|| {
        let ch = channel_ref(ch)?;
        let scenario = match scenario {
            UT_SCENARIO_SINGLE => Scenario::Single,
            UT_SCENARIO_TWO => Scenario::Two,
            other => return Err((UtStatus::InvalidArgument, format!("unknown scenario {other}"))),
        };
        let input = lib(InputParams::new(theta, phi))?;
        let row = lib(evaluate(scenario, &ch.params, &input))?;
        write_out(
            out,
            "out",
            UtMetrics {
                prep_probability: row.prep_probability,
                fidelity: row.fidelity,
                qfi_theta: row.qfi_theta,
                qfi_phi: row.qfi_phi,
                coherence: row.coherence,
                concurrence: row.concurrence.unwrap_or(f64::NAN),
                discord: row.discord.unwrap_or(f64::NAN),
                has_correlations: row.concurrence.is_some(),
            },
        )
    })
}

unsafe fn write_optimum(opt: Optimum, value: *mut f64, in_range: *mut bool) -> Result<(), (UtStatus, String)> {
    if value.is_null() || in_range.is_null() {
        return Err(null("value/in_range"));
    }
    value.write(opt.value);
    in_range.write(opt.in_range);
    Ok(())
}

/// PM strength maximizing the phase QFI. Out-of-range optima are returned
/// with `in_range` false, not as an error.
///
/// # Safety
/// `value` and `in_range` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ut_p_opt(q: f64, vartheta: f64, r: f64, value: *mut f64, in_range: *mut bool) -> UtStatus {
    guard(|| write_optimum(lib(p_opt(q, vartheta, r))?, value, in_range))
}

/// # Safety
/// `value` and `in_range` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ut_q_opt(p: f64, vartheta: f64, r: f64, value: *mut f64, in_range: *mut bool) -> UtStatus {
    guard(|| write_optimum(lib(q_opt(p, vartheta, r))?, value, in_range))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ut_q_special(p: f64, r: f64, out: *mut f64) -> UtStatus {
    guard(|| write_out(out, "out", lib(q_special(p, r))?))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ut_acceleration_to_r(a: f64, omega: f64, out: *mut f64) -> UtStatus {
    guard(|| write_out(out, "out", lib(acceleration_to_r(a, omega))?))
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ut_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn ut_status_message(status: UtStatus) -> *const c_char {
    let s: &'static CStr = match status {
        UtStatus::Ok => c"ok",
        UtStatus::NullPointer => c"null pointer argument",
        UtStatus::OutOfRange => c"parameter out of range",
        UtStatus::InvalidArgument => c"invalid argument",
        UtStatus::Degenerate => c"degenerate closed form",
        UtStatus::OracleMismatch => c"oracle mismatch",
        UtStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

#[no_mangle]
pub extern "C" fn ut_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"unknown",
    };
    VERSION.as_ptr()
}
