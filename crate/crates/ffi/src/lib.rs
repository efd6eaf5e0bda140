//! C ABI over `wpd-core`.
//!
//! States are opaque `WpdState` handles created by the `wpd_state_*`
//! constructors and released with `wpd_state_free`. Every fallible function
//! returns a `WpdStatus`; on failure the message is available from
//! `wpd_last_error_message` on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use wpd_core::duality::{self, LogBase};
use wpd_core::linalg::{ComplexMatrix, HermitianOperator, C64};
use wpd_core::profile::DimensionProfile;
use wpd_core::relations::{evaluate_relation, Direction, EvalContext, Subject};
use wpd_core::states::{named_profile, DensityMatrix, PureState};
use wpd_core::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WpdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    InvalidState = 4,
    UnknownName = 5,
    UnknownRelation = 6,
    Inapplicable = 7,
    Numerical = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WpdLogBase {
    Two = 0,
    E = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WpdDirection {
    Leq = 0,
    Geq = 1,
    Eq = 2,
}

/// Binding comparison of one relation evaluation.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WpdRelationRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub direction: WpdDirection,
    pub satisfied: bool,
    pub saturated: bool,
}

/// Opaque quantum state.
pub struct WpdState {
    subject: Subject,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> WpdStatus {
    match e {
        Error::DimensionMismatch { .. } | Error::NotSquare { .. } | Error::PartyIndex { .. } => {
            WpdStatus::DimensionMismatch
        }
        Error::NotHermitian { .. } | Error::InvalidState(_) | Error::Normalization { .. } => {
            WpdStatus::InvalidState
        }
        Error::UnknownState(_) => WpdStatus::UnknownName,
        Error::UnknownRelation(_) => WpdStatus::UnknownRelation,
        Error::Inapplicable { .. } => WpdStatus::Inapplicable,
        Error::EigenConvergence { .. } => WpdStatus::Numerical,
        _ => WpdStatus::InvalidArgument,
    }
}

struct Fail(WpdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(WpdStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WpdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WpdStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            WpdStatus::Internal
        }
    }
}

unsafe fn state_ref<'a>(p: *const WpdState) -> Result<&'a WpdState, Fail> {
    p.as_ref().ok_or_else(|| null("state"))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null("output pointer"))
}

unsafe fn slice_of<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn str_of<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(WpdStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn profile_of(dims: *const usize, n_parties: usize) -> Result<DimensionProfile, Fail> {
    if n_parties == 0 {
        return Err(Fail(WpdStatus::InvalidArgument, "no parties".into()));
    }
    Ok(DimensionProfile::new(slice_of(dims, n_parties, "dims")?.to_vec())?)
}

fn base_of(b: WpdLogBase) -> LogBase {
    match b {
        WpdLogBase::Two => LogBase::Two,
        WpdLogBase::E => LogBase::E,
    }
}

fn publish(subject: Subject, out: &mut *mut WpdState) {
    *out = Box::into_raw(Box::new(WpdState { subject }));
}

/// Density matrix from row-major real and imaginary parts, each `n*n` long
/// with `n` the product of `dims`.
///
/// # Safety
/// `dims` must point to `n_parties` values, `re` and `im` to `n*n` values,
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wpd_state_from_entries(
    dims: *const usize,
    n_parties: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut WpdState,
) -> WpdStatus {
    guard(|| {
        let out = out_ref(out)?;
        let profile = profile_of(dims, n_parties)?;
        let n = profile.total_dim();
        let re = slice_of(re, n * n, "re")?;
        let im = slice_of(im, n * n, "im")?;
        let entries: Vec<C64> = re.iter().zip(im).map(|(&r, &i)| C64::new(r, i)).collect();
        let op = HermitianOperator::new(ComplexMatrix::from_row_major(n, &entries)?)?;
        publish(Subject::from_density(DensityMatrix::new(op, profile)?), out);
        Ok(())
    })
}

/// Pure state from `n` amplitudes; must be normalized.
///
/// # Safety
/// As for `wpd_state_from_entries` with `n` values in `re` and `im`.
#[no_mangle]
pub unsafe extern "C" fn wpd_state_from_amplitudes(
    dims: *const usize,
    n_parties: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut WpdState,
) -> WpdStatus {
    guard(|| {
        let out = out_ref(out)?;
        let profile = profile_of(dims, n_parties)?;
        let n = profile.total_dim();
        let re = slice_of(re, n, "re")?;
        let im = slice_of(im, n, "im")?;
        let amps = re.iter().zip(im).map(|(&r, &i)| C64::new(r, i)).collect();
        publish(Subject::from_pure(PureState::new(amps, profile)?), out);
        Ok(())
    })
}

/// Named state (`bell`, `ghz`, `w`, `plus[:n]`, `basis:k[:n]`, `max_mixed[:n]`).
/// `n_parties == 0` selects the state's default profile.
///
/// # Safety
/// `name` must be a nul-terminated string; `dims` as above when `n_parties > 0`.
#[no_mangle]
pub unsafe extern "C" fn wpd_state_named(
    name: *const c_char,
    dims: *const usize,
    n_parties: usize,
    out: *mut *mut WpdState,
) -> WpdStatus {
    guard(|| {
        let out = out_ref(out)?;
        let name = str_of(name, "name")?;
        let profile = if n_parties == 0 { None } else { Some(profile_of(dims, n_parties)?) };
        let (state, profile) = named_profile(name, profile.as_ref())?;
        let subject = match state.pure(&profile)? {
            Some(psi) => Subject::from_pure(psi),
            None => Subject::from_density(state.density(&profile)?),
        };
        publish(subject, out);
        Ok(())
    })
}

/// Releases a state. Null is ignored.
///
/// # Safety
/// `state` must come from a `wpd_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wpd_state_free(state: *mut WpdState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wpd_state_dim(state: *const WpdState, out: *mut usize) -> WpdStatus {
    guard(|| {
        *out_ref(out)? = state_ref(state)?.subject.density().dim();
        Ok(())
    })
}

/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wpd_state_is_pure(state: *const WpdState, out: *mut bool) -> WpdStatus {
    guard(|| {
        *out_ref(out)? = state_ref(state)?.subject.pure().is_some();
        Ok(())
    })
}

/// Copies the density matrix into row-major `re` and `im`, each of `len >= n*n`.
///
/// # Safety
/// `re` and `im` must be writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn wpd_state_entries(
    state: *const WpdState,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> WpdStatus {
    guard(|| {
        let rho = state_ref(state)?.subject.density();
        let n = rho.dim();
        if len < n * n {
            return Err(Fail(WpdStatus::DimensionMismatch, format!("buffer holds {len}, need {}", n * n)));
        }
        if re.is_null() || im.is_null() {
            return Err(null("output buffer"));
        }
        let (re, im) = (slice::from_raw_parts_mut(re, len), slice::from_raw_parts_mut(im, len));
        for r in 0..n {
            for c in 0..n {
                let z = rho.get(r, c);
                re[r * n + c] = z.re;
                im[r * n + c] = z.im;
            }
        }
        Ok(())
    })
}

/// Measure selector for `wpd_measure`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WpdMeasure {
    Predictability = 0,
    Visibility = 1,
    InfoS = 2,
    InfoI = 3,
    Purity = 4,
    Entropy = 5,
}

/// Scalar measure of a state; `base` only affects `Entropy`.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wpd_measure(
    state: *const WpdState,
    which: WpdMeasure,
    base: WpdLogBase,
    out: *mut f64,
) -> WpdStatus {
    guard(|| {
        let out = out_ref(out)?;
        let rho = state_ref(state)?.subject.density();
        *out = match which {
            WpdMeasure::Predictability => duality::predictability(rho),
            WpdMeasure::Visibility => duality::visibility(rho),
            WpdMeasure::InfoS => duality::info_content_s(rho),
            WpdMeasure::InfoI => duality::info_content_i(rho)?,
            WpdMeasure::Purity => rho.purity(),
            WpdMeasure::Entropy => duality::von_neumann_entropy(rho, base_of(base))?,
        };
        Ok(())
    })
}

/// Reduced state on the kept parties (indices into the profile).
///
/// # Safety
/// `keep` must point to `n_keep` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn wpd_partial_trace(
    state: *const WpdState,
    keep: *const usize,
    n_keep: usize,
    out: *mut *mut WpdState,
) -> WpdStatus {
    guard(|| {
        let out = out_ref(out)?;
        let rho = state_ref(state)?.subject.density();
        let keep = slice_of(keep, n_keep, "keep")?;
        publish(Subject::from_density(rho.reduce(keep)?), out);
        Ok(())
    })
}

/// Evaluates one relation with the default cut (first party against the
/// rest). `sigma` may be null; two-state relations are then inapplicable.
///
/// # Safety
/// `state` must be live, `sigma` live or null, `id` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wpd_relation_evaluate(
    state: *const WpdState,
    sigma: *const WpdState,
    id: *const c_char,
    base: WpdLogBase,
    out: *mut WpdRelationRecord,
) -> WpdStatus {
    guard(|| {
        let out = out_ref(out)?;
        let subject = &state_ref(state)?.subject;
        let id = str_of(id, "relation id")?;
        let mut ctx = EvalContext::new(subject);
        ctx.base = base_of(base);
        ctx.sigma = sigma.as_ref().map(|s| s.subject.density());
        let rec = evaluate_relation(id, &ctx)?;
        *out = WpdRelationRecord {
            lhs: rec.lhs_value,
            rhs: rec.rhs_value,
            margin: rec.margin,
            direction: match rec.direction {
                Direction::Leq => WpdDirection::Leq,
                Direction::Geq => WpdDirection::Geq,
                Direction::Eq => WpdDirection::Eq,
            },
            satisfied: rec.satisfied,
            saturated: rec.saturated,
        };
        Ok(())
    })
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next `wpd_*` call on the same thread.
#[no_mangle]
pub extern "C" fn wpd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn wpd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
