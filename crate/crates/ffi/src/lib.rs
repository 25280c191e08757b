//! C ABI over `sl2torus`.
//!
//! Every fallible function returns an [`Sl2Status`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`sl2_last_error_message`]. Handles are opaque and must be
//! released with the matching `*_free` function; strings returned by the
//! library must be released with [`sl2_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sl2torus::generators::{cyclic_generator, mlde_solve, VvmfVector};
use sl2torus::mtc::{GenModularPair, MtcLevelData};
use sl2torus::rational::{fmt_rational, rat, to_f64};
use sl2torus::series::{eisenstein, eta_power, j_inverse, modular_derivative, QExpansion};
use sl2torus::Error;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Status {
    Ok = 0,
    InvalidArgument = 1,
    UnsupportedDimension = 2,
    Unsupported = 3,
    DegenerateMlde = 4,
    RelationViolation = 5,
    Refused = 6,
    InternalInconsistency = 7,
    NullPointer = 8,
    Panic = 9,
}

/// Cyclic generator of a module of vector-valued modular forms.
pub struct Sl2Vvmf(VvmfVector);

/// Truncated q-expansion with exact rational coefficients.
pub struct Sl2Series(QExpansion);

/// Categorical `(S^(p), T^(p))` pair with its relation residuals.
pub struct Sl2ModularPair(GenModularPair);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> Sl2Status {
    match e {
        Error::InvalidArgument(_) => Sl2Status::InvalidArgument,
        Error::UnsupportedDimension(_) => Sl2Status::UnsupportedDimension,
        Error::Unsupported(_) => Sl2Status::Unsupported,
        Error::DegenerateMlde(_) => Sl2Status::DegenerateMlde,
        Error::RelationViolation(_) => Sl2Status::RelationViolation,
        Error::Refused(_) => Sl2Status::Refused,
        Error::InternalInconsistency(_) => Sl2Status::InternalInconsistency,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> Sl2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            Sl2Status::Ok
        }
        Ok(Err(Failure::Lib(e))) => {
            let s = status_of(&e);
            set_error(e.to_string());
            s
        }
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("null pointer passed for `{name}`"));
            Sl2Status::NullPointer
        }
        Err(_) => {
            set_error("internal panic".to_string());
            Sl2Status::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn write<T>(out: *mut T, name: &'static str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(name));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

fn to_json(v: &impl serde::Serialize) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure::Lib(Error::InternalInconsistency(e.to_string())))
}

fn checked_rational(num: i64, den: i64) -> Result<sl2torus::Rational, Failure> {
    if den == 0 {
        return Err(Error::InvalidArgument("zero denominator".into()).into());
    }
    Ok(rat(num, den))
}

fn index(i: usize, len: usize, what: &str) -> Result<usize, Failure> {
    if i >= len {
        return Err(Error::InvalidArgument(format!("{what} index {i} out of range 0..{len}")).into());
    }
    Ok(i)
}

/// Message for the last failure on this thread, or null if the last call
/// succeeded. The caller owns the returned string.
#[no_mangle]
pub extern "C" fn sl2_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(ptr::null_mut(), c_string))
}

/// Library version as a string owned by the caller.
#[no_mangle]
pub extern "C" fn sl2_version() -> *mut c_char {
    c_string(env!("CARGO_PKG_VERSION").to_string())
}

/// # Safety
/// `s` must be null or a string returned by this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn sl2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Normalised cyclic generator for `k − λ ∈ {0, 1, 2}` through `order` terms.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sl2_cyclic_generator(k: u32, lambda: u32, order: usize, out: *mut *mut Sl2Vvmf) -> Sl2Status {
    guard(|| {
        let v = cyclic_generator(k, lambda, order)?;
        write(out, "out", Box::into_raw(Box::new(Sl2Vvmf(v))))
    })
}

/// # Safety
/// `v` must be null or a handle from [`sl2_cyclic_generator`], not freed before.
#[no_mangle]
pub unsafe extern "C" fn sl2_vvmf_free(v: *mut Sl2Vvmf) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// # Safety
/// `v` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_vvmf_component_count(v: *const Sl2Vvmf, out: *mut usize) -> Sl2Status {
    guard(|| write(out, "out", deref(v, "v")?.0.components.len()))
}

/// Label `μ` of component `i`.
///
/// # Safety
/// `v` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_vvmf_component_label(v: *const Sl2Vvmf, i: usize, out: *mut u32) -> Sl2Status {
    guard(|| {
        let c = &deref(v, "v")?.0.components;
        write(out, "out", c[index(i, c.len(), "component")?].mu)
    })
}

/// Copy of component `i` as a new series handle.
///
/// # Safety
/// `v` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_vvmf_component(v: *const Sl2Vvmf, i: usize, out: *mut *mut Sl2Series) -> Sl2Status {
    guard(|| {
        let c = &deref(v, "v")?.0.components;
        let s = c[index(i, c.len(), "component")?].series.clone();
        write(out, "out", Box::into_raw(Box::new(Sl2Series(s))))
    })
}

/// # Safety
/// `v` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_vvmf_to_json(v: *const Sl2Vvmf, out: *mut *mut c_char) -> Sl2Status {
    guard(|| write(out, "out", c_string(to_json(&deref(v, "v")?.0)?)))
}

/// `η^{num/den}` through `order` terms.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_eta_power(num: i64, den: i64, order: usize, out: *mut *mut Sl2Series) -> Sl2Status {
    guard(|| {
        let s = eta_power(&checked_rational(num, den)?, order);
        write(out, "out", Box::into_raw(Box::new(Sl2Series(s))))
    })
}

/// Eisenstein series of even weight, normalised by `−B_w/w!`.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_eisenstein(weight: u32, order: usize, out: *mut *mut Sl2Series) -> Sl2Status {
    guard(|| {
        let s = eisenstein(weight, order)?;
        write(out, "out", Box::into_raw(Box::new(Sl2Series(s))))
    })
}

/// `J^{-1} = 1728/j`.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_j_inverse(order: usize, out: *mut *mut Sl2Series) -> Sl2Status {
    guard(|| {
        let s = j_inverse(order)?;
        write(out, "out", Box::into_raw(Box::new(Sl2Series(s))))
    })
}

/// Product of two series, truncated to the shorter precision.
///
/// # Safety
/// `a` and `b` must be live handles and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_mul(a: *const Sl2Series, b: *const Sl2Series, out: *mut *mut Sl2Series) -> Sl2Status {
    guard(|| {
        let s = deref(a, "a")?.0.mul(&deref(b, "b")?.0);
        write(out, "out", Box::into_raw(Box::new(Sl2Series(s))))
    })
}

/// Modular derivative of weight `num/den`.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_modular_derivative(
    s: *const Sl2Series,
    num: i64,
    den: i64,
    out: *mut *mut Sl2Series,
) -> Sl2Status {
    guard(|| {
        let d = modular_derivative(&deref(s, "s")?.0, &checked_rational(num, den)?);
        write(out, "out", Box::into_raw(Box::new(Sl2Series(d))))
    })
}

/// Number of known coefficients.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_order(s: *const Sl2Series, out: *mut usize) -> Sl2Status {
    guard(|| write(out, "out", deref(s, "s")?.0.order()))
}

/// Leading exponent as a string such as `"3/40"`.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_leading_exponent(s: *const Sl2Series, out: *mut *mut c_char) -> Sl2Status {
    guard(|| write(out, "out", c_string(fmt_rational(deref(s, "s")?.0.leading_exponent()))))
}

/// Coefficient `n` (of `q^{lead + n}`) as an exact string.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_coeff(s: *const Sl2Series, n: usize, out: *mut *mut c_char) -> Sl2Status {
    guard(|| {
        let c = deref(s, "s")?.0.coeffs();
        write(out, "out", c_string(fmt_rational(&c[index(n, c.len(), "coefficient")?])))
    })
}

/// Coefficient `n` rounded to a double.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_coeff_f64(s: *const Sl2Series, n: usize, out: *mut f64) -> Sl2Status {
    guard(|| {
        let c = deref(s, "s")?.0.coeffs();
        write(out, "out", to_f64(&c[index(n, c.len(), "coefficient")?]))
    })
}

/// # Safety
/// `s` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_to_json(s: *const Sl2Series, out: *mut *mut c_char) -> Sl2Status {
    guard(|| write(out, "out", c_string(to_json(&deref(s, "s")?.0)?)))
}

/// # Safety
/// `s` must be null or a series handle, not freed before.
#[no_mangle]
pub unsafe extern "C" fn sl2_series_free(s: *mut Sl2Series) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Fusion coefficient `N_{ab}^c`.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_fusion_coefficient(k: u32, a: u32, b: u32, c: u32, out: *mut u32) -> Sl2Status {
    guard(|| write(out, "out", sl2torus::sl2::fusion_coefficient(k, a, b, c)?))
}

/// Classification report for `ρ_λ` as JSON.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_classify_json(k: u32, lambda: u32, out: *mut *mut c_char) -> Sl2Status {
    guard(|| write(out, "out", c_string(to_json(&sl2torus::rep::classify(k, lambda)?)?)))
}

/// Differential-equation coefficients and residuals as JSON.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_mlde_json(k: u32, lambda: u32, order: usize, out: *mut *mut c_char) -> Sl2Status {
    guard(|| write(out, "out", c_string(to_json(&mlde_solve(k, lambda, order)?)?)))
}

/// Character of `L(k, λ)` through grade `qorder − 1` as JSON.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_character_json(k: u32, lambda: u32, qorder: usize, out: *mut *mut c_char) -> Sl2Status {
    guard(|| {
        let ch = sl2torus::bgg::simple_character(k, lambda, qorder)?;
        write(out, "out", c_string(to_json(&ch)?))
    })
}

/// Categorical pair at level `k` and even label `p`; fails with
/// `RelationViolation` when a braid relation residual reaches `tolerance`.
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_gen_modular_pair(
    k: u32,
    p: u32,
    tolerance: f64,
    out: *mut *mut Sl2ModularPair,
) -> Sl2Status {
    guard(|| {
        let pair = MtcLevelData::new(k)?.gen_modular_pair(p, tolerance)?;
        write(out, "out", Box::into_raw(Box::new(Sl2ModularPair(pair))))
    })
}

/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_pair_dimension(m: *const Sl2ModularPair, out: *mut usize) -> Sl2Status {
    guard(|| write(out, "out", deref(m, "m")?.0.basis.len()))
}

/// Label of basis vector `i`.
///
/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_pair_basis_label(m: *const Sl2ModularPair, i: usize, out: *mut u32) -> Sl2Status {
    guard(|| {
        let b = &deref(m, "m")?.0.basis;
        write(out, "out", b[index(i, b.len(), "basis")?])
    })
}

/// Entry `(i, j)` of `S^(p)`.
///
/// # Safety
/// `m` must be a live handle; `re` and `im` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_pair_s_entry(
    m: *const Sl2ModularPair,
    i: usize,
    j: usize,
    re: *mut f64,
    im: *mut f64,
) -> Sl2Status {
    guard(|| {
        let pair = &deref(m, "m")?.0;
        let n = pair.basis.len();
        let z = pair.s_matrix[(index(i, n, "row")?, index(j, n, "column")?)];
        write(re, "re", z.re)?;
        write(im, "im", z.im)
    })
}

/// Diagonal entry `i` of `T^(p)`.
///
/// # Safety
/// `m` must be a live handle; `re` and `im` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_pair_t_entry(m: *const Sl2ModularPair, i: usize, re: *mut f64, im: *mut f64) -> Sl2Status {
    guard(|| {
        let pair = &deref(m, "m")?.0;
        let i = index(i, pair.basis.len(), "row")?;
        let z = pair.t_matrix[(i, i)];
        write(re, "re", z.re)?;
        write(im, "im", z.im)
    })
}

/// `‖(ST)³ − S²‖_∞` and `‖S⁴ − θ_p^{-1}‖_∞`.
///
/// # Safety
/// `m` must be a live handle; both outputs must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_pair_residuals(
    m: *const Sl2ModularPair,
    st_cubed: *mut f64,
    s_fourth: *mut f64,
) -> Sl2Status {
    guard(|| {
        let r = deref(m, "m")?.0.residuals;
        write(st_cubed, "st_cubed", r.st_cubed_minus_s_squared)?;
        write(s_fourth, "s_fourth", r.s_fourth_minus_twist)
    })
}

/// # Safety
/// `m` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn sl2_pair_to_json(m: *const Sl2ModularPair, out: *mut *mut c_char) -> Sl2Status {
    guard(|| write(out, "out", c_string(to_json(&deref(m, "m")?.0)?)))
}

/// # Safety
/// `m` must be null or a pair handle, not freed before.
#[no_mangle]
pub unsafe extern "C" fn sl2_pair_free(m: *mut Sl2ModularPair) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}
