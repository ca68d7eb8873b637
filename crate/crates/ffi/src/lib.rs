//! C ABI over `vortex-core`.
//!
//! Every fallible call returns a [`VortexStatus`]; on failure the message is
//! available from [`vortex_last_error_message`] on the same thread. Objects
//! cross the boundary as opaque handles that the caller releases with the
//! matching `*_free` function. Complex numbers are passed as
//! [`VortexComplex`] arrays, and field indices start at 0.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::slice;

use num_complex::Complex64;
use vortex_core::beam::{diffraction_criterion, lg_amplitude, sample_grid, BeamSuperposition, BeamTerm, FieldGrid};
use vortex_core::numeric::{integrate, IntegratorSettings};
use vortex_core::scenario::{run, Scenario};
use vortex_core::vortex::{analyze, count_petals, VortexReport};
use vortex_core::{
    asymptotic_fields, bright_component, propagate, propagate_grid, Error, FieldVector, LgBeam, SchemeConfig,
    TransverseGrid,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VortexStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidConfig = 2,
    ShapeMismatch = 3,
    ZeroField = 4,
    NoAsymptote = 5,
    SensitivityRegime = 6,
    NonFinite = 7,
    ZeroModulusOnLoop = 8,
    ZeroIntensityRing = 9,
    Validity = 10,
    Io = 11,
    Panic = 12,
}

impl From<&Error> for VortexStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidConfig(_) | Error::UnknownFigure(_) | Error::Json(_) => VortexStatus::InvalidConfig,
            Error::ShapeMismatch { .. } => VortexStatus::ShapeMismatch,
            Error::ZeroField => VortexStatus::ZeroField,
            Error::NoAsymptote => VortexStatus::NoAsymptote,
            Error::SensitivityRegime(_) => VortexStatus::SensitivityRegime,
            Error::NonFinite { .. } => VortexStatus::NonFinite,
            Error::ZeroModulusOnLoop { .. } => VortexStatus::ZeroModulusOnLoop,
            Error::ZeroIntensityRing => VortexStatus::ZeroIntensityRing,
            Error::Validity(_) => VortexStatus::Validity,
            Error::Io(_) => VortexStatus::Io,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VortexComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for VortexComplex {
    fn from(v: Complex64) -> Self {
        VortexComplex { re: v.re, im: v.im }
    }
}

impl From<VortexComplex> for Complex64 {
    fn from(v: VortexComplex) -> Self {
        Complex64::new(v.re, v.im)
    }
}

/// One weighted LG term feeding field `field` at the entrance.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VortexBeamTerm {
    pub field: usize,
    pub weight: VortexComplex,
    pub epsilon: f64,
    pub waist: f64,
    pub charge: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VortexSingularity {
    pub x: f64,
    pub y: f64,
    pub charge: i32,
}

/// Opaque medium description.
pub struct VortexScheme(SchemeConfig);

/// Opaque sampled field grid.
pub struct VortexGrid(FieldGrid);

/// Opaque vortex analysis result.
pub struct VortexReportHandle(VortexReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(VortexStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(VortexStatus::from(&e), e.to_string())
    }
}

type FfiResult = std::result::Result<(), Failure>;

fn null(what: &str) -> Failure {
    Failure(VortexStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, translating errors and panics into a status plus last-error message.
fn guard(body: impl FnOnce() -> FfiResult) -> VortexStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => VortexStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("panic inside vortex-core".into());
            VortexStatus::Panic
        }
    }
}

unsafe fn read<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(ptr, len))
}

unsafe fn write<'a, T>(ptr: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(ptr, len))
}

unsafe fn handle<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_ptr<'a, T>(ptr: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or_else(|| null(what))
}

unsafe fn string(ptr: *const c_char, what: &str) -> Result<String, Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| Failure(VortexStatus::InvalidConfig, format!("{what} is not valid UTF-8")))
}

fn complex(values: &[VortexComplex]) -> Vec<Complex64> {
    values.iter().map(|&v| v.into()).collect()
}

fn store(out: &mut [VortexComplex], values: &[Complex64]) {
    for (o, v) in out.iter_mut().zip(values) {
        *o = (*v).into();
    }
}

fn check_len(scheme: &SchemeConfig, len: usize) -> FfiResult {
    if len != scheme.n() {
        return Err(Error::ShapeMismatch { expected: scheme.n(), found: len }.into());
    }
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn vortex_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a medium from `n` coefficients. `gamma` and `delta` may be null
/// (all ones and all zeros).
///
/// # Safety
/// Non-null array arguments must hold `n` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_scheme_new(
    n: usize,
    c: *const VortexComplex,
    alpha: *const f64,
    gamma: *const f64,
    delta: *const f64,
    length: f64,
    out: *mut *mut VortexScheme,
) -> VortexStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let amps = complex(read(c, n, "c")?);
        let alpha = read(alpha, n, "alpha")?.to_vec();
        let gamma = if gamma.is_null() { vec![1.0; n] } else { read(gamma, n, "gamma")?.to_vec() };
        let delta = if delta.is_null() { vec![0.0; n] } else { read(delta, n, "delta")?.to_vec() };
        let config = SchemeConfig::new(amps, alpha, gamma, delta, length)?;
        *out = Box::into_raw(Box::new(VortexScheme(config)));
        Ok(())
    })
}

/// Parses a medium from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_scheme_from_json(json: *const c_char, out: *mut *mut VortexScheme) -> VortexStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let config = SchemeConfig::from_json(&string(json, "json")?)?;
        *out = Box::into_raw(Box::new(VortexScheme(config)));
        Ok(())
    })
}

/// # Safety
/// `scheme` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vortex_scheme_free(scheme: *mut VortexScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Number of fields, or 0 for a null handle.
///
/// # Safety
/// `scheme` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vortex_scheme_n(scheme: *const VortexScheme) -> usize {
    scheme.as_ref().map_or(0, |s| s.0.n())
}

/// Writes the `n` propagation constants and the collective eigenvalue.
///
/// # Safety
/// `beta` must hold `n` elements; `x` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_scheme_coefficients(
    scheme: *const VortexScheme,
    beta: *mut VortexComplex,
    n: usize,
    x: *mut VortexComplex,
) -> VortexStatus {
    guard(|| {
        let scheme = &handle(scheme, "scheme")?.0;
        check_len(scheme, n)?;
        let coeffs = scheme.coefficients();
        store(write(beta, n, "beta")?, &coeffs.beta);
        *out_ptr(x, "x")? = coeffs.x.into();
        Ok(())
    })
}

/// Closed-form fields at distance `z`.
///
/// # Safety
/// `entrance` and `out` must hold `n` elements each.
#[no_mangle]
pub unsafe extern "C" fn vortex_propagate(
    scheme: *const VortexScheme,
    entrance: *const VortexComplex,
    n: usize,
    z: f64,
    out: *mut VortexComplex,
) -> VortexStatus {
    guard(|| {
        let scheme = &handle(scheme, "scheme")?.0;
        check_len(scheme, n)?;
        let result = propagate(scheme, &FieldVector(complex(read(entrance, n, "entrance")?)), z)?;
        store(write(out, n, "out")?, &result.0);
        Ok(())
    })
}

/// RK4 fields at distance `z` with `steps` fixed steps.
///
/// # Safety
/// `entrance` and `out` must hold `n` elements each.
#[no_mangle]
pub unsafe extern "C" fn vortex_integrate(
    scheme: *const VortexScheme,
    entrance: *const VortexComplex,
    n: usize,
    z: f64,
    steps: usize,
    out: *mut VortexComplex,
) -> VortexStatus {
    guard(|| {
        let scheme = &handle(scheme, "scheme")?.0;
        check_len(scheme, n)?;
        let settings = IntegratorSettings::new(steps)?;
        let result = integrate(scheme, &FieldVector(complex(read(entrance, n, "entrance")?)), z, &settings)?;
        store(write(out, n, "out")?, &result.0);
        Ok(())
    })
}

/// Long-distance limit of the fields.
///
/// # Safety
/// `entrance` and `out` must hold `n` elements each.
#[no_mangle]
pub unsafe extern "C" fn vortex_asymptote(
    scheme: *const VortexScheme,
    entrance: *const VortexComplex,
    n: usize,
    out: *mut VortexComplex,
) -> VortexStatus {
    guard(|| {
        let scheme = &handle(scheme, "scheme")?.0;
        check_len(scheme, n)?;
        let result = asymptotic_fields(scheme, &FieldVector(complex(read(entrance, n, "entrance")?)))?;
        store(write(out, n, "out")?, &result.0);
        Ok(())
    })
}

/// `Σ c_m* Ω_m`.
///
/// # Safety
/// `fields` must hold `n` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_bright_component(
    scheme: *const VortexScheme,
    fields: *const VortexComplex,
    n: usize,
    out: *mut VortexComplex,
) -> VortexStatus {
    guard(|| {
        let scheme = &handle(scheme, "scheme")?.0;
        check_len(scheme, n)?;
        let s = bright_component(scheme, &FieldVector(complex(read(fields, n, "fields")?)))?;
        *out_ptr(out, "out")? = s.into();
        Ok(())
    })
}

/// LG amplitude at polar position `(r, phi)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_lg_amplitude(
    epsilon: f64,
    waist: f64,
    charge: i32,
    r: f64,
    phi: f64,
    out: *mut VortexComplex,
) -> VortexStatus {
    guard(|| {
        let beam = LgBeam::new(epsilon, waist, charge)?;
        *out_ptr(out, "out")? = lg_amplitude(&beam, r, phi).into();
        Ok(())
    })
}

/// `Lλ/w²` and whether it is below π.
///
/// # Safety
/// `value` and `negligible` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_diffraction(
    length: f64,
    wavelength: f64,
    width: f64,
    value: *mut f64,
    negligible: *mut bool,
) -> VortexStatus {
    guard(|| {
        let check = diffraction_criterion(length, wavelength, width)?;
        *out_ptr(value, "value")? = check.value;
        *out_ptr(negligible, "negligible")? = check.negligible;
        Ok(())
    })
}

/// Samples the entrance fields on a `resolution²` grid spanning `[−extent, extent)²`.
/// Fields that no term names stay dark.
///
/// # Safety
/// `terms` must hold `count` elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_grid_sample(
    scheme: *const VortexScheme,
    terms: *const VortexBeamTerm,
    count: usize,
    extent: f64,
    resolution: usize,
    out: *mut *mut VortexGrid,
) -> VortexStatus {
    guard(|| {
        let scheme = &handle(scheme, "scheme")?.0;
        let out = out_ptr(out, "out")?;
        let mut per_field: Vec<Vec<BeamTerm>> = vec![Vec::new(); scheme.n()];
        for t in read(terms, count, "terms")? {
            let slot = per_field
                .get_mut(t.field)
                .ok_or(Error::ShapeMismatch { expected: scheme.n(), found: t.field + 1 })?;
            slot.push(BeamTerm { weight: t.weight.into(), beam: LgBeam::new(t.epsilon, t.waist, t.charge)? });
        }
        let inputs = per_field
            .into_iter()
            .map(|terms| (!terms.is_empty()).then(|| BeamSuperposition::new(terms)).transpose())
            .collect::<vortex_core::Result<Vec<_>>>()?;
        let grid = sample_grid(scheme, &inputs, &TransverseGrid::new(extent, resolution)?)?;
        *out = Box::into_raw(Box::new(VortexGrid(grid)));
        Ok(())
    })
}

/// Propagates every grid point to distance `z` into a new grid.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_grid_propagate(
    scheme: *const VortexScheme,
    grid: *const VortexGrid,
    z: f64,
    out: *mut *mut VortexGrid,
) -> VortexStatus {
    guard(|| {
        let scheme = &handle(scheme, "scheme")?.0;
        let grid = &handle(grid, "grid")?.0;
        let out = out_ptr(out, "out")?;
        let result = propagate_grid(scheme, grid, z)?;
        *out = Box::into_raw(Box::new(VortexGrid(result)));
        Ok(())
    })
}

/// # Safety
/// `grid` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vortex_grid_free(grid: *mut VortexGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Points per side, or 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vortex_grid_resolution(grid: *const VortexGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.grid().resolution)
}

/// Total number of stored values, `resolution² · n`.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vortex_grid_len(grid: *const VortexGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.values().len())
}

/// Copies the grid values, laid out as `[(j·resolution + i)·n + m]`.
///
/// # Safety
/// `out` must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn vortex_grid_values(grid: *const VortexGrid, out: *mut VortexComplex, len: usize) -> VortexStatus {
    guard(|| {
        let grid = &handle(grid, "grid")?.0;
        if len != grid.values().len() {
            return Err(Error::ShapeMismatch { expected: grid.values().len(), found: len }.into());
        }
        store(write(out, len, "out")?, grid.values());
        Ok(())
    })
}

/// Detects vortices of one field and counts its petals.
///
/// # Safety
/// `grid` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_grid_detect(
    grid: *const VortexGrid,
    field: usize,
    out: *mut *mut VortexReportHandle,
) -> VortexStatus {
    guard(|| {
        let grid = &handle(grid, "grid")?.0;
        let out = out_ptr(out, "out")?;
        let report = analyze(grid, field)?;
        *out = Box::into_raw(Box::new(VortexReportHandle(report)));
        Ok(())
    })
}

/// Intensity maxima on the ring of radius `ring_radius`.
///
/// # Safety
/// `grid` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_grid_count_petals(
    grid: *const VortexGrid,
    field: usize,
    ring_radius: f64,
    out: *mut usize,
) -> VortexStatus {
    guard(|| {
        let grid = &handle(grid, "grid")?.0;
        *out_ptr(out, "out")? = count_petals(grid, field, ring_radius)?;
        Ok(())
    })
}

/// # Safety
/// `report` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vortex_report_free(report: *mut VortexReportHandle) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vortex_report_count(report: *const VortexReportHandle) -> usize {
    report.as_ref().map_or(0, |r| r.0.vortices.len())
}

/// # Safety
/// `report` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_report_get(
    report: *const VortexReportHandle,
    index: usize,
    out: *mut VortexSingularity,
) -> VortexStatus {
    guard(|| {
        let report = &handle(report, "report")?.0;
        let v = report
            .vortices
            .get(index)
            .ok_or(Error::ShapeMismatch { expected: report.vortices.len(), found: index + 1 })?;
        *out_ptr(out, "out")? = VortexSingularity { x: v.x, y: v.y, charge: v.charge };
        Ok(())
    })
}

/// Winding around the grid boundary, or 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vortex_report_total_winding(report: *const VortexReportHandle) -> i32 {
    report.as_ref().map_or(0, |r| r.0.total_winding)
}

/// Petal count, or −1 when none was measured.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vortex_report_petal_count(report: *const VortexReportHandle) -> i64 {
    report
        .as_ref()
        .and_then(|r| r.0.petal_count)
        .map_or(-1, |p| p as i64)
}

/// JSON form of the report. Release it with [`vortex_string_free`].
///
/// # Safety
/// `report` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vortex_report_to_json(report: *const VortexReportHandle, out: *mut *mut c_char) -> VortexStatus {
    guard(|| {
        let report = &handle(report, "report")?.0;
        let out = out_ptr(out, "out")?;
        let text = report.to_json()?;
        *out = CString::new(text).map_err(|e| Failure(VortexStatus::InvalidConfig, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vortex_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a scenario given as JSON and writes its artifacts under `out_dir`.
/// Returns [`VortexStatus::Validity`] when `strict` is set and a guard trips.
///
/// # Safety
/// Both strings must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn vortex_run_scenario(scenario_json: *const c_char, out_dir: *const c_char, strict: bool) -> VortexStatus {
    guard(|| {
        let scenario = Scenario::from_json(&string(scenario_json, "scenario_json")?)?;
        let dir = string(out_dir, "out_dir")?;
        run(&scenario, Path::new(&dir), strict)?;
        Ok(())
    })
}
