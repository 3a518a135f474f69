//! C ABI for the gamma-qm library: opaque frame handles, status codes,
//! caller-owned buffers. The header is generated into include/gamma_qm.h
//! at build time.

use std::os::raw::c_char;

use gamma_qm::analytic::{BarrierSpec, WellSpec};
use gamma_qm::numeric::{
    solve_bound_states, transfer_matrix_transmission, Potential, PotentialSpec,
};
use gamma_qm::{Error, GammaFrame, Grid1D};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqStatus {
    Ok = 0,
    /// A coordinate or parameter crossed the singular point 1 + γx = 0.
    DomainError = 1,
    /// Bad argument: sizes, signs, or contract violations.
    InvalidArgument = 2,
    /// An iterative routine failed to converge.
    NumericsError = 3,
    /// A required pointer was null.
    NullPointer = 4,
    /// The caller-provided buffer is too small.
    BufferTooSmall = 5,
}

fn status_of(err: &Error) -> GqStatus {
    match err {
        Error::Domain(_) => GqStatus::DomainError,
        Error::Numerics(_) => GqStatus::NumericsError,
        _ => GqStatus::InvalidArgument,
    }
}

/// Opaque deformation context: γ, mass, ħ and the valid interval.
pub struct GqFrame {
    inner: GammaFrame,
}

/// Creates a frame; on success writes a heap pointer the caller must
/// release with [`gq_frame_free`].
///
/// # Safety
/// `out` must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn gq_frame_new(
    gamma: f64,
    mass: f64,
    hbar: f64,
    x_lo: f64,
    x_hi: f64,
    out: *mut *mut GqFrame,
) -> GqStatus {
    if out.is_null() {
        return GqStatus::NullPointer;
    }
    match GammaFrame::new(gamma, mass, hbar, x_lo, x_hi) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(GqFrame { inner }));
            GqStatus::Ok
        }
        Err(e) => {
            *out = std::ptr::null_mut();
            status_of(&e)
        }
    }
}

/// Releases a frame created by [`gq_frame_new`]. Null is a no-op.
///
/// # Safety
/// `frame` must be a pointer from [`gq_frame_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gq_frame_free(frame: *mut GqFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

unsafe fn with_frame<'a>(frame: *const GqFrame) -> Option<&'a GammaFrame> {
    frame.as_ref().map(|f| &f.inner)
}

unsafe fn write_result(out: *mut f64, value: Result<f64, Error>) -> GqStatus {
    if out.is_null() {
        return GqStatus::NullPointer;
    }
    match value {
        Ok(v) => {
            *out = v;
            GqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Deformed exponential [1 + γx]^(1/γ); exp(x) in the γ → 0 limit.
///
/// # Safety
/// `out` must point to writable storage for one f64.
#[no_mangle]
pub unsafe extern "C" fn gq_qexp(gamma: f64, x: f64, out: *mut f64) -> GqStatus {
    write_result(out, gamma_qm::qexp(gamma, x))
}

/// Non-additive displacement composition dx1 + dx2 + γ·dx1·dx2.
#[no_mangle]
pub extern "C" fn gq_compose_displacements(dx1: f64, dx2: f64, gamma: f64) -> f64 {
    gamma_qm::compose_displacements(dx1, dx2, gamma)
}

/// x → x + a + γ·a·x, validated against the frame domain.
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_translate_point(
    frame: *const GqFrame,
    x: f64,
    a: f64,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(out, f.translate_point(x, a))
}

/// Inverse displacement (x − dx)/(1 + γ·dx).
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_inverse_translate(
    frame: *const GqFrame,
    x: f64,
    dx: f64,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(out, f.inverse_translate(x, dx))
}

/// Additive coordinate u(x) = ln(1 + γx)/γ.
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_coord_to_u(
    frame: *const GqFrame,
    x: f64,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(out, f.coord_to_u(x))
}

/// Inverse map x(u) = (e^(γu) − 1)/γ.
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_coord_to_x(
    frame: *const GqFrame,
    u: f64,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(out, f.coord_to_x(u))
}

/// Position-dependent effective mass m/(1 + γx)².
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_effective_mass(
    frame: *const GqFrame,
    x: f64,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(out, f.effective_mass(x))
}

/// Quantized wave vector k_n = nπγ/ln(1+γL) of the infinite well [0, L].
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_well_wave_vector(
    frame: *const GqFrame,
    length: f64,
    n: usize,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(
        out,
        WellSpec::new(length, f.clone()).and_then(|w| w.wave_vector(n)),
    )
}

/// Well level E_n = ħ²n²π²γ²/(2m ln²(1+γL)).
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_well_energy(
    frame: *const GqFrame,
    length: f64,
    n: usize,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(out, WellSpec::new(length, f.clone()).and_then(|w| w.energy(n)))
}

/// Closed-form average position of the n-th well state.
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_well_mean_x(
    frame: *const GqFrame,
    length: f64,
    n: usize,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(out, WellSpec::new(length, f.clone()).and_then(|w| w.mean_x(n)))
}

/// Samples the normalized well eigenfunction φ_n at `len` positions.
///
/// # Safety
/// `xs` and `out` must point to `len` readable/writable f64 respectively.
#[no_mangle]
pub unsafe extern "C" fn gq_well_wavefunction(
    frame: *const GqFrame,
    length: f64,
    n: usize,
    xs: *const f64,
    len: usize,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    if xs.is_null() || out.is_null() {
        return GqStatus::NullPointer;
    }
    let well = match WellSpec::new(length, f.clone()) {
        Ok(w) => w,
        Err(e) => return status_of(&e),
    };
    let xs = std::slice::from_raw_parts(xs, len);
    let out = std::slice::from_raw_parts_mut(out, len);
    for (o, &x) in out.iter_mut().zip(xs) {
        match well.eval(n, x) {
            Ok(v) => *o = v,
            Err(e) => return status_of(&e),
        }
    }
    GqStatus::Ok
}

/// Closed-form barrier transmission for a barrier of height v0 on
/// [0, width].
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_barrier_transmission(
    frame: *const GqFrame,
    v0: f64,
    width: f64,
    energy: f64,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(
        out,
        BarrierSpec::new(v0, width, f.clone()).and_then(|b| b.transmission(energy)),
    )
}

/// Transfer-matrix transmission; agrees with the closed form to 1e-10.
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gq_transfer_matrix_transmission(
    frame: *const GqFrame,
    v0: f64,
    width: f64,
    energy: f64,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    write_result(
        out,
        BarrierSpec::new(v0, width, f.clone())
            .and_then(|b| transfer_matrix_transmission(energy, &b)),
    )
}

/// Numeric bound-state energies of the infinite well on [0, L], written
/// into `out_energies` (capacity must be at least `n_states`).
///
/// # Safety
/// `frame` from [`gq_frame_new`]; `out_energies` must have room for
/// `capacity` f64.
#[no_mangle]
pub unsafe extern "C" fn gq_solve_well_energies(
    frame: *const GqFrame,
    length: f64,
    n_states: usize,
    n_grid: usize,
    out_energies: *mut f64,
    capacity: usize,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    if out_energies.is_null() {
        return GqStatus::NullPointer;
    }
    if capacity < n_states {
        return GqStatus::BufferTooSmall;
    }
    let run = || -> Result<Vec<f64>, Error> {
        let spec = PotentialSpec::new(Potential::InfiniteWell { length }, f.clone())?;
        Ok(solve_bound_states(&spec, n_states, n_grid)?.energies)
    };
    match run() {
        Ok(energies) => {
            let out = std::slice::from_raw_parts_mut(out_energies, n_states);
            out.copy_from_slice(&energies);
            GqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Samples the probability flux of the forward free wave with the exact
/// derivative; the values equal ħk/m everywhere.
///
/// # Safety
/// `xs` and `out` must point to `len` readable/writable f64; `xs`
/// ascending with at least 3 entries.
#[no_mangle]
pub unsafe extern "C" fn gq_free_wave_flux(
    frame: *const GqFrame,
    k: f64,
    xs: *const f64,
    len: usize,
    out: *mut f64,
) -> GqStatus {
    let Some(f) = with_frame(frame) else {
        return GqStatus::NullPointer;
    };
    if xs.is_null() || out.is_null() {
        return GqStatus::NullPointer;
    }
    let xs = std::slice::from_raw_parts(xs, len);
    let run = || -> Result<Vec<f64>, Error> {
        let grid = Grid1D::from_points(xs.to_vec())?;
        let wave = gamma_qm::analytic::FreeWave::new(k, 1, f.clone())?;
        wave.flux(&grid)
    };
    match run() {
        Ok(flux) => {
            std::slice::from_raw_parts_mut(out, len).copy_from_slice(&flux);
            GqStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

const MESSAGES: [&str; 6] = [
    "ok\0",
    "domain violation: 1 + gamma*x must stay positive\0",
    "invalid argument\0",
    "numerics failure\0",
    "null pointer\0",
    "buffer too small\0",
];

/// Static description of a status code; never needs freeing.
#[no_mangle]
pub extern "C" fn gq_status_message(status: GqStatus) -> *const c_char {
    MESSAGES[status as usize].as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_lifecycle_and_values() {
        unsafe {
            let mut frame: *mut GqFrame = std::ptr::null_mut();
            assert_eq!(gq_frame_new(0.5, 1.0, 1.0, 0.0, 1.0, &mut frame), GqStatus::Ok);
            let mut e1 = 0.0;
            assert_eq!(gq_well_energy(frame, 1.0, 1, &mut e1), GqStatus::Ok);
            assert!((e1 - 7.504_172_066_822_726).abs() < 1e-12);
            gq_frame_free(frame);

            // flat frame for the tunneling oracle value
            let mut flat: *mut GqFrame = std::ptr::null_mut();
            assert_eq!(gq_frame_new(0.0, 1.0, 1.0, -0.5, 1.5, &mut flat), GqStatus::Ok);
            let mut t = 0.0;
            assert_eq!(gq_barrier_transmission(flat, 18.0, 1.0, 9.0, &mut t), GqStatus::Ok);
            assert!((t - 8.256_001_834_194_439e-4).abs() < 1e-12);
            gq_frame_free(flat);
        }
    }

    #[test]
    fn error_codes_surface() {
        unsafe {
            let mut frame: *mut GqFrame = std::ptr::null_mut();
            // domain touching the singular point
            assert_eq!(
                gq_frame_new(1.0, 1.0, 1.0, -1.0, 1.0, &mut frame),
                GqStatus::DomainError
            );
            assert!(frame.is_null());
            assert_eq!(
                gq_frame_new(0.0, -1.0, 1.0, 0.0, 1.0, &mut frame),
                GqStatus::InvalidArgument
            );
            let mut out = 0.0;
            assert_eq!(gq_qexp(1.0, -1.0, &mut out), GqStatus::DomainError);
            assert_eq!(
                gq_translate_point(std::ptr::null(), 0.0, 0.0, &mut out),
                GqStatus::NullPointer
            );
        }
    }

    #[test]
    fn buffer_guard() {
        unsafe {
            let mut frame: *mut GqFrame = std::ptr::null_mut();
            assert_eq!(gq_frame_new(0.5, 1.0, 1.0, 0.0, 1.0, &mut frame), GqStatus::Ok);
            let mut buf = [0.0; 2];
            assert_eq!(
                gq_solve_well_energies(frame, 1.0, 3, 400, buf.as_mut_ptr(), 2),
                GqStatus::BufferTooSmall
            );
            gq_frame_free(frame);
        }
    }
}
