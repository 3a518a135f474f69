//! Transfer-matrix scattering across the barrier in the additive
//! coordinate, independent of the closed-form transmission expression.
//!
//! Piecewise-constant regions propagate (φ, φ′) with the Wronskian-exact
//! matrix [[cos qd, sin(qd)/q], [−q·sin qd, cos qd]]; q² < 0 turns the
//! entries into their hyperbolic counterparts and q² → 0 into the linear
//! slab, all through one series-guarded evaluation.

use num_complex::Complex64;

use crate::analytic::BarrierSpec;
use crate::error::Result;

/// 2×2 real propagation matrix over one constant-q² slab.
#[derive(Debug, Clone, Copy)]
pub struct PropagationMatrix {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl PropagationMatrix {
    /// Builds the slab matrix for φ″ = −q²φ over width d. `q2` may be
    /// negative (evanescent) or zero (linear limit).
    pub fn slab(q2: f64, d: f64) -> Self {
        let z = q2 * d * d;
        let (c, s_over) = if z.abs() < 1e-8 {
            // series of cos(√z) and sin(√z)/√z in z, valid for both signs
            (
                1.0 - z / 2.0 + z * z / 24.0,
                d * (1.0 - z / 6.0 + z * z / 120.0),
            )
        } else if q2 > 0.0 {
            let q = q2.sqrt();
            ((q * d).cos(), (q * d).sin() / q)
        } else {
            let kappa = (-q2).sqrt();
            ((kappa * d).cosh(), (kappa * d).sinh() / kappa)
        };
        Self { m11: c, m12: s_over, m21: -q2 * s_over, m22: c }
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }
}

/// Reflection and transmission amplitudes (r, t) from matching plane waves
/// e^{±iku} outside the barrier to the propagated (φ, φ′) pair.
pub fn transfer_matrix_amplitudes(
    energy: f64,
    spec: &BarrierSpec,
) -> Result<(Complex64, Complex64)> {
    let k = spec.wave_vector(energy)?;
    let frame = spec.frame();
    let ap = spec.effective_width();
    let m = frame.mass();
    let hbar = frame.hbar();
    let q2 = 2.0 * m * (energy - spec.v0()) / (hbar * hbar);
    let p = PropagationMatrix::slab(q2, ap);

    let i = Complex64::new(0.0, 1.0);
    let ik = i * k;
    // matching: t e^{ika′}(1, ik) = P · (1 + r, ik(1 − r))
    let x = Complex64::new(p.m21, 0.0) - ik * p.m11;
    let y = Complex64::new(p.m22, 0.0) - ik * p.m12;
    let r = -(x + ik * y) / (x - ik * y);
    let one = Complex64::new(1.0, 0.0);
    let t = (-ik * ap).exp() * (p.m11 * (one + r) + ik * p.m12 * (one - r));
    Ok((r, t))
}

/// T = |t|² from the transfer-matrix route.
pub fn transfer_matrix_transmission(energy: f64, spec: &BarrierSpec) -> Result<f64> {
    let (_, t) = transfer_matrix_amplitudes(energy, spec)?;
    Ok(t.norm_sqr())
}
