//! Rectangular-barrier scattering in the deformed frame.
//!
//! The matching happens in the additive coordinate u = ln(1+γx)/γ, where
//! the solutions are plane waves; the barrier occupies [0, a′] there with
//! a′ = ln(1+γa)/γ. Growing γ shrinks a′, which is why transmission rises
//! with γ at fixed energy.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::frame::GammaFrame;

/// Relative window around V0 routed to the E = V0 limit expressions.
const ENERGY_EQUAL_V0_EPS: f64 = 1e-12;

/// Barrier of height `v0` on x ∈ [0, `width`].
#[derive(Debug, Clone)]
pub struct BarrierSpec {
    v0: f64,
    width: f64,
    frame: GammaFrame,
}

/// Matching amplitudes of the piecewise wave: incident 1, reflected r,
/// interior A e^{iqu} + B e^{−iqu}, transmitted t.
#[derive(Debug, Clone, Copy)]
pub struct BarrierCoefficients {
    pub r: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub t: Complex64,
}

/// Sampled transmission data: (E/V0, T) pairs with T in (0, 1].
#[derive(Debug, Clone)]
pub struct TransmissionCurve {
    pub ratios: Vec<f64>,
    pub transmission: Vec<f64>,
}

impl BarrierSpec {
    pub fn new(v0: f64, width: f64, frame: GammaFrame) -> Result<Self> {
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::Contract(format!("barrier height must be positive, got {v0}")));
        }
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::Contract(format!("barrier width must be positive, got {width}")));
        }
        if !frame.contains(0.0) || !frame.contains(width) {
            return Err(Error::Domain(format!(
                "frame domain {:?} must cover the barrier [0, {width}]",
                frame.domain()
            )));
        }
        Ok(Self { v0, width, frame })
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn frame(&self) -> &GammaFrame {
        &self.frame
    }

    /// Effective barrier width a′ = ln(1+γa)/γ.
    pub fn effective_width(&self) -> f64 {
        self.frame
            .coord_to_u(self.width)
            .expect("validated at construction")
    }

    fn require_energy(&self, energy: f64) -> Result<()> {
        if !(energy.is_finite() && energy > 0.0) {
            return Err(Error::Contract(format!("energy must be positive, got {energy}")));
        }
        Ok(())
    }

    /// Incident wave vector k = sqrt(2mE)/ħ.
    pub fn wave_vector(&self, energy: f64) -> Result<f64> {
        self.require_energy(energy)?;
        Ok((2.0 * self.frame.mass() * energy).sqrt() / self.frame.hbar())
    }

    /// Closed-form transmission probability:
    /// T⁻¹ = 1 + V0²sin²(qa′)/(4E(E−V0)) above the barrier,
    /// T⁻¹ = 1 + V0²sinh²(κa′)/(4E(V0−E)) below, and the removable limit
    /// T⁻¹ = 1 + mV0a′²/(2ħ²) exactly at E = V0.
    pub fn transmission(&self, energy: f64) -> Result<f64> {
        self.require_energy(energy)?;
        let ap = self.effective_width();
        let m = self.frame.mass();
        let hbar = self.frame.hbar();
        let v0 = self.v0;
        let t_inv = if (energy - v0).abs() <= ENERGY_EQUAL_V0_EPS * v0 {
            1.0 + m * v0 * ap * ap / (2.0 * hbar * hbar)
        } else if energy > v0 {
            let q = (2.0 * m * (energy - v0)).sqrt() / hbar;
            let s = (q * ap).sin();
            1.0 + v0 * v0 * s * s / (4.0 * energy * (energy - v0))
        } else {
            let kappa = (2.0 * m * (v0 - energy)).sqrt() / hbar;
            let s = (kappa * ap).sinh();
            1.0 + v0 * v0 * s * s / (4.0 * energy * (v0 - energy))
        };
        Ok(1.0 / t_inv)
    }

    /// Samples T over energy ratios E/V0, validating 0 < T ≤ 1.
    pub fn transmission_curve(&self, ratios: &[f64]) -> Result<TransmissionCurve> {
        let mut transmission = Vec::with_capacity(ratios.len());
        for &r in ratios {
            let t = self.transmission(r * self.v0)?;
            if !(t > 0.0 && t <= 1.0) {
                return Err(Error::Numerics(format!(
                    "transmission {t} outside (0, 1] at E/V0 = {r}"
                )));
            }
            transmission.push(t);
        }
        Ok(TransmissionCurve { ratios: ratios.to_vec(), transmission })
    }

    /// Energy of the j-th transparency resonance, where qa′ = jπ.
    pub fn resonance_energy(&self, j: usize) -> Result<f64> {
        if j < 1 {
            return Err(Error::Contract("resonance index starts at 1".into()));
        }
        let ap = self.effective_width();
        let hbar = self.frame.hbar();
        let q = j as f64 * PI / ap;
        Ok(self.v0 + hbar * hbar * q * q / (2.0 * self.frame.mass()))
    }

    /// Solves the 4×4 continuity system (value and slope at u = 0 and
    /// u = a′) for the matching amplitudes. Below the barrier q is
    /// imaginary and the interior waves become evanescent.
    pub fn coefficients(&self, energy: f64) -> Result<BarrierCoefficients> {
        self.require_energy(energy)?;
        if (energy - self.v0).abs() <= ENERGY_EQUAL_V0_EPS * self.v0 {
            return Err(Error::Contract(
                "coefficients undefined at E = V0; use transmission for the limit value".into(),
            ));
        }
        let ap = self.effective_width();
        let m = self.frame.mass();
        let hbar = self.frame.hbar();
        let k = Complex64::new(self.wave_vector(energy)?, 0.0);
        let q2 = 2.0 * m * (energy - self.v0) / (hbar * hbar);
        let q = Complex64::new(q2, 0.0).sqrt(); // iκ below the barrier
        let i = Complex64::new(0.0, 1.0);

        let e_q_plus = (i * q * ap).exp();
        let e_q_minus = (-i * q * ap).exp();
        let e_k = (i * k * ap).exp();
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);

        // unknowns ordered (r, A, B, t)
        let mut rows = [
            [one, -one, -one, zero, -one],
            [-i * k, -i * q, i * q, zero, -i * k],
            [zero, e_q_plus, e_q_minus, -e_k, zero],
            [zero, i * q * e_q_plus, -i * q * e_q_minus, -i * k * e_k, zero],
        ];
        let sol = solve4(&mut rows)?;
        Ok(BarrierCoefficients { r: sol[0], a: sol[1], b: sol[2], t: sol[3] })
    }
}

/// Gaussian elimination with partial pivoting on a 4×5 augmented system.
fn solve4(rows: &mut [[Complex64; 5]; 4]) -> Result<[Complex64; 4]> {
    for col in 0..4 {
        let pivot_row = (col..4)
            .max_by(|&a, &b| {
                rows[a][col]
                    .norm()
                    .partial_cmp(&rows[b][col].norm())
                    .expect("finite entries")
            })
            .unwrap();
        if rows[pivot_row][col].norm() < 1e-300 {
            return Err(Error::Numerics("singular matching system".into()));
        }
        rows.swap(col, pivot_row);
        let pivot = rows[col][col];
        let (upper, lower) = rows.split_at_mut(col + 1);
        let lead = &upper[col];
        for row in lower {
            let factor = row[col] / pivot;
            for (dst, src) in row[col..].iter_mut().zip(&lead[col..]) {
                *dst -= *src * factor;
            }
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 4];
    for row in (0..4).rev() {
        let mut acc = rows[row][4];
        for c in row + 1..4 {
            acc -= rows[row][c] * x[c];
        }
        x[row] = acc / rows[row][row];
    }
    Ok(x)
}
