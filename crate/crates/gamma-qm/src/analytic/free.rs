//! Free-particle solutions: pure phase waves in the additive coordinate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::GammaFrame;
use crate::grid::Grid1D;
use crate::operators::probability_flux_from_derivative;
use crate::wavefunction::{NormMeasure, Wavefunction1D};

/// φ(x) = exp[±i(k/γ)ln(1+γx)], the continuum solution with E = ħ²k²/2m.
/// The spectrum is independent of γ; only the phase profile deforms.
#[derive(Debug, Clone)]
pub struct FreeWave {
    k: f64,
    sign: f64,
    frame: GammaFrame,
}

impl FreeWave {
    pub fn new(k: f64, sign: i8, frame: GammaFrame) -> Result<Self> {
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::Contract(format!("wave vector must be >= 0, got {k}")));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Contract(format!("sign must be +1 or -1, got {sign}")));
        }
        Ok(Self { k, sign: sign as f64, frame })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn frame(&self) -> &GammaFrame {
        &self.frame
    }

    /// E = ħ²k²/2m, independent of γ.
    pub fn energy(&self) -> f64 {
        let hbar = self.frame.hbar();
        hbar * hbar * self.k * self.k / (2.0 * self.frame.mass())
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        let u = self.frame.coord_to_u(x)?;
        Ok(Complex64::new(0.0, self.sign * self.k * u).exp())
    }

    /// Exact spatial derivative dφ/dx = ±ik/(1+γx)·φ.
    pub fn eval_derivative(&self, x: f64) -> Result<Complex64> {
        let phi = self.eval(x)?;
        Ok(phi * Complex64::new(0.0, self.sign * self.k / self.frame.scale(x)))
    }

    pub fn sample(&self, grid: &Grid1D) -> Result<Wavefunction1D> {
        let mut amplitudes = Vec::with_capacity(grid.len());
        for &x in grid.points() {
            amplitudes.push(self.eval(x)?);
        }
        Wavefunction1D::new(grid.clone(), amplitudes, NormMeasure::Standard)
    }

    /// Probability flux from the exact derivative; equals ±ħk/m everywhere.
    pub fn flux(&self, grid: &Grid1D) -> Result<Vec<f64>> {
        let mut values = Vec::with_capacity(grid.len());
        let mut derivatives = Vec::with_capacity(grid.len());
        for &x in grid.points() {
            values.push(self.eval(x)?);
            derivatives.push(self.eval_derivative(x)?);
        }
        probability_flux_from_derivative(&values, &derivatives, grid, &self.frame)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn frame(gamma: f64) -> GammaFrame {
        GammaFrame::natural(gamma, 0.0, 2.0).unwrap()
    }

    #[test]
    fn pure_phase_everywhere() {
        let wave = FreeWave::new(3.0, 1, frame(0.8)).unwrap();
        let mut x = 0.0;
        while x <= 2.0 {
            assert_relative_eq!(wave.eval(x).unwrap().norm(), 1.0, max_relative = 1e-14);
            x += 0.17;
        }
    }

    #[test]
    fn gamma_zero_is_plane_wave() {
        let k = 2.5;
        let exact = FreeWave::new(k, 1, frame(0.0)).unwrap();
        let nearly = FreeWave::new(k, 1, frame(1e-6)).unwrap();
        let mut x = 0.0;
        while x <= 2.0 {
            let plane = Complex64::new(0.0, k * x).exp();
            assert_abs_diff_eq!((exact.eval(x).unwrap() - plane).norm(), 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!((nearly.eval(x).unwrap() - plane).norm(), 0.0, epsilon = 1e-5);
            x += 0.23;
        }
    }

    #[test]
    fn flux_is_classical_velocity() {
        let k = 1.7;
        for gamma in [-0.4, 0.0, 0.9] {
            let wave = FreeWave::new(k, 1, frame(gamma)).unwrap();
            let grid = Grid1D::uniform(0.0, 2.0, 101).unwrap();
            for j in wave.flux(&grid).unwrap() {
                assert_relative_eq!(j, k, max_relative = 1e-12);
            }
            let backward = FreeWave::new(k, -1, frame(gamma)).unwrap();
            for j in backward.flux(&grid).unwrap() {
                assert_relative_eq!(j, -k, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn energy_independent_of_gamma() {
        let k = 2.0;
        let e0 = FreeWave::new(k, 1, frame(0.0)).unwrap().energy();
        let e1 = FreeWave::new(k, 1, frame(1.5)).unwrap().energy();
        assert_eq!(e0, e1);
        assert_relative_eq!(e0, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(FreeWave::new(-1.0, 1, frame(0.0)).is_err());
        assert!(FreeWave::new(1.0, 0, frame(0.0)).is_err());
        let wave = FreeWave::new(1.0, 1, frame(0.5)).unwrap();
        assert!(wave.eval(5.0).is_err());
    }
}
