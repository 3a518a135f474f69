//! Complex amplitudes on a grid, tagged with their normalization measure.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::GammaFrame;
use crate::grid::Grid1D;
use crate::quadrature::quadrature;

/// Which weight the state is normalized against. The standard measure dx is
/// the one used for position averages; the deformed measure dx/(1 + γx) is
/// the one conserved by the modified continuity equation. The two coexist
/// and are never converted silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMeasure {
    Standard,
    Deformed,
}

#[derive(Debug, Clone)]
pub struct Wavefunction1D {
    grid: Grid1D,
    amplitudes: Vec<Complex64>,
    measure: NormMeasure,
}

impl Wavefunction1D {
    pub fn new(grid: Grid1D, amplitudes: Vec<Complex64>, measure: NormMeasure) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Contract("amplitudes must be finite".into()));
        }
        Ok(Self { grid, amplitudes, measure })
    }

    pub fn from_fn<F>(grid: Grid1D, measure: NormMeasure, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        let amplitudes = grid.points().iter().map(|&x| f(x)).collect();
        Self::new(grid, amplitudes, measure)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn measure(&self) -> NormMeasure {
        self.measure
    }

    /// |ψ|² sampled on the grid.
    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Norm under the tagged measure: sqrt(∫|ψ|² w dx).
    pub fn norm(&self, frame: &GammaFrame) -> Result<f64> {
        let n2 = quadrature(&self.density(), &self.grid, self.measure, frame)?;
        Ok(n2.sqrt())
    }

    /// Rescales so the tagged-measure norm becomes 1.
    pub fn normalize(&mut self, frame: &GammaFrame) -> Result<()> {
        let n = self.norm(frame)?;
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::Numerics(format!("cannot normalize: norm = {n}")));
        }
        let inv = 1.0 / n;
        for a in &mut self.amplitudes {
            *a *= inv;
        }
        Ok(())
    }

    pub fn is_normalized(&self, frame: &GammaFrame, tol: f64) -> Result<bool> {
        Ok((self.norm(frame)? - 1.0).abs() <= tol)
    }
}
