//! The 1D infinite well in the deformed frame.
//!
//! Boundary conditions φ(0) = φ(L) = 0 quantize the wave vector against the
//! effective length L′ = ln(1+γL)/γ, so the whole γ-dependence of the
//! spectrum rides on a dilated or contracted box.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::frame::GammaFrame;
use crate::grid::Grid1D;
use crate::wavefunction::{NormMeasure, Wavefunction1D};

/// Infinite well of width `length` starting at x = 0.
#[derive(Debug, Clone)]
pub struct WellSpec {
    length: f64,
    frame: GammaFrame,
}

/// Sorted bound-state energies with their standard-measure-normalized states.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    pub energies: Vec<f64>,
    pub states: Vec<Wavefunction1D>,
    pub labels: Vec<usize>,
}

impl WellSpec {
    pub fn new(length: f64, frame: GammaFrame) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Contract(format!("well length must be positive, got {length}")));
        }
        if !frame.contains(0.0) || !frame.contains(length) {
            return Err(Error::Domain(format!(
                "frame domain {:?} must cover the well [0, {length}]",
                frame.domain()
            )));
        }
        Ok(Self { length, frame })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn frame(&self) -> &GammaFrame {
        &self.frame
    }

    /// Effective well length L′ = ln(1+γL)/γ; strictly decreasing in γ.
    pub fn effective_length(&self) -> f64 {
        self.frame
            .coord_to_u(self.length)
            .expect("validated at construction")
    }

    fn require_level(&self, n: usize) -> Result<()> {
        if n < 1 {
            return Err(Error::Contract("quantum number n starts at 1".into()));
        }
        Ok(())
    }

    /// Quantized wave vector k_n = nπγ/ln(1+γL) = nπ/L′.
    pub fn wave_vector(&self, n: usize) -> Result<f64> {
        self.require_level(n)?;
        Ok(n as f64 * PI / self.effective_length())
    }

    /// E_n = ħ²k_n²/2m = ħ²n²π²γ²/(2m ln²(1+γL)).
    pub fn energy(&self, n: usize) -> Result<f64> {
        let k = self.wave_vector(n)?;
        let hbar = self.frame.hbar();
        Ok(hbar * hbar * k * k / (2.0 * self.frame.mass()))
    }

    /// Standard-measure normalization constant
    /// A_n = sqrt((γ² + 4k_n²)/(2Lk_n²)); reduces to sqrt(2/L) at γ = 0.
    pub fn norm_constant(&self, n: usize) -> Result<f64> {
        let k = self.wave_vector(n)?;
        let g = self.frame.gamma();
        Ok(((g * g + 4.0 * k * k) / (2.0 * self.length * k * k)).sqrt())
    }

    /// φ_n(x) = A_n sin[(k_n/γ)ln(1+γx)] inside the well, 0 outside.
    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        let k = self.wave_vector(n)?;
        if x <= 0.0 || x >= self.length {
            return Ok(0.0);
        }
        let u = self.frame.coord_to_u(x)?;
        Ok(self.norm_constant(n)? * (k * u).sin())
    }

    /// Samples φ_n on a grid contained in [0, L]; tagged standard measure.
    pub fn wavefunction(&self, n: usize, grid: &Grid1D) -> Result<Wavefunction1D> {
        self.require_level(n)?;
        if grid.first() < 0.0 || grid.last() > self.length {
            return Err(Error::Grid(format!(
                "grid [{}, {}] leaves the well [0, {}]",
                grid.first(),
                grid.last(),
                self.length
            )));
        }
        let k = self.wave_vector(n)?;
        let a_n = self.norm_constant(n)?;
        let mut amplitudes = Vec::with_capacity(grid.len());
        for &x in grid.points() {
            let v = if x <= 0.0 || x >= self.length {
                0.0
            } else {
                a_n * (k * self.frame.coord_to_u(x)?).sin()
            };
            amplitudes.push(Complex64::new(v, 0.0));
        }
        Wavefunction1D::new(grid.clone(), amplitudes, NormMeasure::Standard)
    }

    /// Closed-form average position
    /// ⟨x⟩ = (L/2)[(γ²+4k_n²)/(4(γ²+k_n²)) − (3/2)γ/(L(γ²+k_n²))].
    pub fn mean_x(&self, n: usize) -> Result<f64> {
        let k = self.wave_vector(n)?;
        let g = self.frame.gamma();
        let k2 = k * k;
        let g2 = g * g;
        let first = (g2 + 4.0 * k2) / (4.0 * (g2 + k2));
        let second = 1.5 * g / (self.length * (g2 + k2));
        Ok(0.5 * self.length * (first - second))
    }

    /// The first `count` levels sampled on `grid`, as an [`EigenSolution`].
    pub fn solve(&self, count: usize, grid: &Grid1D) -> Result<EigenSolution> {
        let mut energies = Vec::with_capacity(count);
        let mut states = Vec::with_capacity(count);
        let mut labels = Vec::with_capacity(count);
        for n in 1..=count {
            energies.push(self.energy(n)?);
            states.push(self.wavefunction(n, grid)?);
            labels.push(n);
        }
        Ok(EigenSolution { energies, states, labels })
    }
}
