//! Product states of the 2D infinite well. Other directions commute with
//! the deformed x-translation, so Φ(x,y) = φ_nx(x)·φ_ny(y) and the density
//! factorizes.

use crate::error::Result;
use crate::grid::Grid1D;

use super::well::WellSpec;

/// Probability density ρ(x, y) sampled on a tensor grid; values stored
/// row-major with y as the slow index: `values[iy * nx + ix]`.
#[derive(Debug, Clone)]
pub struct Density2D {
    pub grid_x: Grid1D,
    pub grid_y: Grid1D,
    pub values: Vec<f64>,
}

impl Density2D {
    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.grid_x.len() + ix]
    }

    /// Grid coordinates of the density maximum.
    pub fn argmax(&self) -> (f64, f64) {
        let nx = self.grid_x.len();
        let mut best = (0usize, 0usize);
        let mut best_v = f64::NEG_INFINITY;
        for (idx, &v) in self.values.iter().enumerate() {
            if v > best_v {
                best_v = v;
                best = (idx % nx, idx / nx);
            }
        }
        (self.grid_x.points()[best.0], self.grid_y.points()[best.1])
    }

    /// 2D composite trapezoid of the density; 1 for a normalized state.
    pub fn total_mass(&self) -> f64 {
        self.cell_mass(0, self.grid_x.len() - 1, 0, self.grid_y.len() - 1)
    }

    /// Trapezoid integral over the sub-rectangle of grid indices
    /// [ix_lo, ix_hi] × [iy_lo, iy_hi].
    pub fn cell_mass(&self, ix_lo: usize, ix_hi: usize, iy_lo: usize, iy_hi: usize) -> f64 {
        let xs = self.grid_x.points();
        let ys = self.grid_y.points();
        // integrate along x for each row, then along y
        let mut row_integrals = Vec::with_capacity(iy_hi - iy_lo + 1);
        for iy in iy_lo..=iy_hi {
            let mut acc = 0.0;
            for ix in ix_lo..ix_hi {
                acc += 0.5
                    * (xs[ix + 1] - xs[ix])
                    * (self.value(ix, iy) + self.value(ix + 1, iy));
            }
            row_integrals.push(acc);
        }
        let mut total = 0.0;
        for iy in iy_lo..iy_hi {
            total += 0.5
                * (ys[iy + 1] - ys[iy])
                * (row_integrals[iy - iy_lo] + row_integrals[iy + 1 - iy_lo]);
        }
        total
    }
}

/// ρ(x,y) = |φ_nx(x)|²·|φ_ny(y)|² for a 2D box with independent wells per
/// axis.
pub fn well2d_density(
    nx: usize,
    ny: usize,
    spec_x: &WellSpec,
    spec_y: &WellSpec,
    grid_x: &Grid1D,
    grid_y: &Grid1D,
) -> Result<Density2D> {
    let phi_x = spec_x.wavefunction(nx, grid_x)?;
    let phi_y = spec_y.wavefunction(ny, grid_y)?;
    let rho_x = phi_x.density();
    let rho_y = phi_y.density();
    let mut values = Vec::with_capacity(rho_x.len() * rho_y.len());
    for &ry in &rho_y {
        for &rx in &rho_x {
            values.push(rx * ry);
        }
    }
    Ok(Density2D {
        grid_x: grid_x.clone(),
        grid_y: grid_y.clone(),
        values,
    })
}
