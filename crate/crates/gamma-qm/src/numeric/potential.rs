//! Potentials accepted by the numerical engine.

use crate::error::{Error, Result};
use crate::frame::GammaFrame;
use crate::grid::Grid1D;

/// Potential shape; the frame supplies γ, mass, ħ and the domain.
#[derive(Debug, Clone)]
pub enum Potential {
    Null,
    /// Infinite well on [0, L]: Dirichlet walls, V = 0 inside.
    InfiniteWell { length: f64 },
    /// V0 on [0, width], 0 elsewhere.
    RectangularBarrier { v0: f64, width: f64 },
    /// Piecewise-linear interpolation through sampled values.
    Tabulated { grid: Grid1D, values: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct PotentialSpec {
    pub potential: Potential,
    pub frame: GammaFrame,
}

impl PotentialSpec {
    pub fn new(potential: Potential, frame: GammaFrame) -> Result<Self> {
        match &potential {
            Potential::Null => {}
            Potential::InfiniteWell { length } => {
                if !(length.is_finite() && *length > 0.0) {
                    return Err(Error::Contract(format!(
                        "well length must be positive, got {length}"
                    )));
                }
                if !frame.contains(0.0) || !frame.contains(*length) {
                    return Err(Error::Domain(format!(
                        "frame domain {:?} must cover the well [0, {length}]",
                        frame.domain()
                    )));
                }
            }
            Potential::RectangularBarrier { v0, width } => {
                if !(v0.is_finite() && *v0 > 0.0) || !(width.is_finite() && *width > 0.0) {
                    return Err(Error::Contract(format!(
                        "barrier needs positive height and width, got V0 = {v0}, width = {width}"
                    )));
                }
                if !frame.contains(0.0) || !frame.contains(*width) {
                    return Err(Error::Domain(format!(
                        "frame domain {:?} must cover the barrier [0, {width}]",
                        frame.domain()
                    )));
                }
            }
            Potential::Tabulated { grid, values } => {
                if values.len() != grid.len() {
                    return Err(Error::LengthMismatch {
                        expected: grid.len(),
                        got: values.len(),
                    });
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Contract("tabulated values must be finite".into()));
                }
                grid.validate_in(&frame)?;
            }
        }
        Ok(Self { potential, frame })
    }

    /// Interval the bound-state solver discretizes: the well itself, or the
    /// whole frame domain (box truncation) for everything else.
    pub fn solve_interval(&self) -> (f64, f64) {
        match &self.potential {
            Potential::InfiniteWell { length } => (0.0, *length),
            _ => self.frame.domain(),
        }
    }

    /// V(x); well interiors are 0, the walls being boundary conditions.
    pub fn eval(&self, x: f64) -> f64 {
        match &self.potential {
            Potential::Null | Potential::InfiniteWell { .. } => 0.0,
            Potential::RectangularBarrier { v0, width } => {
                if x >= 0.0 && x <= *width {
                    *v0
                } else {
                    0.0
                }
            }
            Potential::Tabulated { grid, values } => {
                let xs = grid.points();
                if x <= xs[0] {
                    return values[0];
                }
                if x >= xs[xs.len() - 1] {
                    return values[values.len() - 1];
                }
                let j = xs.partition_point(|&p| p <= x).min(xs.len() - 1);
                let (x0, x1) = (xs[j - 1], xs[j]);
                let w = (x - x0) / (x1 - x0);
                values[j - 1] * (1.0 - w) + values[j] * w
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn barrier_profile() {
        let frame = GammaFrame::natural(0.0, -2.0, 3.0).unwrap();
        let spec = PotentialSpec::new(
            Potential::RectangularBarrier { v0: 4.0, width: 1.0 },
            frame,
        )
        .unwrap();
        assert_eq!(spec.eval(-0.5), 0.0);
        assert_eq!(spec.eval(0.5), 4.0);
        assert_eq!(spec.eval(2.0), 0.0);
    }

    #[test]
    fn tabulated_interpolates() {
        let frame = GammaFrame::natural(0.0, 0.0, 2.0).unwrap();
        let grid = Grid1D::from_points(vec![0.0, 1.0, 2.0]).unwrap();
        let spec = PotentialSpec::new(
            Potential::Tabulated { grid, values: vec![0.0, 2.0, 0.0] },
            frame,
        )
        .unwrap();
        assert_relative_eq!(spec.eval(0.5), 1.0, max_relative = 1e-14);
        assert_relative_eq!(spec.eval(1.5), 1.0, max_relative = 1e-14);
        assert_eq!(spec.eval(-1.0), 0.0);
    }

    #[test]
    fn rejects_mismatched_table() {
        let frame = GammaFrame::natural(0.0, 0.0, 2.0).unwrap();
        let grid = Grid1D::from_points(vec![0.0, 1.0, 2.0]).unwrap();
        assert!(PotentialSpec::new(
            Potential::Tabulated { grid, values: vec![0.0, 2.0] },
            frame,
        )
        .is_err());
    }
}
