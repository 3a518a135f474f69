//! Composite trapezoid quadrature under the standard and deformed measures.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::GammaFrame;
use crate::grid::Grid1D;
use crate::wavefunction::NormMeasure;

fn weight(measure: NormMeasure, frame: &GammaFrame, x: f64) -> f64 {
    match measure {
        NormMeasure::Standard => 1.0,
        NormMeasure::Deformed => 1.0 / frame.scale(x),
    }
}

/// ∫ values(x)·w(x) dx by the composite trapezoid rule; w = 1 for the
/// standard measure, w = 1/(1 + γx) for the deformed one. Handles
/// non-uniform grids.
pub fn quadrature(
    values: &[f64],
    grid: &Grid1D,
    measure: NormMeasure,
    frame: &GammaFrame,
) -> Result<f64> {
    if values.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            got: values.len(),
        });
    }
    let xs = grid.points();
    let mut acc = 0.0;
    for i in 0..xs.len() - 1 {
        let fa = values[i] * weight(measure, frame, xs[i]);
        let fb = values[i + 1] * weight(measure, frame, xs[i + 1]);
        acc += 0.5 * (xs[i + 1] - xs[i]) * (fa + fb);
    }
    Ok(acc)
}

/// Trapezoid rule for complex integrands, same weights as [`quadrature`].
pub fn quadrature_complex(
    values: &[Complex64],
    grid: &Grid1D,
    measure: NormMeasure,
    frame: &GammaFrame,
) -> Result<Complex64> {
    if values.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            got: values.len(),
        });
    }
    let xs = grid.points();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..xs.len() - 1 {
        let fa = values[i] * weight(measure, frame, xs[i]);
        let fb = values[i + 1] * weight(measure, frame, xs[i + 1]);
        acc += 0.5 * (xs[i + 1] - xs[i]) * (fa + fb);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constant_standard_measure() {
        let frame = GammaFrame::natural(0.5, 0.0, 1.0).unwrap();
        let grid = Grid1D::uniform(0.0, 1.0, 11).unwrap();
        let v = vec![1.0; 11];
        // trapezoid is exact for constants
        assert_relative_eq!(
            quadrature(&v, &grid, NormMeasure::Standard, &frame).unwrap(),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn constant_deformed_measure_matches_closed_form() {
        // ∫0^1 dx/(1+0.5x) = ln(1.5)/0.5
        let frame = GammaFrame::natural(0.5, 0.0, 1.0).unwrap();
        let grid = Grid1D::uniform(0.0, 1.0, 4001).unwrap();
        let v = vec![1.0; grid.len()];
        assert_relative_eq!(
            quadrature(&v, &grid, NormMeasure::Deformed, &frame).unwrap(),
            0.810_930_216_216_328_8,
            max_relative = 1e-8
        );
    }

    #[test]
    fn length_mismatch_rejected() {
        let frame = GammaFrame::natural(0.0, 0.0, 1.0).unwrap();
        let grid = Grid1D::uniform(0.0, 1.0, 11).unwrap();
        assert!(quadrature(&[1.0; 10], &grid, NormMeasure::Standard, &frame).is_err());
    }

    #[test]
    fn complex_matches_real_parts() {
        let frame = GammaFrame::natural(0.3, 0.0, 1.0).unwrap();
        let grid = Grid1D::uniform(0.0, 1.0, 101).unwrap();
        let re: Vec<f64> = grid.points().iter().map(|x| x.sin()).collect();
        let im: Vec<f64> = grid.points().iter().map(|x| x.cos()).collect();
        let cz: Vec<Complex64> = re
            .iter()
            .zip(&im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        let z = quadrature_complex(&cz, &grid, NormMeasure::Deformed, &frame).unwrap();
        let zr = quadrature(&re, &grid, NormMeasure::Deformed, &frame).unwrap();
        let zi = quadrature(&im, &grid, NormMeasure::Deformed, &frame).unwrap();
        assert_relative_eq!(z.re, zr, max_relative = 1e-13);
        assert_relative_eq!(z.im, zi, max_relative = 1e-13);
    }
}
