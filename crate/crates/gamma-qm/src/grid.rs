//! Sampling grids: ordered point sets shared by every discrete operator.

use crate::error::{Error, Result};
use crate::frame::GammaFrame;

/// Strictly ascending sample positions; the substrate for stencils and
/// quadrature. Three points is the minimum for second-difference work.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    points: Vec<f64>,
}

impl Grid1D {
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::Grid(format!(
                "need at least 3 points, got {}",
                points.len()
            )));
        }
        for w in points.windows(2) {
            if !(w[0].is_finite() && w[1].is_finite()) || w[1] <= w[0] {
                return Err(Error::Grid(format!(
                    "points must be finite and strictly ascending near {} .. {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { points })
    }

    /// Uniformly spaced grid of `n` points on [x_lo, x_hi].
    pub fn uniform(x_lo: f64, x_hi: f64, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Grid(format!("need at least 3 points, got {n}")));
        }
        if !(x_lo.is_finite() && x_hi.is_finite()) || x_hi <= x_lo {
            return Err(Error::Grid(format!("bad interval [{x_lo}, {x_hi}]")));
        }
        let h = (x_hi - x_lo) / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| x_lo + h * i as f64).collect();
        // pin the endpoint so interval arithmetic is exact
        points[n - 1] = x_hi;
        Self::from_points(points)
    }

    /// The x-image of a uniform grid in the additive coordinate u: the grid
    /// on which the mapped Hamiltonian has constant coefficients.
    pub fn uniform_u(frame: &GammaFrame, x_lo: f64, x_hi: f64, n: usize) -> Result<Self> {
        let u_lo = frame.coord_to_u(x_lo)?;
        let u_hi = frame.coord_to_u(x_hi)?;
        let ugrid = Self::uniform(u_lo, u_hi, n)?;
        let mut points = Vec::with_capacity(n);
        for &u in ugrid.points() {
            points.push(frame.coord_to_x(u)?);
        }
        // map drift can leave the last point a few ulps outside the interval
        points[0] = x_lo;
        points[n - 1] = x_hi;
        Self::from_points(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn first(&self) -> f64 {
        self.points[0]
    }

    pub fn last(&self) -> f64 {
        *self.points.last().unwrap()
    }

    /// Largest spacing between adjacent points.
    pub fn max_spacing(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// True when all spacings agree to within `tol` relative.
    pub fn is_uniform(&self, tol: f64) -> bool {
        let h0 = self.points[1] - self.points[0];
        self.points
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h0).abs() <= tol * h0.abs())
    }

    /// Checks every point lies in the frame's domain (endpoints suffice:
    /// the domain is an interval and the points are sorted).
    pub fn validate_in(&self, frame: &GammaFrame) -> Result<()> {
        for x in [self.first(), self.last()] {
            if !frame.contains(x) {
                return Err(Error::Grid(format!(
                    "grid point {x} outside frame domain {:?}",
                    frame.domain()
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_small_and_unsorted() {
        assert!(Grid1D::from_points(vec![0.0, 1.0]).is_err());
        assert!(Grid1D::from_points(vec![0.0, 1.0, 0.5]).is_err());
        assert!(Grid1D::from_points(vec![0.0, 0.0, 1.0]).is_err());
        assert!(Grid1D::uniform(0.0, 1.0, 2).is_err());
        assert!(Grid1D::uniform(1.0, 0.0, 10).is_err());
    }

    #[test]
    fn uniform_endpoints_exact() {
        let g = Grid1D::uniform(-0.25, 1.75, 101).unwrap();
        assert_eq!(g.first(), -0.25);
        assert_eq!(g.last(), 1.75);
        assert!(g.is_uniform(1e-12));
    }

    #[test]
    fn uniform_u_round_trips_through_coordinate_map() {
        let frame = GammaFrame::natural(0.5, 0.0, 1.0).unwrap();
        let g = Grid1D::uniform_u(&frame, 0.0, 1.0, 17).unwrap();
        assert_eq!(g.first(), 0.0);
        assert_eq!(g.last(), 1.0);
        // u-images must be uniformly spaced
        let us: Vec<f64> = g
            .points()
            .iter()
            .map(|&x| frame.coord_to_u(x).unwrap())
            .collect();
        let h = us[1] - us[0];
        for w in us.windows(2) {
            assert_abs_diff_eq!(w[1] - w[0], h, epsilon = 1e-12);
        }
        // and spacing in x grows with x for gamma > 0
        let spacings: Vec<f64> = g.points().windows(2).map(|w| w[1] - w[0]).collect();
        assert!(spacings.windows(2).all(|s| s[1] > s[0]));
    }

    #[test]
    fn validate_in_frame() {
        let frame = GammaFrame::natural(0.5, 0.0, 1.0).unwrap();
        let inside = Grid1D::uniform(0.0, 1.0, 5).unwrap();
        assert!(inside.validate_in(&frame).is_ok());
        let outside = Grid1D::uniform(0.0, 2.0, 5).unwrap();
        assert!(outside.validate_in(&frame).is_err());
    }
}
