//! Finite-difference Hamiltonians for the deformed stationary equation.
//!
//! Primary discretization lives in the additive coordinate u = ln(1+γx)/γ,
//! where the kinetic term is the plain constant-coefficient Laplacian and
//! all γ-dependence enters through the mapped interval and V(x(u)). The
//! x-space discretization of the effective-mass form is kept as an
//! independent cross-check backend.

use crate::error::{Error, Result};
use crate::grid::Grid1D;

use super::potential::PotentialSpec;
use super::tridiagonal::TridiagonalOperator;

const UNIFORMITY_RTOL: f64 = 1e-8;

/// Standard three-point discretization of −(ħ²/2m)d²/du² + V(x(u)) with
/// Dirichlet boundaries one spacing outside the grid; `grid_u` holds the
/// interior u-nodes and must be uniform.
pub fn build_hamiltonian_u(spec: &PotentialSpec, grid_u: &Grid1D) -> Result<TridiagonalOperator> {
    if !grid_u.is_uniform(UNIFORMITY_RTOL) {
        return Err(Error::Contract("u-grid must be uniform".into()));
    }
    let us = grid_u.points();
    let h = us[1] - us[0];
    let hbar = spec.frame.hbar();
    let kin = hbar * hbar / (2.0 * spec.frame.mass() * h * h);
    let mut diagonal = Vec::with_capacity(us.len());
    for &u in us {
        let x = spec.frame.coord_to_x(u)?;
        diagonal.push(2.0 * kin + spec.eval(x));
    }
    let off_diagonal = vec![-kin; us.len() - 1];
    TridiagonalOperator::new(diagonal, off_diagonal)
}

/// x-space cross-check backend: the effective-mass equation
/// −(ħ²/2m)[(1+γx)²φ″ + γ(1+γx)φ′] + Vφ = Eφ discretized on a uniform
/// interior x-grid. The raw matrix is nonsymmetric; a diagonal similarity
/// makes it symmetric with identical spectrum.
///
/// Returns the symmetrized operator and the similarity scaling δ; an
/// eigenvector v of the symmetric operator maps back to φ_i = v_i/δ_i.
pub fn build_hamiltonian_x(
    spec: &PotentialSpec,
    grid_x: &Grid1D,
) -> Result<(TridiagonalOperator, Vec<f64>)> {
    if !grid_x.is_uniform(UNIFORMITY_RTOL) {
        return Err(Error::Contract("x-grid must be uniform".into()));
    }
    grid_x.validate_in(&spec.frame)?;
    let xs = grid_x.points();
    let n = xs.len();
    let h = xs[1] - xs[0];
    let gamma = spec.frame.gamma();
    let hbar = spec.frame.hbar();
    let c = hbar * hbar / (2.0 * spec.frame.mass());

    let mut diag = Vec::with_capacity(n);
    let mut sup = Vec::with_capacity(n - 1); // row i, column i+1
    let mut sub = Vec::with_capacity(n - 1); // row i+1, column i
    for (i, &x) in xs.iter().enumerate() {
        let s = 1.0 + gamma * x;
        diag.push(2.0 * c * s * s / (h * h) + spec.eval(x));
        if i + 1 < n {
            sup.push(-c * s * (s / (h * h) + gamma / (2.0 * h)));
        }
        if i > 0 {
            sub.push(-c * s * (s / (h * h) - gamma / (2.0 * h)));
        }
    }

    // similarity scaling needs sup_i · sub_i > 0, i.e. h < 2(1+γx)/|γ|
    let mut delta = Vec::with_capacity(n);
    delta.push(1.0);
    let mut off = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let product = sup[i] * sub[i];
        if product <= 0.0 {
            return Err(Error::Grid(format!(
                "x-grid too coarse to symmetrize near x = {}: need h < 2(1+gamma*x)/|gamma|",
                xs[i]
            )));
        }
        off.push(-product.sqrt());
        let next = delta[i] * (sup[i] / sub[i]).sqrt();
        if !next.is_finite() || next <= 0.0 {
            return Err(Error::Numerics("similarity scaling degenerated".into()));
        }
        delta.push(next);
    }
    Ok((TridiagonalOperator::new(diag, off)?, delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::GammaFrame;
    use crate::numeric::potential::Potential;
    use approx::assert_relative_eq;

    fn well_spec(gamma: f64) -> PotentialSpec {
        let frame = GammaFrame::natural(gamma, 0.0, 1.0).unwrap();
        PotentialSpec::new(Potential::InfiniteWell { length: 1.0 }, frame).unwrap()
    }

    fn interior_u_grid(spec: &PotentialSpec, intervals: usize) -> Grid1D {
        let (a, b) = spec.solve_interval();
        let ua = spec.frame.coord_to_u(a).unwrap();
        let ub = spec.frame.coord_to_u(b).unwrap();
        let h = (ub - ua) / intervals as f64;
        let pts: Vec<f64> = (1..intervals).map(|i| ua + h * i as f64).collect();
        Grid1D::from_points(pts).unwrap()
    }

    #[test]
    fn u_operator_is_gamma_free_for_null_potential() {
        // V = 0: all γ-dependence is in the interval length, so two frames
        // with the same L' produce identical operators up to that length
        let spec = well_spec(0.5);
        let t = build_hamiltonian_u(&spec, &interior_u_grid(&spec, 100)).unwrap();
        let lp = spec.frame.coord_to_u(1.0).unwrap();
        let h = lp / 100.0;
        for d in &t.diagonal {
            assert_relative_eq!(*d, 1.0 / (h * h), max_relative = 1e-12);
        }
        for e in &t.off_diagonal {
            assert_relative_eq!(*e, -0.5 / (h * h), max_relative = 1e-12);
        }
    }

    #[test]
    fn u_operator_diagonally_dominant_for_nonnegative_potential() {
        let frame = GammaFrame::natural(0.4, -1.0, 2.0).unwrap();
        let spec = PotentialSpec::new(
            Potential::RectangularBarrier { v0: 5.0, width: 1.0 },
            frame,
        )
        .unwrap();
        let t = build_hamiltonian_u(&spec, &interior_u_grid(&spec, 200)).unwrap();
        for i in 0..t.len() {
            let mut off = 0.0;
            if i > 0 {
                off += t.off_diagonal[i - 1].abs();
            }
            if i + 1 < t.len() {
                off += t.off_diagonal[i].abs();
            }
            assert!(t.diagonal[i] >= off, "row {i} not dominant");
        }
    }

    #[test]
    fn u_operator_rejects_nonuniform_grid() {
        let spec = well_spec(0.5);
        let grid = Grid1D::from_points(vec![0.1, 0.2, 0.4]).unwrap();
        assert!(matches!(
            build_hamiltonian_u(&spec, &grid),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn x_operator_similarity_preserves_spectrum_gamma_zero() {
        // at γ = 0 the x-operator is already symmetric; similarity is a no-op
        let spec = well_spec(0.0);
        let grid = Grid1D::uniform(0.0, 1.0, 402).unwrap();
        let interior =
            Grid1D::from_points(grid.points()[1..grid.len() - 1].to_vec()).unwrap();
        let (t, delta) = build_hamiltonian_x(&spec, &interior).unwrap();
        for d in &delta {
            assert_relative_eq!(*d, 1.0, max_relative = 1e-12);
        }
        let (values, _) = t.eigs_lowest(1).unwrap();
        assert_relative_eq!(
            values[0],
            std::f64::consts::PI.powi(2) / 2.0,
            max_relative = 1e-4
        );
    }
}
