//! First and second moments of position and deformed momentum, with the
//! γ-dependent uncertainty bound.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::GammaFrame;
use crate::operators::momentum_apply_values;
use crate::quadrature::{quadrature, quadrature_complex};
use crate::wavefunction::{NormMeasure, Wavefunction1D};

/// Moments of a standard-measure-normalized state.
///
/// `mean_p_gamma` is the real part of ∫ψ̄ p̂_γψ dx: under the standard
/// measure p̂_γ is not symmetric, so the raw integral picks up an imaginary
/// part of order ħγ/2 from the measure; the physical (real) component is
/// what gets reported. The bound is the Robertson combination
/// (ħ/2)(1 + γ⟨x⟩) from the deformed commutator.
#[derive(Debug, Clone, Copy)]
pub struct ExpectationReport {
    pub mean_x: f64,
    pub mean_p_gamma: f64,
    pub var_x: f64,
    pub var_p_gamma: f64,
    pub uncertainty_product: f64,
    pub uncertainty_bound: f64,
}

/// Computes the moment report; requires ψ tagged and normalized under the
/// standard measure (the measure of the position-average integrals).
pub fn expectations(psi: &Wavefunction1D, frame: &GammaFrame) -> Result<ExpectationReport> {
    if psi.measure() != NormMeasure::Standard {
        return Err(Error::Contract(
            "expectations requires a standard-measure state".into(),
        ));
    }
    let norm = psi.norm(frame)?;
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::Contract(format!(
            "expectations requires a normalized state, got norm {norm}"
        )));
    }

    let grid = psi.grid();
    let xs = grid.points();
    let rho = psi.density();

    let x_rho: Vec<f64> = rho.iter().zip(xs).map(|(&r, &x)| r * x).collect();
    let x2_rho: Vec<f64> = rho.iter().zip(xs).map(|(&r, &x)| r * x * x).collect();
    let mean_x = quadrature(&x_rho, grid, NormMeasure::Standard, frame)?;
    let mean_x2 = quadrature(&x2_rho, grid, NormMeasure::Standard, frame)?;
    let var_x = (mean_x2 - mean_x * mean_x).max(0.0);

    let p_psi = momentum_apply_values(psi.amplitudes(), grid, frame)?;
    let pp_psi = momentum_apply_values(&p_psi, grid, frame)?;
    let integrand_p: Vec<Complex64> = psi
        .amplitudes()
        .iter()
        .zip(&p_psi)
        .map(|(&a, &p)| a.conj() * p)
        .collect();
    let integrand_pp: Vec<Complex64> = psi
        .amplitudes()
        .iter()
        .zip(&pp_psi)
        .map(|(&a, &p)| a.conj() * p)
        .collect();
    let mean_p = quadrature_complex(&integrand_p, grid, NormMeasure::Standard, frame)?.re;
    let mean_p2 = quadrature_complex(&integrand_pp, grid, NormMeasure::Standard, frame)?.re;
    let var_p = (mean_p2 - mean_p * mean_p).max(0.0);

    let product = (var_x * var_p).sqrt();
    let bound = 0.5 * frame.hbar() * (1.0 + frame.gamma() * mean_x);
    if !(product.is_finite() && bound.is_finite()) {
        return Err(Error::Numerics(format!(
            "non-finite uncertainty data: product {product}, bound {bound}"
        )));
    }

    Ok(ExpectationReport {
        mean_x,
        mean_p_gamma: mean_p,
        var_x,
        var_p_gamma: var_p,
        uncertainty_product: product,
        uncertainty_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn textbook_box_ground_state() {
        let frame = GammaFrame::natural(0.0, 0.0, 1.0).unwrap();
        let grid = Grid1D::uniform(0.0, 1.0, 4001).unwrap();
        let mut psi = Wavefunction1D::from_fn(grid, NormMeasure::Standard, |x| {
            Complex64::new((std::f64::consts::PI * x).sin(), 0.0)
        })
        .unwrap();
        psi.normalize(&frame).unwrap();
        let rep = expectations(&psi, &frame).unwrap();
        assert_relative_eq!(rep.mean_x, 0.5, max_relative = 1e-8);
        assert_abs_diff_eq!(rep.mean_p_gamma, 0.0, epsilon = 1e-12);
        // Δx·Δp = π·sqrt(1/12 − 1/(2π²)) ≈ 0.5678 ≥ 1/2
        assert!(rep.uncertainty_product > rep.uncertainty_bound);
        assert_relative_eq!(rep.uncertainty_bound, 0.5, max_relative = 1e-12);
        assert_relative_eq!(
            rep.uncertainty_product,
            std::f64::consts::PI * (1.0 / 12.0 - 0.5 / std::f64::consts::PI.powi(2)).sqrt(),
            max_relative = 1e-5
        );
    }

    #[test]
    fn deformed_well_ground_state_moments() {
        let frame = GammaFrame::natural(0.5, 0.0, 1.0).unwrap();
        let well = crate::analytic::WellSpec::new(1.0, frame.clone()).unwrap();
        let grid = Grid1D::uniform(0.0, 1.0, 4001).unwrap();
        let psi = well.wavefunction(1, &grid).unwrap();
        let rep = expectations(&psi, &frame).unwrap();
        // quadrature mean matches the closed-form average position
        assert_relative_eq!(rep.mean_x, 0.469_279_104_213_780_2, max_relative = 1e-8);
        // real eigenstate: the deformed momentum averages to zero
        assert_abs_diff_eq!(rep.mean_p_gamma, 0.0, epsilon = 1e-12);
        assert!(rep.uncertainty_product >= rep.uncertainty_bound);
        assert_relative_eq!(
            rep.uncertainty_bound,
            0.5 * (1.0 + 0.5 * rep.mean_x),
            max_relative = 1e-14
        );
    }

    #[test]
    fn rejects_unnormalized_input() {
        let frame = GammaFrame::natural(0.0, 0.0, 1.0).unwrap();
        let grid = Grid1D::uniform(0.0, 1.0, 101).unwrap();
        let psi = Wavefunction1D::from_fn(grid, NormMeasure::Standard, |_| {
            Complex64::new(2.0, 0.0)
        })
        .unwrap();
        assert!(matches!(expectations(&psi, &frame), Err(Error::Contract(_))));
    }

    #[test]
    fn rejects_deformed_measure_tag() {
        let frame = GammaFrame::natural(0.0, 0.0, 1.0).unwrap();
        let grid = Grid1D::uniform(0.0, 1.0, 101).unwrap();
        let psi = Wavefunction1D::from_fn(grid, NormMeasure::Deformed, |_| {
            Complex64::new(1.0, 0.0)
        })
        .unwrap();
        assert!(matches!(expectations(&psi, &frame), Err(Error::Contract(_))));
    }
}
