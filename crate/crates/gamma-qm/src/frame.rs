//! Deformation context and the non-additive translation algebra.
//!
//! A [`GammaFrame`] bundles the deformation strength γ (an inverse length),
//! the particle mass, ħ, and the spatial interval on which 1 + γx stays
//! strictly positive. All coordinate maps and displaced points are validated
//! against that interval.

use crate::error::{Error, Result};

/// Below this magnitude γ is routed to the exact γ = 0 formulas: the
/// deformed expressions suffer catastrophic cancellation long before the
/// limit values stop being correct.
pub const GAMMA_ZERO_EPS: f64 = 1e-12;

/// Strictness guard for 1 + γx > 0; the operators are singular at x = −1/γ.
pub const DOMAIN_GUARD: f64 = 1e-12;

/// Deformed exponential: `[1 + γx]^(1/γ)`, reducing to `exp(x)` as γ → 0.
///
/// The product identity `qexp(γ,a)·qexp(γ,b) = qexp(γ, a + b + γab)` is the
/// group law behind the non-additive displacement composition.
pub fn qexp(gamma: f64, x: f64) -> Result<f64> {
    if gamma.abs() < GAMMA_ZERO_EPS {
        return Ok(x.exp());
    }
    let base = 1.0 + gamma * x;
    if base <= DOMAIN_GUARD {
        return Err(Error::Domain(format!(
            "qexp: 1 + gamma*x = {base:.3e} <= 0 for gamma = {gamma}, x = {x}"
        )));
    }
    Ok(((gamma * x).ln_1p() / gamma).exp())
}

/// Non-additive composition of two displacements: `dx1 + dx2 + γ·dx1·dx2`.
///
/// Exact algebra, symmetric in its arguments; applying two successive
/// deformed translations equals one translation by the composed value.
pub fn compose_displacements(dx1: f64, dx2: f64, gamma: f64) -> f64 {
    // grouping the product keeps the expression bit-exactly symmetric
    dx1 + dx2 + gamma * (dx1 * dx2)
}

/// Deformation context: γ, mass, ħ and the valid spatial interval.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaFrame {
    gamma: f64,
    mass: f64,
    hbar: f64,
    x_lo: f64,
    x_hi: f64,
}

impl GammaFrame {
    /// Builds a frame after checking mass > 0, ħ > 0, a non-degenerate
    /// interval, and 1 + γx > 0 strictly on the whole interval.
    pub fn new(gamma: f64, mass: f64, hbar: f64, x_lo: f64, x_hi: f64) -> Result<Self> {
        if !(gamma.is_finite() && mass.is_finite() && hbar.is_finite()) {
            return Err(Error::Contract("frame parameters must be finite".into()));
        }
        if mass <= 0.0 {
            return Err(Error::Contract(format!("mass must be positive, got {mass}")));
        }
        if hbar <= 0.0 {
            return Err(Error::Contract(format!("hbar must be positive, got {hbar}")));
        }
        if !(x_lo.is_finite() && x_hi.is_finite()) || x_lo >= x_hi {
            return Err(Error::Contract(format!(
                "domain [{x_lo}, {x_hi}] must be finite and non-degenerate"
            )));
        }
        // 1 + γx is affine in x, so checking both endpoints covers the interval.
        for x in [x_lo, x_hi] {
            if 1.0 + gamma * x <= DOMAIN_GUARD {
                return Err(Error::Domain(format!(
                    "domain touches the singular point x = -1/gamma: 1 + gamma*x = {:.3e} at x = {x}",
                    1.0 + gamma * x
                )));
            }
        }
        Ok(Self { gamma, mass, hbar, x_lo, x_hi })
    }

    /// Frame in natural units (m = ħ = 1) on the given interval.
    pub fn natural(gamma: f64, x_lo: f64, x_hi: f64) -> Result<Self> {
        Self::new(gamma, 1.0, 1.0, x_lo, x_hi)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x_lo, self.x_hi)
    }

    /// True when γ is routed to the exact γ = 0 expressions.
    pub fn is_gamma_zero(&self) -> bool {
        self.gamma.abs() < GAMMA_ZERO_EPS
    }

    /// The local dilation factor 1 + γx.
    pub fn scale(&self, x: f64) -> f64 {
        1.0 + self.gamma * x
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_lo && x <= self.x_hi && self.scale(x) > DOMAIN_GUARD
    }

    fn require_in_domain(&self, x: f64, what: &str) -> Result<()> {
        if !self.contains(x) {
            return Err(Error::Domain(format!(
                "{what} = {x} outside frame domain [{}, {}]",
                self.x_lo, self.x_hi
            )));
        }
        Ok(())
    }

    /// Displaces a well-localized point: x → x + a + γ·a·x.
    pub fn translate_point(&self, x: f64, a: f64) -> Result<f64> {
        self.require_in_domain(x, "x")?;
        let moved = x + a + self.gamma * a * x;
        self.require_in_domain(moved, "translated point")?;
        Ok(moved)
    }

    /// Inverse displacement: x → (x − dx) / (1 + γ·dx); undoes
    /// [`translate_point`](Self::translate_point) with the same dx.
    pub fn inverse_translate(&self, x: f64, dx: f64) -> Result<f64> {
        let denom = 1.0 + self.gamma * dx;
        if denom <= DOMAIN_GUARD {
            return Err(Error::Domain(format!(
                "inverse_translate: 1 + gamma*dx = {denom:.3e} <= 0"
            )));
        }
        Ok((x - dx) / denom)
    }

    /// Additive coordinate u(x) = ln(1 + γx)/γ; the deformed derivative
    /// becomes d/du there and the theory maps to an additive one.
    pub fn coord_to_u(&self, x: f64) -> Result<f64> {
        self.require_in_domain(x, "x")?;
        if self.is_gamma_zero() {
            return Ok(x);
        }
        Ok((self.gamma * x).ln_1p() / self.gamma)
    }

    /// Inverse map x(u) = (e^(γu) − 1)/γ; exact inverse of
    /// [`coord_to_u`](Self::coord_to_u).
    pub fn coord_to_x(&self, u: f64) -> Result<f64> {
        if !u.is_finite() {
            return Err(Error::Domain(format!("coord_to_x: u = {u} not finite")));
        }
        if self.is_gamma_zero() {
            return Ok(u);
        }
        let x = (self.gamma * u).exp_m1() / self.gamma;
        if !x.is_finite() {
            return Err(Error::Domain(format!("coord_to_x: overflow at u = {u}")));
        }
        Ok(x)
    }

    /// Position-dependent effective mass m/(1 + γx)².
    pub fn effective_mass(&self, x: f64) -> Result<f64> {
        self.require_in_domain(x, "x")?;
        let s = self.scale(x);
        Ok(self.mass / (s * s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_relative_eq, assert_abs_diff_eq};

    #[test]
    fn qexp_gamma_zero_is_exp() {
        assert_relative_eq!(qexp(0.0, 1.0).unwrap(), std::f64::consts::E, max_relative = 1e-15);
        assert_relative_eq!(qexp(1e-13, 1.0).unwrap(), std::f64::consts::E, max_relative = 1e-12);
    }

    #[test]
    fn qexp_at_origin_is_one() {
        assert_eq!(qexp(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(qexp(-0.7, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn qexp_direct_value() {
        // (1 + 0.5*0.2)^2 = 1.1^2
        assert_relative_eq!(qexp(0.5, 0.2).unwrap(), 1.21, max_relative = 1e-14);
    }

    #[test]
    fn qexp_group_law() {
        let (g, a, b) = (0.5, 0.2, 0.3);
        let lhs = qexp(g, a).unwrap() * qexp(g, b).unwrap();
        let rhs = qexp(g, compose_displacements(a, b, g)).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
    }

    #[test]
    fn qexp_rejects_singular_argument() {
        assert!(matches!(qexp(1.0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(qexp(2.0, -0.75), Err(Error::Domain(_))));
    }

    #[test]
    fn compose_reduces_to_addition_at_gamma_zero() {
        assert_relative_eq!(compose_displacements(0.1, 0.2, 0.0), 0.3, max_relative = 1e-15);
    }

    #[test]
    fn compose_direct_value() {
        assert_relative_eq!(compose_displacements(0.1, 0.2, 0.5), 0.31, max_relative = 1e-15);
    }

    #[test]
    fn compose_is_symmetric() {
        let (a, b, g) = (0.37, -0.12, 0.8);
        assert_eq!(compose_displacements(a, b, g), compose_displacements(b, a, g));
    }

    fn frame(gamma: f64) -> GammaFrame {
        GammaFrame::natural(gamma, -0.5, 4.0).unwrap()
    }

    #[test]
    fn translate_matches_closed_form() {
        let f = frame(0.5);
        assert_relative_eq!(f.translate_point(2.0, 0.1).unwrap(), 2.2, max_relative = 1e-15);
    }

    #[test]
    fn translate_identity_and_gamma_zero() {
        let f = frame(0.5);
        assert_eq!(f.translate_point(1.3, 0.0).unwrap(), 1.3);
        let f0 = frame(0.0);
        assert_relative_eq!(f0.translate_point(1.3, 0.2).unwrap(), 1.5, max_relative = 1e-15);
    }

    #[test]
    fn translate_composition_law() {
        let f = frame(0.7);
        let (x, d1, d2) = (0.9, 0.21, -0.05);
        let two_steps = f.translate_point(f.translate_point(x, d1).unwrap(), d2).unwrap();
        let one_step = f.translate_point(x, compose_displacements(d1, d2, 0.7)).unwrap();
        assert_relative_eq!(two_steps, one_step, max_relative = 1e-13);
    }

    #[test]
    fn translate_rejects_exit_from_domain() {
        let f = frame(0.5);
        assert!(matches!(f.translate_point(3.9, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_translate_round_trip() {
        let f = frame(0.5);
        let (x, dx) = (1.0, 0.05);
        let moved = f.translate_point(x, dx).unwrap();
        assert_relative_eq!(f.inverse_translate(moved, dx).unwrap(), x, max_relative = 1e-13);
        assert_eq!(f.inverse_translate(x, 0.0).unwrap(), x);
        let f0 = frame(0.0);
        assert_relative_eq!(f0.inverse_translate(1.0, 0.25).unwrap(), 0.75, max_relative = 1e-15);
    }

    #[test]
    fn inverse_translate_rejects_singular_dx() {
        let f = frame(0.5);
        assert!(matches!(f.inverse_translate(1.0, -2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn coordinate_map_values() {
        let f = frame(0.5);
        // u(1) = ln(1.5)/0.5, the effective well length for L = 1
        assert_relative_eq!(f.coord_to_u(1.0).unwrap(), 0.810_930_216_216_328_8, max_relative = 1e-15);
        let f0 = frame(0.0);
        assert_eq!(f0.coord_to_u(0.37).unwrap(), 0.37);
    }

    #[test]
    fn coordinate_map_round_trip() {
        let f = frame(0.3);
        let x = 0.7;
        let back = f.coord_to_x(f.coord_to_u(x).unwrap()).unwrap();
        assert_abs_diff_eq!(back, x, epsilon = 1e-14);
    }

    #[test]
    fn effective_mass_values() {
        let f0 = frame(0.0);
        assert_eq!(f0.effective_mass(2.0).unwrap(), 1.0);
        let f = frame(0.5);
        assert_relative_eq!(f.effective_mass(1.0).unwrap(), 1.0 / 2.25, max_relative = 1e-15);
    }

    #[test]
    fn effective_mass_decreases_with_x_for_positive_gamma() {
        let f = frame(0.5);
        let mut prev = f.effective_mass(-0.4).unwrap();
        let mut x = -0.3;
        while x <= 4.0 {
            let m = f.effective_mass(x).unwrap();
            assert!(m < prev, "m_e must decrease: m_e({x}) = {m} >= {prev}");
            prev = m;
            x += 0.1;
        }
    }

    #[test]
    fn frame_rejects_singular_domain() {
        assert!(GammaFrame::natural(1.0, -1.0, 1.0).is_err());
        assert!(GammaFrame::natural(-0.5, 0.0, 2.0).is_err());
        assert!(GammaFrame::natural(0.0, 2.0, 1.0).is_err());
        assert!(GammaFrame::new(0.5, -1.0, 1.0, 0.0, 1.0).is_err());
        assert!(GammaFrame::new(0.5, 1.0, 0.0, 0.0, 1.0).is_err());
    }
}
