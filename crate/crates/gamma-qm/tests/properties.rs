//! Property tests for the deformed-translation algebra and scattering
//! unitarity.

use gamma_qm::analytic::BarrierSpec;
use gamma_qm::numeric::transfer_matrix_amplitudes;
use gamma_qm::{compose_displacements, qexp, GammaFrame};
use proptest::prelude::*;

fn frame(gamma: f64) -> GammaFrame {
    // domain clear of x = -1/gamma for every gamma in [-0.8, 2]
    GammaFrame::natural(gamma, -0.05, 1.2).unwrap()
}

proptest! {
    #[test]
    fn translation_group_law(
        gamma in -0.8..2.0f64,
        x in 0.0..1.0f64,
        d1 in -0.15..0.15f64,
        d2 in -0.15..0.15f64,
    ) {
        let f = frame(gamma);
        let two_steps = f
            .translate_point(x, d1)
            .and_then(|y| f.translate_point(y, d2));
        let one_step = f.translate_point(x, compose_displacements(d1, d2, gamma));
        prop_assume!(two_steps.is_ok() && one_step.is_ok());
        let (a, b) = (two_steps.unwrap(), one_step.unwrap());
        prop_assert!((a - b).abs() <= 1e-13 * (1.0 + a.abs()), "{a} vs {b}");
    }

    #[test]
    fn coordinate_maps_round_trip(gamma in -0.8..2.0f64, x in 0.0..1.0f64) {
        let f = frame(gamma);
        let back = f.coord_to_x(f.coord_to_u(x).unwrap()).unwrap();
        prop_assert!((back - x).abs() <= 1e-13 * (1.0 + x.abs()));
    }

    #[test]
    fn inverse_translate_round_trip(
        gamma in -0.8..2.0f64,
        x in 0.0..1.0f64,
        d in -0.15..0.15f64,
    ) {
        let f = frame(gamma);
        let Ok(moved) = f.translate_point(x, d) else {
            return Ok(());
        };
        let back = f.inverse_translate(moved, d).unwrap();
        prop_assert!((back - x).abs() <= 1e-13 * (1.0 + x.abs()));
    }

    #[test]
    fn qexp_product_rule(
        gamma in -0.8..2.0f64,
        a in -0.4..0.4f64,
        b in -0.4..0.4f64,
    ) {
        prop_assume!(1.0 + gamma * a > 1e-6 && 1.0 + gamma * b > 1e-6);
        let composed = compose_displacements(a, b, gamma);
        prop_assume!(1.0 + gamma * composed > 1e-6);
        let lhs = qexp(gamma, a).unwrap() * qexp(gamma, b).unwrap();
        let rhs = qexp(gamma, composed).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn composition_is_abelian(
        gamma in -2.0..2.0f64,
        a in -10.0..10.0f64,
        b in -10.0..10.0f64,
    ) {
        prop_assert_eq!(
            compose_displacements(a, b, gamma),
            compose_displacements(b, a, gamma)
        );
    }

    #[test]
    fn scattering_is_unitary(gamma in -0.6..1.5f64, ratio in 0.02..4.0f64) {
        let f = GammaFrame::natural(gamma, -0.1, 1.2).unwrap();
        let spec = BarrierSpec::new(18.0, 1.0, f).unwrap();
        let energy = 18.0 * ratio;
        prop_assume!((energy - 18.0).abs() > 1e-9);
        let t_closed = spec.transmission(energy).unwrap();
        prop_assert!(t_closed > 0.0 && t_closed <= 1.0);
        let (r, t) = transfer_matrix_amplitudes(energy, &spec).unwrap();
        let total = r.norm_sqr() + t.norm_sqr();
        prop_assert!((total - 1.0).abs() <= 1e-10, "1 - |r|^2 - |t|^2 = {}", 1.0 - total);
        prop_assert!((t.norm_sqr() - t_closed).abs() <= 1e-10);
    }
}
