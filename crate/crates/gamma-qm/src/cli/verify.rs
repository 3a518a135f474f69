//! The verification suite behind `gamma-qm verify`: each check pins one
//! exit criterion with its tolerance written into the code, measures what
//! it claims, and reports one pass/fail line.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;

use crate::analytic::{well2d_density, BarrierSpec, FreeWave, WellSpec};
use crate::error::Result;
use crate::expectation::expectations;
use crate::frame::GammaFrame;
use crate::grid::Grid1D;
use crate::numeric::{
    continuity_residual, solve_bound_states, solve_bound_states_with, time_evolve,
    transfer_matrix_transmission, Backend, Potential, PotentialSpec, Refinement,
};
use crate::operators::{commutator_residual, kinetic_apply_deformed, kinetic_apply_factored};
use crate::wavefunction::{NormMeasure, Wavefunction1D};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:<4} {:<28} {:>7.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

fn run_check(
    id: &'static str,
    name: &'static str,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(outcome) => outcome,
        Err(e) => (false, format!("errored: {e}")),
    };
    CheckResult { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

fn natural_well(gamma: f64) -> Result<(GammaFrame, WellSpec)> {
    let frame = GammaFrame::natural(gamma, 0.0, 1.0)?;
    let well = WellSpec::new(1.0, frame.clone())?;
    Ok((frame, well))
}

fn well_potential(gamma: f64) -> Result<PotentialSpec> {
    let frame = GammaFrame::natural(gamma, 0.0, 1.0)?;
    PotentialSpec::new(Potential::InfiniteWell { length: 1.0 }, frame)
}

fn barrier_spec(gamma: f64) -> Result<BarrierSpec> {
    let frame = GammaFrame::natural(gamma, -0.1, 1.2)?;
    BarrierSpec::new(18.0, 1.0, frame)
}

/// Criterion 1: eigensolver reproduces the closed-form spectrum to 1e-6
/// relative at the default resolution, with raw second-order convergence,
/// inside 30 s.
pub fn check_spectrum(quick: bool) -> CheckResult {
    run_check("A1", "spectrum exactness", || {
        let start = Instant::now();
        let n_grid = if quick { 2000 } else { 4000 };
        let n_states = if quick { 5 } else { 10 };
        let gammas: &[f64] = if quick { &[0.5] } else { &[-0.5, 0.0, 0.5] };
        let mut worst = 0.0_f64;
        for &g in gammas {
            let (_, well) = natural_well(g)?;
            let spec = well_potential(g)?;
            let solution = solve_bound_states(&spec, n_states, n_grid)?;
            for n in 1..=n_states {
                let exact = well.energy(n)?;
                let rel = (solution.energies[n - 1] - exact).abs() / exact;
                worst = worst.max(rel);
            }
        }

        // observed order of the raw three-point scheme
        let (_, well) = natural_well(0.5)?;
        let spec = well_potential(0.5)?;
        let exact = well.energy(1)?;
        let err = |grid: usize| -> Result<f64> {
            let sol = solve_bound_states_with(&spec, 1, grid, Backend::USpace, Refinement::Raw)?;
            Ok((sol.energies[0] - exact).abs())
        };
        let grids: [usize; 3] = if quick { [250, 500, 1000] } else { [500, 1000, 2000] };
        let e0 = err(grids[0])?;
        let e1 = err(grids[1])?;
        let e2 = err(grids[2])?;
        let order1 = (e0 / e1).log2();
        let order2 = (e1 / e2).log2();
        let elapsed = start.elapsed().as_secs_f64();

        let ok = worst < 1e-6
            && (order1 - 2.0).abs() <= 0.2
            && (order2 - 2.0).abs() <= 0.2
            && elapsed < 30.0;
        Ok((ok, format!(
            "max rel err {worst:.2e} (tol 1e-6), orders {order1:.2}/{order2:.2} (2.0±0.2), {elapsed:.1}s (<30s)"
        )))
    })
}

/// Criterion 2: spectral ordering in γ, both the three-curve comparison and
/// strict growth across the inset sweep.
pub fn check_spectrum_ordering(quick: bool) -> CheckResult {
    run_check("A2", "energy ordering in gamma", || {
        let n_states = if quick { 5 } else { 10 };
        let (_, w_minus) = natural_well(-0.5)?;
        let (_, w_zero) = natural_well(0.0)?;
        let (_, w_plus) = natural_well(0.5)?;
        for n in 1..=n_states {
            let (a, b, c) = (w_minus.energy(n)?, w_zero.energy(n)?, w_plus.energy(n)?);
            if !(a < b && b < c) {
                return Ok((false, format!("ordering broken at n = {n}: {a} {b} {c}")));
            }
        }
        let step: f64 = if quick { 0.25 } else { 0.05 };
        let count = ((2.0 - (-0.9)) / step).round() as usize;
        for n in 1..=3usize {
            let mut prev = f64::NEG_INFINITY;
            for i in 0..=count {
                let g = -0.9 + step * i as f64;
                let (_, well) = natural_well(g)?;
                let e = well.energy(n)?;
                if e <= prev {
                    return Ok((false, format!("E_{n}(gamma) not increasing at gamma = {g}")));
                }
                prev = e;
            }
        }
        Ok((true, format!(
            "E_n(-0.5) < E_n(0) < E_n(0.5) for n <= {n_states}; E_n strictly increasing on [-0.9, 2]"
        )))
    })
}

/// Trapezoid of f sampled uniformly on [0, L] with `intervals` panels.
fn trapezoid_on_well(well: &WellSpec, n: usize, intervals: usize, f: impl Fn(f64, f64) -> f64) -> Result<f64> {
    let h = well.length() / intervals as f64;
    let mut acc = 0.0;
    let mut prev = {
        let x = 0.0;
        let phi = well.eval(n, x)?;
        f(x, phi)
    };
    for i in 1..=intervals {
        let x = if i == intervals { well.length() } else { i as f64 * h };
        let phi = well.eval(n, x)?;
        let cur = f(x, phi);
        acc += 0.5 * h * (prev + cur);
        prev = cur;
    }
    Ok(acc)
}

const MEAN_X_GAMMAS: [f64; 6] = [-0.9, -0.5, 0.0, 0.5, 1.0, 2.0];

/// Criterion 3: the closed-form ⟨x⟩ against direct quadrature, the γ = 0
/// midpoint, and the high-n collapse to L/2.
pub fn check_mean_position(quick: bool) -> CheckResult {
    run_check("A3", "mean-position law", || {
        let n_max = if quick { 8 } else { 20 };
        let intervals = if quick { 4000 } else { 8000 };
        let gammas: &[f64] = if quick { &[-0.5, 0.5, 2.0] } else { &MEAN_X_GAMMAS };
        let mut worst = 0.0_f64;
        for &g in gammas {
            let (_, well) = natural_well(g)?;
            for n in 1..=n_max {
                let closed = well.mean_x(n)?;
                let numeric = trapezoid_on_well(&well, n, intervals, |x, phi| x * phi * phi)?;
                worst = worst.max((closed - numeric).abs() / closed.abs());
            }
        }
        let (_, w0) = natural_well(0.0)?;
        let center_dev = (w0.mean_x(1)? - 0.5).abs().max((w0.mean_x(7)? - 0.5).abs());
        let mut tail_dev = 0.0_f64;
        for &g in gammas {
            let (_, well) = natural_well(g)?;
            tail_dev = tail_dev.max((well.mean_x(20)? - 0.5).abs());
        }
        let ok = worst < 1e-6 && center_dev < 1e-12 && tail_dev < 0.01;
        Ok((ok, format!(
            "closed-vs-quadrature max rel {worst:.2e} (1e-6), gamma=0 dev {center_dev:.1e} (1e-12), n=20 dev {tail_dev:.2e} (0.01)"
        )))
    })
}

/// Criterion 4, with a fault-injection hook: `a_scale` multiplies the
/// normalization constant, so anything but 1.0 must make the check fail.
pub fn check_normalization_with_scale(quick: bool, a_scale: f64) -> CheckResult {
    run_check("A4", "wavefunction normalization", move || {
        let n_max = if quick { 8 } else { 20 };
        let intervals = if quick { 4000 } else { 8000 };
        let gammas: &[f64] = if quick { &[-0.5, 0.5, 2.0] } else { &MEAN_X_GAMMAS };
        let mut worst = 0.0_f64;
        for &g in gammas {
            let (_, well) = natural_well(g)?;
            for n in 1..=n_max {
                let norm =
                    trapezoid_on_well(&well, n, intervals, |_, phi| (a_scale * phi).powi(2))?;
                worst = worst.max((norm - 1.0).abs());
            }
        }
        let (_, w0) = natural_well(0.0)?;
        let exact_a = w0.norm_constant(1)? == (2.0_f64).sqrt();
        let ok = worst < 1e-8 && exact_a;
        Ok((ok, format!(
            "max |norm - 1| = {worst:.2e} (tol 1e-8), A_n(gamma=0) == sqrt(2/L): {exact_a}"
        )))
    })
}

pub fn check_normalization(quick: bool) -> CheckResult {
    check_normalization_with_scale(quick, 1.0)
}

/// Criterion 5: transfer matrix vs closed form across the sweep, the first
/// resonance location, γ-monotone tunneling, and the frozen oracle value.
pub fn check_barrier(quick: bool) -> CheckResult {
    run_check("A5", "barrier transmission", || {
        let step: f64 = if quick { 0.02 } else { 0.005 };
        let count = (4.0 / step).round() as usize;
        let mut worst = 0.0_f64;
        for &g in &[-0.5, 0.0, 0.5] {
            let spec = barrier_spec(g)?;
            for i in 1..=count {
                let e = 18.0 * step * i as f64;
                let closed = spec.transmission(e)?;
                let transfer = transfer_matrix_transmission(e, &spec)?;
                worst = worst.max((closed - transfer).abs());
            }
        }

        // locate the first transparency point by bisecting sin(q a') in E
        let spec0 = barrier_spec(0.0)?;
        let ap = spec0.effective_width();
        let phase = |e: f64| ((2.0 * (e - 18.0)).sqrt() * ap).sin();
        let mut lo = 18.0 * (1.0 + 1e-9);
        let mut hi = 18.0 + 0.5 * (1.5 * PI / ap).powi(2);
        debug_assert!(phase(lo) > 0.0 && phase(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if phase(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let e_res = 0.5 * (lo + hi);
        let phase_dev = ((2.0 * (e_res - 18.0)).sqrt() * ap - PI).abs();
        let t_at_res = spec0.transmission(e_res)?;

        let mut prev = 0.0;
        let mut monotone = true;
        for &g in &[-0.5, 0.0, 0.5, 1.0] {
            let t = barrier_spec(g)?.transmission(9.0)?;
            monotone &= t > prev;
            prev = t;
        }
        let t_half = barrier_spec(0.0)?.transmission(9.0)?;
        let oracle_dev = (t_half - 8.256_001_834_194_439e-4).abs();
        let rounded_dev = (t_half - 8.26e-4).abs();

        let ok = worst <= 1e-10
            && phase_dev < 1e-8
            && t_at_res > 1.0 - 1e-10
            && monotone
            && oracle_dev < 1e-6
            && rounded_dev < 1e-6;
        Ok((ok, format!(
            "max |T_tm - T_cf| {worst:.1e} (1e-10), resonance |qa'-pi| {phase_dev:.1e} (1e-8), \
             T(E=V0/2) dev {oracle_dev:.1e} (1e-6), tunneling monotone {monotone}"
        )))
    })
}

/// Criterion 6: 2D ground-state displacement, total probability, and the
/// coarse-grained uniformity at n = 20. Cells are aligned to whole
/// half-periods of the oscillation (uniform in u), so the average is the
/// physical plateau rather than partial-wave aliasing.
pub fn check_density_2d(quick: bool) -> CheckResult {
    run_check("A6", "2d box densities", || {
        let frame = GammaFrame::natural(1.0, 0.0, 1.0)?;
        let well = WellSpec::new(1.0, frame.clone())?;
        // 160 points per cell keeps the n = 20 trapezoid mass inside 1e-6
        let cells = 5usize;
        let per_cell = 160;
        let points = cells * per_cell + 1;
        let _ = quick;
        let grid = Grid1D::uniform_u(&frame, 0.0, 1.0, points)?;

        let ground = well2d_density(1, 1, &well, &well, &grid, &grid)?;
        let (mx, my) = ground.argmax();
        let displaced = mx < 0.5 && my < 0.5;

        let mut mass_dev = 0.0_f64;
        for (nx, ny) in [(1, 1), (1, 2), (2, 2), (20, 20)] {
            let rho = well2d_density(nx, ny, &well, &well, &grid, &grid)?;
            mass_dev = mass_dev.max((rho.total_mass() - 1.0).abs());
        }

        let high = well2d_density(20, 20, &well, &well, &grid, &grid)?;
        let total = high.total_mass();
        let area = 1.0;
        let mut coarse_dev = 0.0_f64;
        for cy in 0..cells {
            for cx in 0..cells {
                let ix = (cx * per_cell, (cx + 1) * per_cell);
                let iy = (cy * per_cell, (cy + 1) * per_cell);
                let mass = high.cell_mass(ix.0, ix.1, iy.0, iy.1);
                let dx = grid.points()[ix.1] - grid.points()[ix.0];
                let dy = grid.points()[iy.1] - grid.points()[iy.0];
                let avg = mass / (dx * dy);
                coarse_dev = coarse_dev.max((avg / (total / area) - 1.0).abs());
            }
        }

        let ok = displaced && mass_dev < 1e-6 && coarse_dev < 0.10;
        Ok((ok, format!(
            "argmax ({mx:.3}, {my:.3}) < (0.5, 0.5): {displaced}, mass dev {mass_dev:.1e} (1e-6), \
             coarse-grain dev {coarse_dev:.2e} (0.10)"
        )))
    })
}

/// Criterion 7: commutator residual and the factored-vs-expanded kinetic
/// gap both decay at second order on Gaussian states.
pub fn check_operator_identities(quick: bool) -> CheckResult {
    run_check("A7", "operator identities", || {
        let frame = GammaFrame::natural(0.5, -0.5, 4.0)?;
        let gaussian = |x: f64| {
            Complex64::new((-(x - 1.2) * (x - 1.2) / 0.18).exp(), 0.0)
        };
        let commutator = |n: usize| -> Result<f64> {
            let grid = Grid1D::uniform(0.0, 2.4, n)?;
            let psi = Wavefunction1D::from_fn(grid, NormMeasure::Standard, gaussian)?;
            commutator_residual(&psi, &frame)
        };
        let kinetic_gap = |n: usize| -> Result<f64> {
            let grid = Grid1D::uniform(0.0, 2.4, n)?;
            let psi = Wavefunction1D::from_fn(grid.clone(), NormMeasure::Standard, gaussian)?;
            let a = kinetic_apply_factored(&psi, &frame)?;
            let b = kinetic_apply_deformed(&psi, &frame)?;
            Ok((2..n - 2).map(|i| (a[i] - b[i]).norm()).fold(0.0, f64::max))
        };
        let grids: [usize; 3] = if quick { [100, 200, 400] } else { [200, 400, 800] };
        let c: Vec<f64> = grids.iter().map(|&n| commutator(n)).collect::<Result<_>>()?;
        let k: Vec<f64> = grids.iter().map(|&n| kinetic_gap(n)).collect::<Result<_>>()?;
        let c_orders = [(c[0] / c[1]).log2(), (c[1] / c[2]).log2()];
        let k_orders = [(k[0] / k[1]).log2(), (k[1] / k[2]).log2()];
        let ok = c_orders.iter().chain(&k_orders).all(|o| (o - 2.0).abs() <= 0.2);
        Ok((ok, format!(
            "commutator orders {:.2}/{:.2}, kinetic-equivalence orders {:.2}/{:.2} (2.0±0.2)",
            c_orders[0], c_orders[1], k_orders[0], k_orders[1]
        )))
    })
}

/// Criterion 8: deformed-norm conservation over 1000 steps, the continuity
/// residual refinement, and the exact free-wave flux.
pub fn check_continuity_unitarity(quick: bool) -> CheckResult {
    run_check("A8", "continuity and unitarity", || {
        let frame = GammaFrame::natural(0.5, -1.5, 6.0)?;
        let spec = PotentialSpec::new(Potential::Null, frame.clone())?;
        let packet = |grid: &Grid1D| -> Result<Wavefunction1D> {
            let mut psi = Wavefunction1D::from_fn(grid.clone(), NormMeasure::Deformed, |x| {
                let envelope = (-(x - 1.0) * (x - 1.0) / (4.0 * 0.09)).exp();
                Complex64::new(0.0, 3.0 * x).exp() * envelope
            })?;
            psi.normalize(&frame)?;
            Ok(psi)
        };

        let steps = if quick { 200 } else { 1000 };
        let grid = Grid1D::uniform_u(&frame, -1.5, 6.0, if quick { 501 } else { 1001 })?;
        let out = time_evolve(&packet(&grid)?, &spec, 1e-4, steps, steps)?;
        let drift = (out.deformed_norms.last().unwrap() / out.deformed_norms[0] - 1.0).abs();

        let residual = |points: usize, dt: f64| -> Result<f64> {
            let g = Grid1D::uniform_u(&frame, -1.5, 6.0, points)?;
            let run = time_evolve(&packet(&g)?, &spec, dt, 2, 1)?;
            continuity_residual(&run.snapshots[0], &run.snapshots[1], &run.snapshots[2], dt, &frame)
        };
        let r0 = residual(501, 4e-4)?;
        let r1 = residual(1001, 2e-4)?;
        let r2 = residual(2001, 1e-4)?;
        let orders = [(r0 / r1).log2(), (r1 / r2).log2()];

        let mut flux_dev = 0.0_f64;
        for &g in &[-0.5, 0.0, 0.5] {
            let wframe = GammaFrame::natural(g, 0.0, 1.0)?;
            let wgrid = Grid1D::uniform(0.0, 1.0, 801)?;
            for &k in &[1.0, 2.0, 4.0] {
                let wave = FreeWave::new(k, 1, wframe.clone())?;
                for j in wave.flux(&wgrid)? {
                    flux_dev = flux_dev.max((j - k).abs());
                }
            }
        }

        let ok = drift < 1e-10
            && orders.iter().all(|o| (o - 2.0).abs() <= 0.4)
            && flux_dev < 1e-10;
        Ok((ok, format!(
            "norm drift {drift:.1e} over {steps} steps (1e-10), residual orders {:.2}/{:.2} (~2), \
             flux dev {flux_dev:.1e} (1e-10)",
            orders[0], orders[1]
        )))
    })
}

/// Criterion 9: the deformed uncertainty inequality with a measured,
/// shrinking discretization allowance.
pub fn check_uncertainty(quick: bool) -> CheckResult {
    run_check("A9", "uncertainty inequality", || {
        let gammas: &[f64] = if quick { &[0.0, 0.5] } else { &[-0.5, 0.0, 0.5, 1.0] };
        let n_max = if quick { 4 } else { 10 };
        let report = |g: f64, n: usize, points: usize| -> Result<(f64, f64)> {
            let (frame, well) = natural_well(g)?;
            let grid = Grid1D::uniform(0.0, 1.0, points)?;
            let psi = well.wavefunction(n, &grid)?;
            let rep = expectations(&psi, &frame)?;
            Ok((rep.uncertainty_product, rep.uncertainty_bound))
        };

        let mut worst_violation = f64::NEG_INFINITY;
        let mut max_eps = 0.0_f64;
        for &g in gammas {
            for n in 1..=n_max {
                let (p_fine, b_fine) = report(g, n, 4001)?;
                let (p_coarse, b_coarse) = report(g, n, 2001)?;
                let eps_h = (p_fine - p_coarse).abs() + (b_fine - b_coarse).abs();
                max_eps = max_eps.max(eps_h);
                let violation = b_fine - eps_h - p_fine;
                worst_violation = worst_violation.max(violation);
            }
        }

        // the allowance itself must shrink at second order
        let eps_at = |points: usize, points_half: usize| -> Result<f64> {
            let (p1, b1) = report(0.5, 5, points)?;
            let (p2, b2) = report(0.5, 5, points_half)?;
            Ok((p1 - p2).abs() + (b1 - b2).abs())
        };
        let eps_coarse = eps_at(2001, 1001)?;
        let eps_fine = eps_at(4001, 2001)?;
        let eps_order = (eps_coarse / eps_fine).log2();

        let ok = worst_violation <= 0.0 && (eps_order - 2.0).abs() <= 0.8;
        Ok((ok, format!(
            "worst bound-product margin {:.2e} (must be <= 0), eps_h max {max_eps:.1e}, \
             eps_h order {eps_order:.2} (~2)",
            worst_violation
        )))
    })
}

/// Runs the whole suite; `quick` trims sweeps to fit the 30-second budget.
pub fn run_all(quick: bool) -> Vec<CheckResult> {
    vec![
        check_spectrum(quick),
        check_spectrum_ordering(quick),
        check_mean_position(quick),
        check_normalization(quick),
        check_barrier(quick),
        check_density_2d(quick),
        check_operator_identities(quick),
        check_continuity_unitarity(quick),
        check_uncertainty(quick),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injected_normalization_fault_is_caught() {
        let result = check_normalization_with_scale(true, 1.01);
        assert!(!result.passed, "1% perturbation of A_n must fail: {}", result.detail);
    }

    #[test]
    fn quick_suite_passes() {
        for check in run_all(true) {
            println!("{}", check.line());
            assert!(check.passed, "{}", check.line());
        }
    }
}
