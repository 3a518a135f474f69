//! Sweep commands: each emits CSV files (and optional SVG plots) into the
//! output directory and returns the list of written paths.

use std::path::PathBuf;

use num_complex::Complex64;

use crate::analytic::{BarrierSpec, FreeWave, WellSpec};
use crate::analytic::well2d_density;
use crate::error::Error;
use crate::frame::GammaFrame;
use crate::grid::Grid1D;
use crate::numeric::{
    continuity_residual, solve_bound_states, time_evolve, transfer_matrix_transmission,
    Potential, PotentialSpec,
};
use crate::quadrature::quadrature;
use crate::wavefunction::{NormMeasure, Wavefunction1D};

use super::config::RunConfig;
use super::output::{gamma_tag, heatmap, line_plot, write_csv, Series};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(#[from] super::config::ConfigError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Lib(#[from] Error),
}

type CmdResult = Result<Vec<PathBuf>, CliError>;

fn frame_for_well(config: &RunConfig, gamma: f64) -> Result<GammaFrame, Error> {
    GammaFrame::new(gamma, config.mass, config.hbar, 0.0, config.length)
}

/// γ sweep for the inset-style files: [-0.9, 2] in fixed steps.
fn gamma_sweep(quick: bool) -> Vec<f64> {
    let step: f64 = if quick { 0.25 } else { 0.05 };
    let count = ((2.0 - (-0.9)) / step).round() as usize;
    (0..=count).map(|i| -0.9 + step * i as f64).collect()
}

/// Well spectra and mean positions, analytic next to numeric with
/// relative errors.
pub fn cmd_well1d(config: &RunConfig) -> CmdResult {
    let mut written = Vec::new();
    let max_n = if config.quick { config.max_n.min(5) } else { config.max_n };

    // (i) E_n vs n for the configured γ list
    let mut header = vec!["n".to_string()];
    for &g in &config.gammas {
        let tag = gamma_tag(g);
        header.push(format!("E_analytic_gamma{tag}"));
        header.push(format!("E_numeric_gamma{tag}"));
        header.push(format!("rel_error_gamma{tag}"));
    }
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); header.len()];
    for (i, n) in (1..=max_n).enumerate() {
        let _ = i;
        columns[0].push(n as f64);
    }
    for (gi, &g) in config.gammas.iter().enumerate() {
        let frame = frame_for_well(config, g)?;
        let well = WellSpec::new(config.length, frame.clone())?;
        let spec = PotentialSpec::new(Potential::InfiniteWell { length: config.length }, frame)?;
        let solution = solve_bound_states(&spec, max_n, config.grid)?;
        for n in 1..=max_n {
            let analytic = well.energy(n)?;
            let numeric = solution.energies[n - 1];
            columns[1 + 3 * gi].push(analytic);
            columns[2 + 3 * gi].push(numeric);
            columns[3 + 3 * gi].push((numeric - analytic).abs() / analytic.abs());
        }
    }
    let rows: Vec<Vec<f64>> = (0..max_n)
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();
    let path = config.out_dir.join("well1d_energy_vs_n.csv");
    write_csv(&path, &config.metadata(), &header, &rows)?;
    written.push(path);

    // (ii) E vs γ for n = 1..3 and (iii) <x> vs γ for n in {1,2,3,20}:
    // one 20-state solve per sweep point feeds both files
    let sweep = gamma_sweep(config.quick);
    let inset_levels = [1usize, 2, 3];
    let mean_levels = [1usize, 2, 3, 20];
    let mut e_header = vec!["gamma".to_string()];
    for n in inset_levels {
        e_header.push(format!("E_analytic_n{n}"));
        e_header.push(format!("E_numeric_n{n}"));
        e_header.push(format!("rel_error_n{n}"));
    }
    let mut x_header = vec!["gamma".to_string()];
    for n in mean_levels {
        x_header.push(format!("mean_x_analytic_n{n}"));
        x_header.push(format!("mean_x_numeric_n{n}"));
        x_header.push(format!("rel_error_n{n}"));
    }
    let mut e_rows = Vec::with_capacity(sweep.len());
    let mut x_rows = Vec::with_capacity(sweep.len());
    for &g in &sweep {
        let frame = frame_for_well(config, g)?;
        let well = WellSpec::new(config.length, frame.clone())?;
        let spec =
            PotentialSpec::new(Potential::InfiniteWell { length: config.length }, frame.clone())?;
        let solution = solve_bound_states(&spec, 20, config.grid)?;
        let mut e_row = vec![g];
        for n in inset_levels {
            let analytic = well.energy(n)?;
            let numeric = solution.energies[n - 1];
            e_row.push(analytic);
            e_row.push(numeric);
            e_row.push((numeric - analytic).abs() / analytic.abs());
        }
        e_rows.push(e_row);
        let mut x_row = vec![g];
        for n in mean_levels {
            let analytic = well.mean_x(n)?;
            let state = &solution.states[n - 1];
            let xs = state.grid().points();
            let integrand: Vec<f64> = state
                .density()
                .iter()
                .zip(xs)
                .map(|(&r, &x)| r * x)
                .collect();
            let numeric = quadrature(&integrand, state.grid(), NormMeasure::Standard, &frame)?;
            x_row.push(analytic);
            x_row.push(numeric);
            x_row.push((numeric - analytic).abs() / analytic.abs());
        }
        x_rows.push(x_row);
    }
    let e_path = config.out_dir.join("well1d_energy_vs_gamma.csv");
    write_csv(&e_path, &config.metadata(), &e_header, &e_rows)?;
    written.push(e_path);
    let x_path = config.out_dir.join("well1d_mean_x_vs_gamma.csv");
    write_csv(&x_path, &config.metadata(), &x_header, &x_rows)?;
    written.push(x_path);

    if config.svg {
        let mut spectrum_series = Vec::new();
        for (gi, &g) in config.gammas.iter().enumerate() {
            spectrum_series.push(Series {
                name: format!("gamma = {g}"),
                points: (0..max_n)
                    .map(|r| (rows[r][0], rows[r][1 + 3 * gi]))
                    .collect(),
            });
        }
        written.push(line_plot(
            &config.out_dir.join("well1d_energy_vs_n.svg"),
            "Infinite-well energies",
            "n",
            "E_n",
            &spectrum_series,
        )?);
        let inset_series: Vec<Series> = inset_levels
            .iter()
            .enumerate()
            .map(|(idx, n)| Series {
                name: format!("n = {n}"),
                points: e_rows.iter().map(|r| (r[0], r[1 + 3 * idx])).collect(),
            })
            .collect();
        written.push(line_plot(
            &config.out_dir.join("well1d_energy_vs_gamma.svg"),
            "Energy against gamma",
            "gamma",
            "E_n",
            &inset_series,
        )?);
        let mean_series: Vec<Series> = mean_levels
            .iter()
            .enumerate()
            .map(|(idx, n)| Series {
                name: format!("n = {n}"),
                points: x_rows.iter().map(|r| (r[0], r[1 + 3 * idx])).collect(),
            })
            .collect();
        written.push(line_plot(
            &config.out_dir.join("well1d_mean_x_vs_gamma.svg"),
            "Average position in the well",
            "gamma",
            "<x>",
            &mean_series,
        )?);
    }
    Ok(written)
}

/// 2D box densities for the canonical quantum-number pairs.
pub fn cmd_well2d(config: &RunConfig) -> CmdResult {
    let mut written = Vec::new();
    let pairs: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 2), (20, 20)];
    let axis_points = if config.quick { 401 } else { config.grid.min(1200) + 1 };
    for &g in &config.gammas {
        let frame = frame_for_well(config, g)?;
        let well = WellSpec::new(config.length, frame.clone())?;
        let grid = Grid1D::uniform(0.0, config.length, axis_points)?;
        for (nx, ny) in pairs {
            let rho = well2d_density(nx, ny, &well, &well, &grid, &grid)?;
            let mut header = vec!["y_over_x".to_string()];
            for &x in grid.points() {
                header.push(format!("{x:.6e}"));
            }
            let mut rows = Vec::with_capacity(grid.len());
            for (iy, &y) in grid.points().iter().enumerate() {
                let mut row = Vec::with_capacity(grid.len() + 1);
                row.push(y);
                for ix in 0..grid.len() {
                    row.push(rho.value(ix, iy));
                }
                rows.push(row);
            }
            let mut metadata = config.metadata();
            metadata.push(("nx".into(), nx.to_string()));
            metadata.push(("ny".into(), ny.to_string()));
            metadata.push(("total_mass_trapezoid".into(), format!("{:.12e}", rho.total_mass())));
            let tag = gamma_tag(g);
            let path = config
                .out_dir
                .join(format!("well2d_density_n{nx}{ny}_gamma{tag}.csv"));
            write_csv(&path, &metadata, &header, &rows)?;
            written.push(path);

            if config.svg {
                written.push(heatmap(
                    &config
                        .out_dir
                        .join(format!("well2d_density_n{nx}{ny}_gamma{tag}.svg")),
                    &format!("2D box density, nx = {nx}, ny = {ny}, gamma = {g}"),
                    grid.points(),
                    grid.points(),
                    &rho.values,
                )?);
            }
        }
    }
    Ok(written)
}

/// Transmission against E/V0 per γ, closed form next to the
/// transfer-matrix route, plus the fixed-energy γ sweep.
pub fn cmd_barrier(config: &RunConfig) -> CmdResult {
    let mut written = Vec::new();
    let mut metadata = config.metadata();
    metadata.push((
        "note".into(),
        format!("barrier width a = {} (defaulted when not given)", config.barrier_width),
    ));

    let build = |gamma: f64| -> Result<BarrierSpec, Error> {
        let margin = 0.1 * config.barrier_width;
        let x_lo = if gamma > 0.0 {
            (-1.0 / gamma * 0.5).max(-margin)
        } else {
            -margin
        };
        let frame = GammaFrame::new(
            gamma,
            config.mass,
            config.hbar,
            x_lo,
            config.barrier_width * 1.1,
        )?;
        BarrierSpec::new(config.v0, config.barrier_width, frame)
    };

    let step: f64 = if config.quick { 0.02 } else { 0.005 };
    let count = (4.0 / step).round() as usize;
    let ratios: Vec<f64> = (1..=count).map(|i| step * i as f64).collect();

    let mut header = vec!["E_over_V0".to_string()];
    for &g in &config.gammas {
        let tag = gamma_tag(g);
        header.push(format!("T_closed_gamma{tag}"));
        header.push(format!("T_transfer_gamma{tag}"));
        header.push(format!("abs_error_gamma{tag}"));
    }
    let specs: Vec<BarrierSpec> = config
        .gammas
        .iter()
        .map(|&g| build(g))
        .collect::<Result<_, _>>()?;
    let curves: Vec<_> = specs
        .iter()
        .map(|s| s.transmission_curve(&ratios))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(ratios.len());
    for (i, &ratio) in ratios.iter().enumerate() {
        let energy = ratio * config.v0;
        let mut row = vec![ratio];
        for (spec, curve) in specs.iter().zip(&curves) {
            let closed = curve.transmission[i];
            let transfer = transfer_matrix_transmission(energy, spec)?;
            row.push(closed);
            row.push(transfer);
            row.push((closed - transfer).abs());
        }
        rows.push(row);
    }
    let path = config.out_dir.join("barrier_transmission.csv");
    write_csv(&path, &metadata, &header, &rows)?;
    written.push(path);

    // resonance table: T = 1 wherever q·a' = jπ
    let mut res_header = vec!["gamma".to_string(), "j".to_string()];
    res_header.push("E_resonance".to_string());
    res_header.push("E_over_V0".to_string());
    res_header.push("T_at_resonance".to_string());
    let mut res_rows = Vec::new();
    for (spec, &g) in specs.iter().zip(&config.gammas) {
        for j in 1..=5 {
            let e = spec.resonance_energy(j)?;
            res_rows.push(vec![g, j as f64, e, e / config.v0, spec.transmission(e)?]);
        }
    }
    let res_path = config.out_dir.join("barrier_resonances.csv");
    write_csv(&res_path, &metadata, &res_header, &res_rows)?;
    written.push(res_path);

    // inset analogue: T against γ at fixed E/V0
    let fixed_ratios = [0.5, 1.5, 2.5];
    let gstep: f64 = if config.quick { 0.05 } else { 0.01 };
    let gcount = ((2.0 - (-0.5)) / gstep).round() as usize;
    let mut inset_header = vec!["gamma".to_string()];
    for r in fixed_ratios {
        inset_header.push(format!("T_closed_Eratio{r}"));
        inset_header.push(format!("T_transfer_Eratio{r}"));
    }
    let mut inset_rows = Vec::new();
    for i in 0..=gcount {
        let g = -0.5 + gstep * i as f64;
        let spec = build(g)?;
        let mut row = vec![g];
        for r in fixed_ratios {
            let e = r * config.v0;
            row.push(spec.transmission(e)?);
            row.push(transfer_matrix_transmission(e, &spec)?);
        }
        inset_rows.push(row);
    }
    let inset_path = config.out_dir.join("barrier_transmission_vs_gamma.csv");
    write_csv(&inset_path, &metadata, &inset_header, &inset_rows)?;
    written.push(inset_path);

    if config.svg {
        let series: Vec<Series> = config
            .gammas
            .iter()
            .enumerate()
            .map(|(gi, &g)| Series {
                name: format!("gamma = {g}"),
                points: rows.iter().map(|r| (r[0], r[1 + 3 * gi])).collect(),
            })
            .collect();
        written.push(line_plot(
            &config.out_dir.join("barrier_transmission.svg"),
            "Barrier transmission",
            "E/V0",
            "T",
            &series,
        )?);
        let inset_series: Vec<Series> = fixed_ratios
            .iter()
            .enumerate()
            .map(|(ri, r)| Series {
                name: format!("E/V0 = {r}"),
                points: inset_rows.iter().map(|row| (row[0], row[1 + 2 * ri])).collect(),
            })
            .collect();
        written.push(line_plot(
            &config.out_dir.join("barrier_transmission_vs_gamma.svg"),
            "Transmission against gamma",
            "gamma",
            "T",
            &inset_series,
        )?);
    }
    Ok(written)
}

/// Free-wave profiles (Eq.-of-motion solutions with |φ| = 1) and their
/// uniform flux columns.
pub fn cmd_free(config: &RunConfig) -> CmdResult {
    let mut written = Vec::new();
    let k_values = [1.0, 2.0, 4.0];
    let points = if config.quick { 201 } else { 801 };
    for &g in &config.gammas {
        let frame = frame_for_well(config, g)?;
        let grid = Grid1D::uniform(0.0, config.length, points)?;
        let mut header = vec!["x".to_string()];
        for k in k_values {
            header.push(format!("re_k{k}"));
            header.push(format!("im_k{k}"));
            header.push(format!("flux_k{k}"));
        }
        let mut columns: Vec<Vec<f64>> = vec![grid.points().to_vec()];
        for k in k_values {
            let wave = FreeWave::new(k, 1, frame.clone())?;
            let mut re = Vec::with_capacity(grid.len());
            let mut im = Vec::with_capacity(grid.len());
            for &x in grid.points() {
                let v = wave.eval(x)?;
                re.push(v.re);
                im.push(v.im);
            }
            let flux = wave.flux(&grid)?;
            columns.push(re);
            columns.push(im);
            columns.push(flux);
        }
        let rows: Vec<Vec<f64>> = (0..grid.len())
            .map(|r| columns.iter().map(|c| c[r]).collect())
            .collect();
        let mut metadata = config.metadata();
        metadata.push((
            "k".into(),
            k_values.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", "),
        ));
        let tag = gamma_tag(g);
        let path = config.out_dir.join(format!("free_wave_gamma{tag}.csv"));
        write_csv(&path, &metadata, &header, &rows)?;
        written.push(path);

        if config.svg {
            let series: Vec<Series> = k_values
                .iter()
                .enumerate()
                .flat_map(|(ki, k)| {
                    [
                        Series {
                            name: format!("Re, k = {k}"),
                            points: rows.iter().map(|r| (r[0], r[1 + 3 * ki])).collect(),
                        },
                        Series {
                            name: format!("Im, k = {k}"),
                            points: rows.iter().map(|r| (r[0], r[2 + 3 * ki])).collect(),
                        },
                    ]
                })
                .collect();
            written.push(line_plot(
                &config.out_dir.join(format!("free_wave_gamma{tag}.svg")),
                &format!("Free waves, gamma = {g}"),
                "x",
                "phi",
                &series,
            )?);
        }
    }
    Ok(written)
}

/// Evolution defaults: the packet is centered in a domain clipped away
/// from the singular point, with width a fixed fraction of the span.
pub struct EvolveSetup {
    pub x_lo: f64,
    pub x_hi: f64,
    pub x0: f64,
    pub sigma: f64,
    pub k0: f64,
    pub dt: f64,
    pub steps: usize,
}

impl EvolveSetup {
    pub fn for_gamma(gamma: f64, quick: bool) -> Self {
        let x_lo = if gamma > 0.0 { (-0.82 / gamma).max(-1.5) } else { -1.5 };
        let x_hi = if gamma < 0.0 { (0.82 / -gamma).min(6.0) } else { 6.0 };
        let span = x_hi - x_lo;
        Self {
            x_lo,
            x_hi,
            x0: 0.5 * (x_lo + x_hi),
            sigma: span / 18.0,
            k0: 3.0,
            dt: 5e-5,
            steps: if quick { 200 } else { 1000 },
        }
    }
}

/// Wavepacket propagation: snapshot table, norm-drift log, and a
/// continuity-residual refinement study per γ.
pub fn cmd_evolve(config: &RunConfig) -> CmdResult {
    let mut written = Vec::new();
    for &g in &config.gammas {
        let setup = EvolveSetup::for_gamma(g, config.quick);
        let frame = GammaFrame::new(g, config.mass, config.hbar, setup.x_lo, setup.x_hi)?;
        let spec = PotentialSpec::new(Potential::Null, frame.clone())?;
        let grid = Grid1D::uniform_u(&frame, setup.x_lo, setup.x_hi, config.grid + 1)?;
        let mut psi0 = Wavefunction1D::from_fn(grid.clone(), NormMeasure::Deformed, |x| {
            let envelope =
                (-(x - setup.x0) * (x - setup.x0) / (4.0 * setup.sigma * setup.sigma)).exp();
            Complex64::new(0.0, setup.k0 * x).exp() * envelope
        })?;
        psi0.normalize(&frame)?;
        let record_every = (setup.steps / 10).max(1);
        let result = time_evolve(&psi0, &spec, setup.dt, setup.steps, record_every)?;

        let mut metadata = config.metadata();
        metadata.push(("x_lo".into(), format!("{}", setup.x_lo)));
        metadata.push(("x_hi".into(), format!("{}", setup.x_hi)));
        metadata.push(("x0".into(), format!("{}", setup.x0)));
        metadata.push(("sigma".into(), format!("{}", setup.sigma)));
        metadata.push(("k0".into(), format!("{}", setup.k0)));
        metadata.push(("dt".into(), format!("{}", setup.dt)));
        metadata.push(("steps".into(), format!("{}", setup.steps)));
        for w in &result.warnings {
            metadata.push(("warning".into(), w.clone()));
        }
        let tag = gamma_tag(g);

        // snapshots: x column, then re/im/rho per recorded time
        let mut header = vec!["x".to_string()];
        for &t in &result.times {
            header.push(format!("re_t{t:.4}"));
            header.push(format!("im_t{t:.4}"));
            header.push(format!("rho_t{t:.4}"));
        }
        let mut rows = Vec::with_capacity(grid.len());
        for (i, &x) in grid.points().iter().enumerate() {
            let mut row = vec![x];
            for snap in &result.snapshots {
                let a = snap.amplitudes()[i];
                row.push(a.re);
                row.push(a.im);
                row.push(a.norm_sqr());
            }
            rows.push(row);
        }
        let snap_path = config.out_dir.join(format!("evolve_snapshots_gamma{tag}.csv"));
        write_csv(&snap_path, &metadata, &header, &rows)?;
        written.push(snap_path);

        // norm log
        let norm_header = vec![
            "t".to_string(),
            "deformed_norm".to_string(),
            "deformed_drift".to_string(),
            "standard_norm".to_string(),
        ];
        let n0 = result.deformed_norms[0];
        let norm_rows: Vec<Vec<f64>> = result
            .times
            .iter()
            .zip(&result.deformed_norms)
            .zip(&result.standard_norms)
            .map(|((&t, &nd), &ns)| vec![t, nd, nd / n0 - 1.0, ns])
            .collect();
        let norm_path = config.out_dir.join(format!("evolve_norms_gamma{tag}.csv"));
        write_csv(&norm_path, &metadata, &norm_header, &norm_rows)?;
        written.push(norm_path);

        // continuity-residual refinement study: a short run at (h, dt) and
        // at (h/2, dt/2) shows the O(h² + dt²) decay
        let mut cont_rows = Vec::new();
        for (factor, dt) in [(1usize, 4e-4), (2, 2e-4)] {
            let n_pts = config.grid / 2 * factor + 1;
            let fine = Grid1D::uniform_u(&frame, setup.x_lo, setup.x_hi, n_pts)?;
            let mut probe = Wavefunction1D::from_fn(fine.clone(), NormMeasure::Deformed, |x| {
                let envelope =
                    (-(x - setup.x0) * (x - setup.x0) / (4.0 * setup.sigma * setup.sigma)).exp();
                Complex64::new(0.0, setup.k0 * x).exp() * envelope
            })?;
            probe.normalize(&frame)?;
            let out = time_evolve(&probe, &spec, dt, 2, 1)?;
            let residual = continuity_residual(
                &out.snapshots[0],
                &out.snapshots[1],
                &out.snapshots[2],
                dt,
                &frame,
            )?;
            let h_u = frame.coord_to_u(fine.points()[1])? - frame.coord_to_u(fine.points()[0])?;
            cont_rows.push(vec![h_u, dt, residual]);
        }
        let cont_header = vec!["h_u".to_string(), "dt".to_string(), "max_residual".to_string()];
        let cont_path = config.out_dir.join(format!("evolve_continuity_gamma{tag}.csv"));
        write_csv(&cont_path, &metadata, &cont_header, &cont_rows)?;
        written.push(cont_path);

        if config.svg {
            let series: Vec<Series> = result
                .times
                .iter()
                .enumerate()
                .step_by((result.times.len() / 4).max(1))
                .map(|(ti, t)| Series {
                    name: format!("t = {t:.4}"),
                    points: rows.iter().map(|r| (r[0], r[3 + 3 * ti])).collect(),
                })
                .collect();
            written.push(line_plot(
                &config.out_dir.join(format!("evolve_density_gamma{tag}.svg")),
                &format!("Wavepacket density, gamma = {g}"),
                "x",
                "|psi|^2",
                &series,
            )?);
        }
    }
    Ok(written)
}
