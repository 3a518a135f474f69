//! End-to-end tests of the gamma-qm binary: emitted files, determinism,
//! exit codes.

use std::path::PathBuf;
use std::process::Command;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gamma-qm"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gamma_qm_cli_{tag}"));
    std::fs::remove_dir_all(&dir).ok();
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn well1d_emits_expected_files() {
    let dir = temp_dir("well1d");
    let status = binary()
        .args([
            "well1d",
            "--quick",
            "--grid",
            "400",
            "--n",
            "3",
            "--out",
            dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    for name in [
        "well1d_energy_vs_n.csv",
        "well1d_energy_vs_gamma.csv",
        "well1d_mean_x_vs_gamma.csv",
    ] {
        let path = dir.join(name);
        assert!(path.exists(), "missing {name}");
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# command = well1d\n"), "metadata header missing in {name}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn barrier_output_is_byte_identical_across_runs() {
    let dir = temp_dir("barrier_det");
    let run = || {
        let status = binary()
            .args([
                "barrier",
                "--quick",
                "--gamma",
                "0.5",
                "--out",
                dir.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(dir.join("barrier_transmission.csv")).unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "identical config must give byte-identical CSV");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn svg_emission_is_optional() {
    let dir = temp_dir("svg");
    let status = binary()
        .args([
            "free",
            "--quick",
            "--gamma",
            "0.5",
            "--svg",
            "--out",
            dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let svg = dir.join("free_wave_gamma0.5.svg");
    assert!(svg.exists());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("version=\"1.1\""), "must be standalone SVG 1.1");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_config_exits_with_code_two() {
    // gamma = -1 puts the well edge at the singular point
    let out = binary()
        .args(["well1d", "--gamma", "-1.0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("singular"), "actionable message expected, got: {stderr}");

    let out = binary()
        .args(["well1d", "--grid", "15"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_is_honored_and_flags_win() {
    let dir = temp_dir("cfgfile");
    let cfg = dir.join("run.toml");
    std::fs::write(&cfg, "gamma = [0.25]\nn = 2\ngrid = 400\nquick = true\n").unwrap();
    let status = binary()
        .args([
            "well1d",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(dir.join("well1d_energy_vs_n.csv")).unwrap();
    assert!(text.contains("# gamma = 0.25\n"));
    assert!(text.contains("# grid = 400\n"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_config_key_exits_with_code_two() {
    let dir = temp_dir("badcfg");
    let cfg = dir.join("bad.toml");
    std::fs::write(&cfg, "wavelength = 1.0\n").unwrap();
    let out = binary()
        .args(["well1d", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_quick_passes_with_exit_zero() {
    let out = binary().args(["verify", "--quick"]).output().unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "verify failed:\n{stdout}");
    // one pass/fail line per criterion plus the end-to-end line
    let lines: Vec<&str> = stdout.lines().filter(|l| l.starts_with("[PASS]")).collect();
    assert_eq!(lines.len(), 10, "expected 10 PASS lines:\n{stdout}");
}

#[test]
fn well2d_density_matrix_has_metadata_and_mass() {
    let dir = temp_dir("well2d");
    let status = binary()
        .args([
            "well2d",
            "--quick",
            "--gamma",
            "1.0",
            "--out",
            dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let path = dir.join("well2d_density_n11_gamma1.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# nx = 1\n"));
    let mass_line = text
        .lines()
        .find(|l| l.starts_with("# total_mass_trapezoid"))
        .expect("mass metadata");
    let mass: f64 = mass_line.split('=').nth(1).unwrap().trim().parse().unwrap();
    assert!((mass - 1.0).abs() < 1e-6, "total mass {mass}");
    std::fs::remove_dir_all(&dir).ok();
}
