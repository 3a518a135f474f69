//! Run configuration: CLI flags, optional config file, built-in defaults.
//! Precedence is flags > file > defaults.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

/// Config or argument problems; mapped to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

#[derive(Debug, Parser)]
#[command(
    name = "gamma-qm",
    about = "Deformed-translation quantum mechanics: spectra, scattering, propagation",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// 1D infinite well: energies and mean positions, analytic vs numeric
    Well1d(CommonArgs),
    /// 2D box probability densities
    Well2d(CommonArgs),
    /// Rectangular-barrier transmission curves
    Barrier(CommonArgs),
    /// Free-particle phase waves and their flux
    Free(CommonArgs),
    /// Crank–Nicolson wavepacket propagation with norm logs
    Evolve(CommonArgs),
    /// Run the verification suite and report per-check status
    Verify(CommonArgs),
}

#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Deformation parameter; repeat for several values
    #[arg(long = "gamma", allow_negative_numbers = true)]
    pub gamma: Vec<f64>,
    /// Well width
    #[arg(long = "L", allow_negative_numbers = true)]
    pub length: Option<f64>,
    /// Barrier height
    #[arg(long = "V0", allow_negative_numbers = true)]
    pub v0: Option<f64>,
    /// Barrier width
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Highest quantum number
    #[arg(long)]
    pub n: Option<usize>,
    /// Grid intervals for numerics
    #[arg(long)]
    pub grid: Option<usize>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also emit SVG plots
    #[arg(long)]
    pub svg: bool,
    /// Config file (flat TOML key = value; keys mirror the flags)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Reduced sweep for fast runs
    #[arg(long)]
    pub quick: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Well1d,
    Well2d,
    Barrier,
    Free,
    Evolve,
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Well1d => "well1d",
            Command::Well2d => "well2d",
            Command::Barrier => "barrier",
            Command::Free => "free",
            Command::Evolve => "evolve",
            Command::Verify => "verify",
        }
    }
}

/// Fully resolved run parameters; every field has a value after resolution
/// and is echoed into emitted metadata headers.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub gammas: Vec<f64>,
    pub mass: f64,
    pub hbar: f64,
    pub length: f64,
    pub v0: f64,
    pub barrier_width: f64,
    pub max_n: usize,
    pub grid: usize,
    pub out_dir: PathBuf,
    pub svg: bool,
    pub quick: bool,
}

/// Values read from a config file; all optional.
#[derive(Debug, Default)]
struct FileConfig {
    gamma: Option<Vec<f64>>,
    length: Option<f64>,
    v0: Option<f64>,
    a: Option<f64>,
    n: Option<usize>,
    grid: Option<usize>,
    out: Option<PathBuf>,
    svg: Option<bool>,
    quick: Option<bool>,
    mass: Option<f64>,
    hbar: Option<f64>,
}

fn parse_file(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| ConfigError(format!("invalid config {}: {e}", path.display())))?;
    let mut cfg = FileConfig::default();
    for (key, value) in table {
        match key.as_str() {
            "gamma" => {
                let list = match &value {
                    toml::Value::Array(items) => items
                        .iter()
                        .map(|v| as_f64(v, "gamma"))
                        .collect::<Result<Vec<_>, _>>()?,
                    other => vec![as_f64(other, "gamma")?],
                };
                cfg.gamma = Some(list);
            }
            "L" => cfg.length = Some(as_f64(&value, "L")?),
            "V0" => cfg.v0 = Some(as_f64(&value, "V0")?),
            "a" => cfg.a = Some(as_f64(&value, "a")?),
            "n" => cfg.n = Some(as_usize(&value, "n")?),
            "grid" => cfg.grid = Some(as_usize(&value, "grid")?),
            "out" => match value {
                toml::Value::String(s) => cfg.out = Some(PathBuf::from(s)),
                _ => return Err(ConfigError("config key 'out' must be a string".into())),
            },
            "svg" => cfg.svg = Some(as_bool(&value, "svg")?),
            "quick" => cfg.quick = Some(as_bool(&value, "quick")?),
            "mass" => cfg.mass = Some(as_f64(&value, "mass")?),
            "hbar" => cfg.hbar = Some(as_f64(&value, "hbar")?),
            other => {
                return Err(ConfigError(format!(
                    "unknown config key '{other}' (expected gamma, L, V0, a, n, grid, out, svg, quick, mass, hbar)"
                )))
            }
        }
    }
    Ok(cfg)
}

fn as_f64(value: &toml::Value, key: &str) -> Result<f64, ConfigError> {
    match value {
        toml::Value::Float(f) => Ok(*f),
        toml::Value::Integer(i) => Ok(*i as f64),
        _ => Err(ConfigError(format!("config key '{key}' must be a number"))),
    }
}

fn as_usize(value: &toml::Value, key: &str) -> Result<usize, ConfigError> {
    match value {
        toml::Value::Integer(i) if *i >= 0 => Ok(*i as usize),
        _ => Err(ConfigError(format!("config key '{key}' must be a non-negative integer"))),
    }
}

fn as_bool(value: &toml::Value, key: &str) -> Result<bool, ConfigError> {
    match value {
        toml::Value::Boolean(b) => Ok(*b),
        _ => Err(ConfigError(format!("config key '{key}' must be a boolean"))),
    }
}

impl RunConfig {
    pub fn resolve(command: Command, args: &CommonArgs) -> Result<Self, ConfigError> {
        let file = match &args.config {
            Some(path) => parse_file(path)?,
            None => FileConfig::default(),
        };

        let default_gammas: &[f64] = match command {
            Command::Well2d => &[1.0],
            Command::Evolve => &[0.0, 0.5],
            _ => &[-0.5, 0.0, 0.5],
        };
        let gammas = if !args.gamma.is_empty() {
            args.gamma.clone()
        } else {
            file.gamma.unwrap_or_else(|| default_gammas.to_vec())
        };
        let default_grid = match command {
            Command::Well2d => 800,
            Command::Evolve => 2000,
            _ => 4000,
        };

        let config = Self {
            command,
            gammas,
            mass: file.mass.unwrap_or(1.0),
            hbar: file.hbar.unwrap_or(1.0),
            length: args.length.or(file.length).unwrap_or(1.0),
            v0: args.v0.or(file.v0).unwrap_or(18.0),
            barrier_width: args.a.or(file.a).unwrap_or(1.0),
            max_n: args.n.or(file.n).unwrap_or(10),
            grid: args.grid.or(file.grid).unwrap_or(default_grid),
            out_dir: args
                .out
                .clone()
                .or(file.out)
                .unwrap_or_else(|| PathBuf::from("out")),
            svg: args.svg || file.svg.unwrap_or(false),
            quick: args.quick || file.quick.unwrap_or(false),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.gammas.is_empty() {
            return Err(ConfigError("need at least one --gamma value".into()));
        }
        for &g in &self.gammas {
            if !g.is_finite() {
                return Err(ConfigError(format!("gamma must be finite, got {g}")));
            }
            if 1.0 + g * self.length <= 0.0 {
                return Err(ConfigError(format!(
                    "gamma = {g} makes 1 + gamma*L = {} <= 0: the well [0, {}] touches the \
                     singular point x = -1/gamma",
                    1.0 + g * self.length,
                    self.length
                )));
            }
            if 1.0 + g * self.barrier_width <= 0.0 {
                return Err(ConfigError(format!(
                    "gamma = {g} makes 1 + gamma*a <= 0 for barrier width {}",
                    self.barrier_width
                )));
            }
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(ConfigError(format!("L must be positive, got {}", self.length)));
        }
        if !(self.v0 > 0.0 && self.v0.is_finite()) {
            return Err(ConfigError(format!("V0 must be positive, got {}", self.v0)));
        }
        if !(self.barrier_width > 0.0 && self.barrier_width.is_finite()) {
            return Err(ConfigError(format!("a must be positive, got {}", self.barrier_width)));
        }
        if !(self.mass > 0.0 && self.hbar > 0.0) {
            return Err(ConfigError(format!(
                "mass and hbar must be positive, got {} and {}",
                self.mass, self.hbar
            )));
        }
        if self.max_n < 1 {
            return Err(ConfigError("n must be at least 1".into()));
        }
        if self.grid < 16 || !self.grid.is_multiple_of(2) {
            return Err(ConfigError(format!(
                "grid must be an even interval count >= 16, got {}",
                self.grid
            )));
        }
        if (self.grid - 1) / self.max_n.max(20) < 8 {
            return Err(ConfigError(format!(
                "grid = {} is too coarse for n up to {}: raise --grid or lower --n",
                self.grid,
                self.max_n.max(20)
            )));
        }
        Ok(())
    }

    /// Metadata lines echoed at the top of every emitted file: all
    /// parameters, including defaulted ones.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let gammas = self
            .gammas
            .iter()
            .map(|g| format!("{g}"))
            .collect::<Vec<_>>()
            .join(", ");
        vec![
            ("command".into(), self.command.name().into()),
            ("gamma".into(), gammas),
            ("mass".into(), format!("{}", self.mass)),
            ("hbar".into(), format!("{}", self.hbar)),
            ("L".into(), format!("{}", self.length)),
            ("V0".into(), format!("{}", self.v0)),
            ("a".into(), format!("{}", self.barrier_width)),
            ("n".into(), format!("{}", self.max_n)),
            ("grid".into(), format!("{}", self.grid)),
            ("svg".into(), format!("{}", self.svg)),
            ("quick".into(), format!("{}", self.quick)),
        ]
    }
}
