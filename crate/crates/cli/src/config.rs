//! Run configuration read from a TOML file.
//!
//! Parsing is strict: unknown keys are errors, since a misspelt key would
//! otherwise silently fall back to a default in the wrong units.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gupnoise_core::bounds::{Constraint, DEFAULT_JOINT_RATIO};
use gupnoise_core::model::gup_convert;
use gupnoise_core::spectra::{FrequencyGrid, GridScale, LedgerMode};
use gupnoise_core::{Constants, Experiment, Gup};
use gupnoise_oracles::Scheme;
use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::library::PresetLibrary;

/// Grid used when the file has no `[grid]` table: 1001 log-spaced points over [Ω/10, 10Ω].
pub const DEFAULT_GRID_POINTS: usize = 1001;
pub const DEFAULT_SIM_TRAJECTORIES: usize = 64;
pub const DEFAULT_SIM_SEED: u64 = 20_240_601;
pub const DEFAULT_SIM_PRESET: &str = "purdy";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    preset: Option<String>,
    experiment: Option<RawExperiment>,
    #[serde(default)]
    presets: BTreeMap<String, RawExperiment>,
    ledger: Option<String>,
    gup: Option<RawGup>,
    grid: Option<RawGrid>,
    bounds: Option<RawBounds>,
    output: Option<RawOutput>,
    simulation: Option<RawSimulation>,
    verify: Option<RawVerify>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    name: Option<String>,
    temperature: f64,
    omega_m: f64,
    damping: f64,
    quality_factor: Option<f64>,
    drive_frequency: f64,
    cavity_length: f64,
    kappa: f64,
    mass: f64,
    power: f64,
    finesse: Option<f64>,
    s_min: Option<f64>,
}

impl RawExperiment {
    fn into_experiment(self, default_name: &str) -> Experiment {
        Experiment {
            name: self.name.unwrap_or_else(|| default_name.to_owned()),
            temperature: self.temperature,
            omega_m: self.omega_m,
            damping: self.damping,
            quality_factor: self.quality_factor.unwrap_or(0.0),
            drive_frequency: self.drive_frequency,
            cavity_length: self.cavity_length,
            kappa: self.kappa,
            mass: self.mass,
            power: self.power,
            finesse_quoted: self.finesse.unwrap_or(0.0),
            s_min: self.s_min.unwrap_or(0.0),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGup {
    #[serde(default)]
    alpha0: f64,
    #[serde(default)]
    gamma0: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    min: f64,
    max: f64,
    points: usize,
    scale: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBounds {
    constraints: Option<Vec<String>>,
    ratio: Option<f64>,
    omega_over_resonance: Option<f64>,
    presets: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: Option<PathBuf>,
    spectrum: Option<PathBuf>,
    bounds: Option<PathBuf>,
    verification: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimulation {
    preset: Option<String>,
    trajectories: Option<usize>,
    seed: Option<u64>,
    scheme: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVerify {
    tier: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// Quadrature and perturbation-identity checks only.
    Fast,
    /// Every oracle suite, including the stochastic simulation.
    Full,
}

impl Tier {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tier::Fast => "fast",
            Tier::Full => "full",
        }
    }
}

impl std::str::FromStr for Tier {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fast" => Ok(Tier::Fast),
            "full" => Ok(Tier::Full),
            other => Err(format!("unknown tier {other:?} (expected fast or full)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsSpec {
    pub constraints: Vec<Constraint<f64>>,
    /// Evaluation frequency as a multiple of each experiment's Ω.
    pub omega_over_resonance: f64,
    pub targets: Vec<Experiment>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub dir: PathBuf,
    pub spectrum: PathBuf,
    pub bounds: PathBuf,
    pub verification: PathBuf,
}

impl OutputSpec {
    /// Relative file names are resolved against `dir`.
    pub fn resolve(&self, file: &Path) -> PathBuf {
        if file.is_absolute() {
            file.to_path_buf()
        } else {
            self.dir.join(file)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSpec {
    pub experiment: Experiment,
    pub trajectories: usize,
    pub seed: u64,
    pub scheme: Scheme,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub library: PresetLibrary,
    pub alpha0: f64,
    pub gamma0: f64,
    pub gup: Gup,
    pub grid: FrequencyGrid,
    pub ledger_mode: LedgerMode,
    pub bounds: BoundsSpec,
    pub output: OutputSpec,
    pub simulation: SimulationSpec,
    pub tier: Tier,
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, column)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text, path)
}

/// Parses and validates config text; `origin` is only used in messages.
pub fn parse_config(text: &str, origin: &Path) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_column(text, s.start));
        CliError::Parse { path: origin.to_path_buf(), line, column, message: e.message().trim().to_owned() }
    })?;
    build(raw, origin)
}

fn build(raw: RawConfig, origin: &Path) -> Result<RunConfig> {
    let consts = Constants::codata2018();

    let mut library = PresetLibrary::builtin();
    for (name, row) in raw.presets {
        library.extend(&name, row.into_experiment(&name), format!("user preset from {}", origin.display()))?;
    }

    let experiment = match (raw.preset, raw.experiment) {
        (Some(name), None) => library.experiment(&name)?,
        (None, Some(row)) => {
            let exp = row.into_experiment("inline");
            exp.validate().map_err(|e| CliError::validation("experiment", e))?;
            exp
        }
        (Some(_), Some(_)) => return Err(CliError::validation("preset", "give either `preset` or `[experiment]`, not both")),
        (None, None) => return Err(CliError::validation("preset", "one of `preset` or `[experiment]` is required")),
    };

    let ledger_mode = match raw.ledger.as_deref() {
        None => LedgerMode::Exact,
        Some(s) => s.parse().map_err(|e| CliError::validation("ledger", e))?,
    };

    let (alpha0, gamma0) = raw.gup.map_or((0.0, 0.0), |g| (g.alpha0, g.gamma0));
    let gup = gup_convert(alpha0, gamma0, &consts).map_err(|e| CliError::validation("gup", e))?;

    let grid = match raw.grid {
        Some(g) => {
            let scale = match g.scale.as_deref() {
                None | Some("log") => GridScale::Log,
                Some("linear") => GridScale::Linear,
                Some(other) => {
                    return Err(CliError::validation("grid.scale", format!("unknown scale {other:?} (expected linear or log)")))
                }
            };
            FrequencyGrid { min: g.min, max: g.max, points: g.points, scale }
        }
        None => FrequencyGrid {
            min: experiment.omega_m / 10.0,
            max: experiment.omega_m * 10.0,
            points: DEFAULT_GRID_POINTS,
            scale: GridScale::Log,
        },
    };
    grid.validate().map_err(|e| CliError::validation("grid", e))?;

    let bounds = build_bounds(raw.bounds, &experiment, &library)?;

    let output = raw.output.map_or(
        OutputSpec { dir: PathBuf::from("."), spectrum: "spectrum.csv".into(), bounds: "bounds.json".into(), verification: "verification.json".into() },
        |o| OutputSpec {
            dir: o.dir.unwrap_or_else(|| PathBuf::from(".")),
            spectrum: o.spectrum.unwrap_or_else(|| "spectrum.csv".into()),
            bounds: o.bounds.unwrap_or_else(|| "bounds.json".into()),
            verification: o.verification.unwrap_or_else(|| "verification.json".into()),
        },
    );

    let simulation = build_simulation(raw.simulation, &library)?;

    let tier = match raw.verify.and_then(|v| v.tier) {
        None => Tier::Fast,
        Some(s) => s.parse().map_err(|e| CliError::validation("verify.tier", e))?,
    };

    Ok(RunConfig { experiment, library, alpha0, gamma0, gup, grid, ledger_mode, bounds, output, simulation, tier })
}

fn build_bounds(raw: Option<RawBounds>, experiment: &Experiment, library: &PresetLibrary) -> Result<BoundsSpec> {
    let raw = raw.unwrap_or(RawBounds { constraints: None, ratio: None, omega_over_resonance: None, presets: None });
    let ratio = raw.ratio.unwrap_or(DEFAULT_JOINT_RATIO);
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(CliError::validation("bounds.ratio", format!("must be finite and > 0, got {ratio}")));
    }
    let names = raw.constraints.unwrap_or_else(|| vec!["joint".into()]);
    if names.is_empty() {
        return Err(CliError::validation("bounds.constraints", "at least one constraint is required"));
    }
    let mut constraints = Vec::with_capacity(names.len());
    for name in &names {
        let c = match name.as_str() {
            "joint" => Constraint::Joint { ratio },
            "gamma_only" => Constraint::GammaOnly,
            other => {
                return Err(CliError::validation(
                    "bounds.constraints",
                    format!("unknown constraint {other:?} (expected joint or gamma_only)"),
                ))
            }
        };
        if constraints.contains(&c) {
            return Err(CliError::validation("bounds.constraints", format!("{name:?} listed twice")));
        }
        constraints.push(c);
    }
    let omega_over_resonance = raw.omega_over_resonance.unwrap_or(1.0);
    if !(omega_over_resonance.is_finite() && omega_over_resonance > 0.0) {
        return Err(CliError::validation(
            "bounds.omega_over_resonance",
            format!("must be finite and > 0, got {omega_over_resonance}"),
        ));
    }
    let targets = match raw.presets {
        None => vec![experiment.clone()],
        Some(names) if names.is_empty() => {
            return Err(CliError::validation("bounds.presets", "list at least one preset or omit the key"))
        }
        Some(names) => names.iter().map(|n| library.experiment(n)).collect::<Result<Vec<_>>>()?,
    };
    Ok(BoundsSpec { constraints, omega_over_resonance, targets })
}

fn build_simulation(raw: Option<RawSimulation>, library: &PresetLibrary) -> Result<SimulationSpec> {
    let raw = raw.unwrap_or(RawSimulation { preset: None, trajectories: None, seed: None, scheme: None });
    let experiment = library.experiment(raw.preset.as_deref().unwrap_or(DEFAULT_SIM_PRESET))?;
    let trajectories = raw.trajectories.unwrap_or(DEFAULT_SIM_TRAJECTORIES);
    if trajectories < 2 {
        return Err(CliError::validation("simulation.trajectories", "at least 2 trajectories are needed for error bars"));
    }
    let scheme = match raw.scheme.as_deref() {
        None => Scheme::ExactOuHybrid,
        Some(s) => s.parse().map_err(|e| CliError::validation("simulation.scheme", e))?,
    };
    Ok(SimulationSpec { experiment, trajectories, seed: raw.seed.unwrap_or(DEFAULT_SIM_SEED), scheme })
}
