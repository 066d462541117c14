use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use mirrorpress_core::mirror::{MirrorModel, TabulatedMirror};
use mirrorpress_core::state::StationaryState;
use mirrorpress_core::{FrequencyGrid, PhysicsContext, QuadratureConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    SinglePole,
    Perfect,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StateChoice {
    Vacuum,
    Thermal,
    TwoTemperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

/// Synthetic spectra for the causality check, in place of the model response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Inject {
    /// The cubic law `iħω³/6π`, jerk-normalized to the constant `ħ/6π`.
    Cubic,
    /// `1/(1 − iω)`, the transform of `e^{−t} θ(t)`.
    Exponential,
}

/// Options shared by every command. Each may also come from `--config`.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Flat TOML file with the same keys (snake_case); flags win.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Cutoff Ω of the single-pole model.
    #[arg(long)]
    pub omega_c: Option<f64>,
    /// Mirror table: header omega,re_s,im_s,re_r,im_r.
    #[arg(long)]
    pub file: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub state: Option<StateChoice>,
    /// Temperature (of φ for two-temperature states).
    #[arg(long)]
    pub temp: Option<f64>,
    /// Temperature of ψ for two-temperature states.
    #[arg(long)]
    pub temp2: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,

    /// min:max:count; a range with min = −max is built symmetric about 0.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Pass threshold of the command's check.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Integration window for non-vacuum states.
    #[arg(long)]
    pub window: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub max_subdivisions: Option<usize>,

    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Oscillation frequency ω₀; the mirror moves as δq₀ cos(2ω₀t).
    #[arg(long)]
    pub osc_freq: Option<f64>,
    /// Oscillation amplitude δq₀.
    #[arg(long)]
    pub osc_amp: Option<f64>,
    #[arg(long, value_enum)]
    pub inject: Option<Inject>,
}

impl Settings {
    /// Fills unset fields from the config file named by `--config`, if any.
    pub fn with_config_file(self) -> anyhow::Result<Settings> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path.display()))?;
        let file: Settings = toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        Ok(self.overlay(file))
    }

    fn overlay(self, file: Settings) -> Settings {
        Settings {
            config: self.config,
            model: self.model.or(file.model),
            omega_c: self.omega_c.or(file.omega_c),
            file: self.file.or(file.file),
            state: self.state.or(file.state),
            temp: self.temp.or(file.temp),
            temp2: self.temp2.or(file.temp2),
            hbar: self.hbar.or(file.hbar),
            grid: self.grid.or(file.grid),
            tol: self.tol.or(file.tol),
            window: self.window.or(file.window),
            abs_tol: self.abs_tol.or(file.abs_tol),
            rel_tol: self.rel_tol.or(file.rel_tol),
            max_subdivisions: self.max_subdivisions.or(file.max_subdivisions),
            out: self.out.or(file.out),
            format: self.format.or(file.format),
            osc_freq: self.osc_freq.or(file.osc_freq),
            osc_amp: self.osc_amp.or(file.osc_amp),
            inject: self.inject.or(file.inject),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Validate,
    Susceptibility,
    Noise,
    Fdt,
    Causality,
    Squeeze,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Validate => "validate",
            CommandKind::Susceptibility => "susceptibility",
            CommandKind::Noise => "noise",
            CommandKind::Fdt => "fdt",
            CommandKind::Causality => "causality",
            CommandKind::Squeeze => "squeeze",
        }
    }

    fn default_tol(self) -> f64 {
        match self {
            CommandKind::Validate | CommandKind::Squeeze => 1e-12,
            CommandKind::Causality => 1e-2,
            _ => 1e-8,
        }
    }

    fn default_grid(self) -> GridSpec {
        let (max, count) = match self {
            CommandKind::Validate => (10.0, 201),
            CommandKind::Causality => (200.0, 8001),
            CommandKind::Squeeze => (4.0, 81),
            _ => (5.0, 41),
        };
        GridSpec { min: -max, max, count }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn parse(text: &str) -> anyhow::Result<GridSpec> {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let [min, max, count] = parts[..] else { bail!("grid must be min:max:count, got {text:?}") };
        let spec = GridSpec {
            min: min.parse().with_context(|| format!("grid min {min:?}"))?,
            max: max.parse().with_context(|| format!("grid max {max:?}"))?,
            count: count.parse().with_context(|| format!("grid count {count:?}"))?,
        };
        if spec.count < 2 {
            bail!("grid count must be at least 2");
        }
        Ok(spec)
    }

    pub fn is_symmetric(&self) -> bool {
        self.min == -self.max
    }

    pub fn build(&self) -> anyhow::Result<FrequencyGrid> {
        let grid = if self.is_symmetric() {
            FrequencyGrid::symmetric(self.max, self.count)?
        } else {
            FrequencyGrid::uniform(self.min, self.max, self.count)?
        };
        Ok(grid)
    }
}

/// Fully resolved run configuration, echoed into every output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub model: ModelKind,
    pub omega_c: Option<f64>,
    pub file: Option<PathBuf>,
    pub state: StateChoice,
    pub temp: Option<f64>,
    pub temp2: Option<f64>,
    pub hbar: f64,
    pub grid: GridSpec,
    pub grid_symmetric: bool,
    pub tol: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub window: Option<f64>,
    /// Left out of the embedded config so that the destination does not change the contents.
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
    pub osc_freq: Option<f64>,
    pub osc_amp: Option<f64>,
    pub inject: Option<Inject>,
}

impl RunConfig {
    pub fn resolve(command: CommandKind, s: Settings) -> anyhow::Result<RunConfig> {
        let model = s.model.unwrap_or(ModelKind::SinglePole);
        let omega_c = match model {
            ModelKind::SinglePole => Some(s.omega_c.unwrap_or(1.0)),
            _ => None,
        };
        if model == ModelKind::Table && s.file.is_none() {
            bail!("--model table needs --file");
        }
        let state = s.state.unwrap_or(StateChoice::Vacuum);
        let (temp, temp2) = match state {
            StateChoice::Vacuum => (None, None),
            StateChoice::Thermal => (Some(s.temp.context("--state thermal needs --temp")?), None),
            StateChoice::TwoTemperature => (
                Some(s.temp.context("--state two-temperature needs --temp")?),
                Some(s.temp2.context("--state two-temperature needs --temp2")?),
            ),
        };
        let grid = match &s.grid {
            Some(text) => GridSpec::parse(text)?,
            None => command.default_grid(),
        };
        let quad = QuadratureConfig::default();
        let cfg = RunConfig {
            command,
            model,
            omega_c,
            file: if model == ModelKind::Table { s.file } else { None },
            state,
            temp,
            temp2,
            hbar: s.hbar.unwrap_or(1.0),
            grid_symmetric: grid.is_symmetric(),
            grid,
            tol: s.tol.unwrap_or(command.default_tol()),
            abs_tol: s.abs_tol.unwrap_or(quad.abs_tol),
            rel_tol: s.rel_tol.unwrap_or(quad.rel_tol),
            max_subdivisions: s.max_subdivisions.unwrap_or(quad.max_subdivisions),
            window: s.window,
            out: s.out,
            format: s.format.unwrap_or(if command == CommandKind::Squeeze { Format::Json } else { Format::Csv }),
            osc_freq: if command == CommandKind::Squeeze { Some(s.osc_freq.context("squeeze needs --osc-freq")?) } else { None },
            osc_amp: if command == CommandKind::Squeeze { Some(s.osc_amp.unwrap_or(1.0)) } else { None },
            inject: if command == CommandKind::Causality { s.inject } else { None },
        };
        if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
            bail!("--tol must be positive");
        }
        Ok(cfg)
    }

    pub fn mirror(&self) -> anyhow::Result<MirrorModel> {
        Ok(match self.model {
            ModelKind::SinglePole => MirrorModel::single_pole(self.omega_c.unwrap_or(1.0))?,
            ModelKind::Perfect => MirrorModel::Perfect,
            ModelKind::Table => {
                let path: &Path = self.file.as_deref().expect("checked in resolve");
                MirrorModel::Tabulated(TabulatedMirror::from_csv_path(path)?)
            }
        })
    }

    pub fn field_state(&self) -> anyhow::Result<StationaryState> {
        let ctx = PhysicsContext::new(self.hbar)?;
        Ok(match self.state {
            StateChoice::Vacuum => StationaryState::vacuum(ctx),
            StateChoice::Thermal => StationaryState::thermal(ctx, self.temp.unwrap())?,
            StateChoice::TwoTemperature => StationaryState::two_temperature(ctx, self.temp.unwrap(), self.temp2.unwrap())?,
        })
    }

    pub fn frequency_grid(&self) -> anyhow::Result<FrequencyGrid> {
        self.grid.build()
    }

    pub fn quadrature(&self) -> anyhow::Result<QuadratureConfig> {
        let cfg = QuadratureConfig::new(self.abs_tol, self.rel_tol, self.max_subdivisions)?;
        Ok(match self.window {
            Some(w) => cfg.with_window(w)?,
            None => cfg,
        })
    }
}
