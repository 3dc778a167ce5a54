//! TOML configuration shared by all subcommands.
//!
//! Every section and key is optional; unknown keys are rejected so that a
//! typo names itself in the error message.

use std::path::{Path, PathBuf};

use fredkin_zeno::{DissipatorConvention, InputState, Model, ModelParams};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub model: ModelSection,
    pub truth_table: TruthTableSection,
    pub sweep: SweepSection,
    pub physical: PhysicalSection,
    pub zeno_report: ZenoReportSection,
    pub analytic_compare: AnalyticCompareSection,
}

/// Model parameters as ratios to the cavity coupling `g`.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub model: String,
    pub omega_over_g: f64,
    pub delta_over_g: f64,
    pub kappa_over_g: f64,
    pub gamma_over_g: f64,
    pub n_max: usize,
    pub dissipator: String,
    pub input: String,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            model: "resonant".into(),
            omega_over_g: 0.03,
            delta_over_g: 0.3,
            kappa_over_g: 0.0,
            gamma_over_g: 0.0,
            n_max: 1,
            dissipator: "conventional".into(),
            input: "phased".into(),
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct TruthTableSection {
    pub floor: f64,
}

impl Default for TruthTableSection {
    fn default() -> Self {
        Self { floor: 0.99 }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub kappa_count: usize,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub gamma_count: usize,
    pub output: Option<PathBuf>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            kappa_min: 0.0,
            kappa_max: 0.1,
            kappa_count: 21,
            gamma_min: 0.0,
            gamma_max: 0.1,
            gamma_count: 21,
            output: None,
        }
    }
}

/// Physical rates, each given as the number `x` in `2 pi x MHz`.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicalSection {
    pub g_mhz: f64,
    pub kappa_mhz: f64,
    pub gamma_mhz: f64,
    pub omega_over_g: f64,
    pub delta_over_g: f64,
}

impl Default for PhysicalSection {
    fn default() -> Self {
        Self {
            g_mhz: 750.0,
            kappa_mhz: 3.5,
            gamma_mhz: 2.62,
            omega_over_g: 0.03,
            delta_over_g: 0.3,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct ZenoReportSection {
    pub degeneracy_tol: f64,
    pub output: Option<PathBuf>,
}

impl Default for ZenoReportSection {
    fn default() -> Self {
        Self {
            degeneracy_tol: fredkin_zeno::zeno::DEFAULT_DEGENERACY_TOL,
            output: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct AnalyticCompareSection {
    pub samples: usize,
    /// Largest full-vs-closed-form distance accepted before exit code 2.
    pub tolerance: f64,
}

impl Default for AnalyticCompareSection {
    fn default() -> Self {
        Self {
            samples: 50,
            tolerance: 0.2,
        }
    }
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub model: Option<Model>,
    pub dissipator: Option<DissipatorConvention>,
    pub n_max: Option<usize>,
    pub output: Option<PathBuf>,
}

impl Config {
    pub fn from_toml(text: &str, origin: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config {
            origin: origin.to_string(),
            message: e.message().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text, &path.display().to_string())
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(m) = o.model {
            self.model.model = m.to_string();
        }
        if let Some(d) = o.dissipator {
            self.model.dissipator = d.to_string();
        }
        if let Some(n) = o.n_max {
            self.model.n_max = n;
        }
        if let Some(path) = &o.output {
            self.sweep.output = Some(path.clone());
            self.zeno_report.output = Some(path.clone());
        }
    }
}

impl ModelSection {
    pub fn kind(&self) -> Result<Model> {
        self.model.parse().map_err(|e: String| CliError::invalid("model.model", e))
    }

    pub fn convention(&self) -> Result<DissipatorConvention> {
        self.dissipator
            .parse()
            .map_err(|e: String| CliError::invalid("model.dissipator", e))
    }

    pub fn input_state(&self) -> Result<InputState> {
        self.input.parse().map_err(|e: String| CliError::invalid("model.input", e))
    }

    /// Parameters for `model` with `g = 1` and the given decay ratios.
    pub fn params_for(&self, model: Model, kappa: f64, gamma: f64) -> Result<ModelParams> {
        let base = match model {
            Model::Resonant => ModelParams::resonant(1.0, self.omega_over_g),
            Model::Detuned => ModelParams::detuned(1.0, self.omega_over_g, self.delta_over_g),
        };
        let p = base
            .with_decay(kappa, gamma)
            .with_n_max(self.n_max)
            .with_dissipator(self.convention()?);
        p.validate()?;
        Ok(p)
    }

    pub fn params(&self) -> Result<ModelParams> {
        self.params_for(self.kind()?, self.kappa_over_g, self.gamma_over_g)
    }
}

/// Evenly spaced grid over `[min, max]`. A single point requires
/// `min == max`.
pub fn grid(name: &str, min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite()) || min < 0.0 {
        return Err(CliError::invalid(name, format!("bounds must be finite and >= 0 (got {min}, {max})")));
    }
    if min > max {
        return Err(CliError::invalid(name, format!("min {min} exceeds max {max}")));
    }
    match count {
        0 => Err(CliError::invalid(name, "count must be at least 1")),
        1 if min != max => Err(CliError::invalid(
            name,
            "a single grid point needs min == max; use count >= 2",
        )),
        1 => Ok(vec![min]),
        n => Ok((0..n)
            .map(|i| {
                if i == n - 1 {
                    max
                } else {
                    min + (max - min) * i as f64 / (n - 1) as f64
                }
            })
            .collect()),
    }
}

impl SweepSection {
    pub fn kappa_grid(&self) -> Result<Vec<f64>> {
        grid("sweep.kappa", self.kappa_min, self.kappa_max, self.kappa_count)
    }

    pub fn gamma_grid(&self) -> Result<Vec<f64>> {
        grid("sweep.gamma", self.gamma_min, self.gamma_max, self.gamma_count)
    }
}
