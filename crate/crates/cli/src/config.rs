//! Run configuration: a flat JSON document, overridable from the command line.
//!
//! Frequencies are in units of ω_m unless `units` is `"rad_per_s"`. The
//! mechanical frequency itself is always given in Hz (`mech_freq_hz`).

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use optorouter_core::SystemParams;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    #[default]
    OmegaM,
    RadPerS,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Power,
    Temperature,
    Detuning,
    Bandwidth,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Power => "power",
            SweepParam::Temperature => "temperature",
            SweepParam::Detuning => "detuning",
            SweepParam::Bandwidth => "bandwidth",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            lo: 0.5,
            hi: 1.5,
            n_points: 4001,
        }
    }
}

impl GridSpec {
    /// Parses `lo:hi:n`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::invalid("grid", format!("expected lo:hi:n, got `{text}`"));
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(Self {
            lo: parts[0].trim().parse().map_err(|_| bad())?,
            hi: parts[1].trim().parse().map_err(|_| bad())?,
            n_points: parts[2].trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandSpec {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub units: Units,
    /// Control wavelength [m].
    pub wavelength: f64,
    /// Cavity length [m].
    pub cavity_length: f64,
    /// Effective mass [kg].
    pub mass: f64,
    pub mech_freq_hz: f64,
    pub quality: f64,
    pub kappa: f64,
    /// Control power [W].
    pub power: f64,
    /// Bath temperature [K].
    pub temperature: f64,
    pub detuning: f64,
    pub probe_center: Option<f64>,
    pub bandwidth: f64,
    pub grid: GridSpec,
    /// Routing band; defaults to the plotted range, widened to ±10Γ if needed.
    pub band: Option<BandSpec>,
    pub quad_points: usize,
    pub sweep_param: Option<SweepParam>,
    pub sweep_values: Vec<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            units: Units::OmegaM,
            wavelength: 1054.0e-9,
            cavity_length: 6.7e-2,
            mass: 40.0e-12,
            mech_freq_hz: 134.0e3,
            quality: 1.1e6,
            kappa: 0.1,
            power: 5.0e-6,
            temperature: 20.0e-3,
            detuning: 1.0,
            probe_center: None,
            bandwidth: 0.01,
            grid: GridSpec::default(),
            band: None,
            quad_points: 400,
            sweep_param: None,
            sweep_values: Vec::new(),
            format: Format::Csv,
            out: None,
        }
    }
}

fn finite(value: f64, field: &'static str) -> Result<(), CliError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(CliError::invalid(field, "must be finite"))
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::invalid("config", format!("cannot read {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::invalid("config", format!("malformed {}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn mech_freq(&self) -> f64 {
        2.0 * PI * self.mech_freq_hz
    }

    /// Converts a configured frequency to rad/s.
    pub fn frequency(&self, value: f64) -> f64 {
        match self.units {
            Units::OmegaM => value * self.mech_freq(),
            Units::RadPerS => value,
        }
    }

    pub fn system_params(&self) -> Result<SystemParams, CliError> {
        for (value, field) in [
            (self.kappa, "kappa"),
            (self.detuning, "detuning"),
            (self.bandwidth, "bandwidth"),
            (self.mech_freq_hz, "mech_freq_hz"),
        ] {
            finite(value, field)?;
        }
        let params = SystemParams {
            wavelength: self.wavelength,
            cavity_length: self.cavity_length,
            mass: self.mass,
            mech_freq: self.mech_freq(),
            quality: self.quality,
            cavity_decay: self.frequency(self.kappa),
            drive_power: self.power,
            bath_temp: self.temperature,
            detuning: self.frequency(self.detuning),
            probe_center: self.probe_center.map(|c| self.frequency(c)),
            input_bandwidth: self.frequency(self.bandwidth),
        };
        params.validate()?;
        Ok(params)
    }

    /// Grid frequencies in rad/s. Only positive frequencies are reported.
    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        let GridSpec { lo, hi, n_points } = self.grid;
        if n_points < 2 {
            return Err(CliError::invalid("grid", "n_points must be at least 2"));
        }
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
            return Err(CliError::invalid("grid", "bounds must satisfy 0 < lo < hi"));
        }
        Ok(optorouter_core::response::uniform_grid(
            self.frequency(lo),
            self.frequency(hi),
            n_points,
        )?)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.system_params()?;
        self.grid()?;
        if let Some(band) = self.band {
            if !(band.lo.is_finite() && band.hi.is_finite() && band.hi > band.lo) {
                return Err(CliError::invalid(
                    "band",
                    "bounds must be finite with lo < hi",
                ));
            }
        }
        Ok(())
    }

    /// Copy of this configuration with the swept parameter set to `value`.
    pub fn with_sweep_value(&self, param: SweepParam, value: f64) -> Self {
        let mut next = self.clone();
        match param {
            SweepParam::Power => next.power = value,
            SweepParam::Temperature => next.temperature = value,
            SweepParam::Detuning => next.detuning = value,
            SweepParam::Bandwidth => next.bandwidth = value,
        }
        next
    }
}
