//! Physical constants, user-facing parameters and the steady state of the
//! driven cavity.
//!
//! Decay convention: each end mirror leaks photons at rate `2κ`, and the input
//! ports couple with amplitude `√(2κ)`. With this convention the empty-cavity
//! Lorentzians have half-width `2κ`, not `κ`.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConstants {
    /// Reduced Planck constant [J·s].
    pub hbar: f64,
    /// Boltzmann constant [J/K].
    pub k_b: f64,
    /// Speed of light [m/s].
    pub c_light: f64,
}

pub const CODATA: PhysConstants = PhysConstants {
    hbar: 1.054_571_8e-34,
    k_b: 1.380_649e-23,
    c_light: 2.997_924_58e8,
};

/// Physical parameters of the router.
///
/// Frequencies are angular. `detuning` is the *effective* detuning Δ, which
/// already contains the radiation-pressure shift; it is an input and is not
/// solved self-consistently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Control-field wavelength λ [m].
    pub wavelength: f64,
    /// Full cavity length L [m].
    pub cavity_length: f64,
    /// Effective membrane mass m [kg].
    pub mass: f64,
    /// Mechanical frequency ω_m [rad/s].
    pub mech_freq: f64,
    /// Mechanical quality factor Q.
    pub quality: f64,
    /// Cavity decay κ [rad/s]; each mirror leaks at 2κ.
    pub cavity_decay: f64,
    /// Control power ℘ [W].
    pub drive_power: f64,
    /// Bath temperature of the membrane [K].
    pub bath_temp: f64,
    /// Effective detuning Δ [rad/s].
    pub detuning: f64,
    /// Probe line centre in the rotating frame [rad/s]; `None` means Δ.
    pub probe_center: Option<f64>,
    /// Probe bandwidth Γ [rad/s].
    pub input_bandwidth: f64,
}

/// Parameter set of the reference membrane-in-the-middle experiment:
/// λ = 1054 nm, L = 6.7 cm, m = 40 ng, ω_m = 2π·134 kHz, Q = 1.1e6,
/// κ = ω_m/10, Δ = ω_m, 20 mK, 5 µW, Γ = 0.01 ω_m.
pub fn default_params() -> SystemParams {
    let mech_freq = 2.0 * PI * 134.0e3;
    SystemParams {
        wavelength: 1054.0e-9,
        cavity_length: 6.7e-2,
        mass: 40.0e-12,
        mech_freq,
        quality: 1.1e6,
        cavity_decay: mech_freq / 10.0,
        drive_power: 5.0e-6,
        bath_temp: 20.0e-3,
        detuning: mech_freq,
        probe_center: None,
        input_bandwidth: 0.01 * mech_freq,
    }
}

impl Default for SystemParams {
    fn default() -> Self {
        default_params()
    }
}

fn positive(value: f64, field: &'static str) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            field,
            "must be finite and strictly positive",
        ))
    }
}

fn non_negative(value: f64, field: &'static str) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, "must be finite and non-negative"))
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        positive(self.wavelength, "wavelength")?;
        positive(self.cavity_length, "cavity_length")?;
        positive(self.mass, "mass")?;
        positive(self.mech_freq, "mech_freq")?;
        positive(self.quality, "quality")?;
        positive(self.cavity_decay, "cavity_decay")?;
        positive(self.input_bandwidth, "input_bandwidth")?;
        non_negative(self.drive_power, "drive_power")?;
        non_negative(self.bath_temp, "bath_temp")?;
        if !self.detuning.is_finite() {
            return Err(Error::invalid("detuning", "must be finite"));
        }
        if let Some(center) = self.probe_center {
            if !center.is_finite() {
                return Err(Error::invalid("probe_center", "must be finite"));
            }
        }
        Ok(())
    }

    pub fn mech_damping(&self) -> f64 {
        self.mech_freq / self.quality
    }

    pub fn probe_center(&self) -> f64 {
        self.probe_center.unwrap_or(self.detuning)
    }

    /// `γ_m ≪ κ ≪ ω_m`, checked as at least a factor of 5 on each side.
    ///
    /// Outside this regime the transparency window is poorly formed; callers
    /// may warn but the model is still evaluated.
    pub fn in_eit_regime(&self) -> bool {
        const MARGIN: f64 = 5.0;
        self.mech_damping() * MARGIN <= self.cavity_decay
            && self.cavity_decay * MARGIN <= self.mech_freq
    }

    pub fn with_power(mut self, drive_power: f64) -> Self {
        self.drive_power = drive_power;
        self
    }

    pub fn with_temperature(mut self, bath_temp: f64) -> Self {
        self.bath_temp = bath_temp;
        self
    }

    pub fn with_detuning(mut self, detuning: f64) -> Self {
        self.detuning = detuning;
        self
    }

    pub fn with_bandwidth(mut self, input_bandwidth: f64) -> Self {
        self.input_bandwidth = input_bandwidth;
        self
    }
}

/// Steady state around which the fluctuations are linearized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub params: SystemParams,
    pub constants: PhysConstants,
    /// ω_c = 2πc/λ [rad/s].
    pub drive_freq: f64,
    /// g = −ω_c/L [rad·s⁻¹·m⁻¹]; negative.
    pub coupling: f64,
    /// γ_m = ω_m/Q [s⁻¹].
    pub mech_damping: f64,
    /// ε_c = √(2κ℘/(ħω_c)) [s⁻¹].
    pub drive_amplitude: f64,
    /// c_s = ε_c/(2κ + iΔ).
    pub cavity_amplitude: Complex64,
    /// |c_s|².
    pub photon_number: f64,
    /// q_s = −ħg|c_s|²/(mω_m²) [m].
    pub displacement: f64,
}

pub fn derive_operating_point(params: &SystemParams) -> Result<OperatingPoint> {
    derive_with_constants(params, CODATA)
}

pub fn derive_with_constants(
    params: &SystemParams,
    constants: PhysConstants,
) -> Result<OperatingPoint> {
    params.validate()?;
    let PhysConstants { hbar, c_light, .. } = constants;
    let kappa = params.cavity_decay;

    let drive_freq = 2.0 * PI * c_light / params.wavelength;
    let coupling = -drive_freq / params.cavity_length;
    let mech_damping = params.mech_damping();
    let drive_amplitude = libm::sqrt(2.0 * kappa * params.drive_power / (hbar * drive_freq));
    let cavity_amplitude =
        Complex64::new(drive_amplitude, 0.0) / Complex64::new(2.0 * kappa, params.detuning);
    let photon_number = cavity_amplitude.norm_sqr();
    let displacement =
        -hbar * coupling * photon_number / (params.mass * params.mech_freq * params.mech_freq);

    Ok(OperatingPoint {
        params: *params,
        constants,
        drive_freq,
        coupling,
        mech_damping,
        drive_amplitude,
        cavity_amplitude,
        photon_number,
        displacement,
    })
}

impl OperatingPoint {
    /// Bare detuning ω_0 − ω_c = Δ − g·q_s implied by the chosen effective
    /// detuning.
    pub fn bare_detuning(&self) -> f64 {
        self.params.detuning - self.coupling * self.displacement
    }

    /// ħg²|c_s|², the radiation-pressure stiffness scale that enters d(ω).
    pub fn optomechanical_strength(&self) -> f64 {
        self.constants.hbar * self.coupling * self.coupling * self.photon_number
    }
}
