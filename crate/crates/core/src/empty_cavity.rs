//! Double-ended Fabry–Perot cavity with equal mirrors, no membrane and no
//! drive. Serves as the analytic limit of the full response.

use core::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmptyCavity {
    /// Resonance ω_0 [rad/s].
    pub resonance: f64,
    /// Decay κ [rad/s]; the line half-width is 2κ.
    pub decay: f64,
}

impl EmptyCavity {
    pub fn new(resonance: f64, decay: f64) -> Result<Self> {
        if !(decay.is_finite() && decay > 0.0) {
            return Err(Error::invalid(
                "decay",
                "must be finite and strictly positive",
            ));
        }
        Ok(Self { resonance, decay })
    }

    /// Fraction of the left input leaving through the left port:
    /// `(ω−ω_0)² / (4κ² + (ω−ω_0)²)`.
    pub fn reflectance(&self, omega: f64) -> f64 {
        let detuning = omega - self.resonance;
        let width_sq = 4.0 * self.decay * self.decay;
        let detuning_sq = detuning * detuning;
        detuning_sq / (width_sq + detuning_sq)
    }

    /// Fraction transmitted to the right port: `4κ² / (4κ² + (ω−ω_0)²)`.
    pub fn transmittance(&self, omega: f64) -> f64 {
        let detuning = omega - self.resonance;
        let width_sq = 4.0 * self.decay * self.decay;
        width_sq / (width_sq + detuning * detuning)
    }
}

/// Normalized Lorentzian line of a single-photon wavepacket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lorentzian {
    pub center: f64,
    /// Half-width at half-maximum Γ [rad/s].
    pub bandwidth: f64,
}

impl Lorentzian {
    pub fn new(center: f64, bandwidth: f64) -> Result<Self> {
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::invalid(
                "input_bandwidth",
                "must be finite and strictly positive",
            ));
        }
        if !center.is_finite() {
            return Err(Error::invalid("probe_center", "must be finite"));
        }
        Ok(Self { center, bandwidth })
    }

    pub fn density(&self, omega: f64) -> f64 {
        let x = omega - self.center;
        (self.bandwidth / PI) / (x * x + self.bandwidth * self.bandwidth)
    }

    /// Exact weight of the line inside `[lo, hi]`.
    pub fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        let cdf = |w: f64| libm::atan((w - self.center) / self.bandwidth) / PI;
        cdf(hi) - cdf(lo)
    }
}

/// `S_in(ω) = (Γ/π) / ((ω−ω_p)² + Γ²)`.
pub fn lorentzian_input(omega: f64, center: f64, bandwidth: f64) -> Result<f64> {
    Ok(Lorentzian::new(center, bandwidth)?.density(omega))
}
