//! Band-integrated routing figures for a single-photon probe.
//!
//! The probe spectrum is a normalized Lorentzian; the probability of leaving
//! through a port is the overlap of that spectrum with `R(ω)` or `T(ω)`,
//! divided by the weight of the line that falls inside the integration band.

use crate::empty_cavity::Lorentzian;
use crate::error::{Error, Result};
use crate::operating_point::{derive_operating_point, OperatingPoint, SystemParams};
use crate::quadrature::{integrate, QuadSettings};
use crate::response::LinearResponse;

/// Relative tolerance of the overlap integrals.
pub const QUAD_REL_TOL: f64 = 1e-6;

/// Smallest accepted quadrature budget.
pub const MIN_QUAD_POINTS: usize = 200;

/// Integrand evaluations per Gauss–Kronrod panel.
const POINTS_PER_PANEL: usize = 15;

/// The band must cover the probe centre ± this many bandwidths.
pub const BAND_HALF_WIDTHS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::invalid("band", "bounds must be finite with lo < hi"));
        }
        Ok(Self { lo, hi })
    }

    /// `[0.5, 1.5]·ω_m`.
    pub fn default_for(params: &SystemParams) -> Self {
        Self {
            lo: 0.5 * params.mech_freq,
            hi: 1.5 * params.mech_freq,
        }
    }

    pub fn contains_line(&self, line: &Lorentzian) -> bool {
        let reach = BAND_HALF_WIDTHS * line.bandwidth;
        self.lo <= line.center - reach && self.hi >= line.center + reach
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoutingReport {
    /// Probability of leaving through the input (left) port. May exceed 1 by a
    /// few percent near the dip, where `R(ω_m) ≈ 1 + κ²/ω_m²`.
    pub p_reflect: f64,
    pub p_transmit: f64,
    /// `∫ S_v d(ω/ω_m)` over the band, on the same scale as the probabilities.
    pub vacuum_leak: f64,
    /// `∫ S_T d(ω/ω_m)` over the band.
    pub thermal_leak: f64,
    /// `p_reflect − p_transmit`: +1 routes everything back, −1 passes everything.
    pub contrast: f64,
    /// Weight of the probe line inside the band.
    pub input_in_band: f64,
    pub band: Band,
}

/// Overlaps of the probe line with the reflection and transmission spectra.
///
/// `quad_points` is the initial evaluation budget; it sets the number of
/// Gauss–Kronrod panels before adaptive refinement.
pub fn routing_probabilities(
    op: &OperatingPoint,
    band: Band,
    quad_points: usize,
) -> Result<RoutingReport> {
    let line = Lorentzian::new(op.params.probe_center(), op.params.input_bandwidth)?;
    routing_for_line(op, &line, band, quad_points)
}

fn routing_for_line(
    op: &OperatingPoint,
    line: &Lorentzian,
    band: Band,
    quad_points: usize,
) -> Result<RoutingReport> {
    if quad_points < MIN_QUAD_POINTS {
        return Err(Error::invalid("quad_points", "must be at least 200"));
    }
    let band = Band::new(band.lo, band.hi)?;
    if !band.contains_line(line) {
        return Err(Error::ContractViolation(
            "integration band must cover the probe centre ± 10 bandwidths",
        ));
    }

    // Put a panel edge on the probe centre so the peak is sampled from both sides.
    let panels = (quad_points / POINTS_PER_PANEL).max(2);
    let split = line.center;
    let left_share = (split - band.lo) / (band.hi - band.lo);
    let left_panels = (libm::round(panels as f64 * left_share) as usize).clamp(1, panels - 1);
    let settings = |n: usize| QuadSettings {
        panels: n,
        rel_tol: QUAD_REL_TOL,
        ..QuadSettings::default()
    };
    let integrand = |w: f64| -> Result<[f64; 4]> {
        let lin = LinearResponse::evaluate(w, op)?;
        let s = line.density(w);
        Ok([
            s * lin.reflection(),
            s * lin.transmission(),
            lin.vacuum_noise(op),
            lin.thermal_noise(op),
        ])
    };
    let a = integrate(integrand, band.lo, split, settings(left_panels))?;
    let b = integrate(integrand, split, band.hi, settings(panels - left_panels))?;

    let input_in_band = line.mass_between(band.lo, band.hi);
    let per_mech = 1.0 / op.params.mech_freq;
    let p_reflect = (a[0] + b[0]) / input_in_band;
    let p_transmit = (a[1] + b[1]) / input_in_band;
    Ok(RoutingReport {
        p_reflect,
        p_transmit,
        vacuum_leak: (a[2] + b[2]) * per_mech,
        thermal_leak: (a[3] + b[3]) * per_mech,
        contrast: p_reflect - p_transmit,
        input_in_band,
        band,
    })
}

/// Band used by [`switching_contrast`]: the probe centre ± max(ω_m/2, 10Γ).
pub fn contrast_band(params: &SystemParams) -> Band {
    let reach = (0.5 * params.mech_freq).max(BAND_HALF_WIDTHS * params.input_bandwidth);
    let center = params.probe_center();
    Band {
        lo: center - reach,
        hi: center + reach,
    }
}

/// Worse of the off-state transmission (no drive) and the on-state
/// reflection (drive at `on_power`). Near 1 when the router works in both
/// states.
pub fn switching_contrast(params: &SystemParams, on_power: f64) -> Result<f64> {
    if !(on_power.is_finite() && on_power >= 0.0) {
        return Err(Error::invalid(
            "drive_power",
            "on-state power must be finite and non-negative",
        ));
    }
    let band = contrast_band(params);
    let points = 4 * MIN_QUAD_POINTS;
    let off = routing_probabilities(
        &derive_operating_point(&params.with_power(0.0))?,
        band,
        points,
    )?;
    let on = routing_probabilities(
        &derive_operating_point(&params.with_power(on_power))?,
        band,
        points,
    )?;
    Ok(off.p_transmit.min(on.p_reflect))
}
