//! Linearized response of the driven cavity to a weak probe.
//!
//! `ω` is the probe offset from the drive in the rotating frame. All four
//! output channels share the characteristic denominator
//!
//! ```text
//! d(ω) = m(ω_m² − ω² − iγ_mω)[(2κ − iω)² + Δ²] − 2ħg²|c_s|²Δ
//! ```
//!
//! whose zeros are the normal modes of the coupled cavity–membrane system.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::empty_cavity::Lorentzian;
use crate::error::{Error, Result};
use crate::operating_point::OperatingPoint;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `|d|` below this fraction of its term-wise magnitude is treated as a pole.
const SINGULAR_RATIO: f64 = 1e-12;

/// Above `ħω/(2k_BT)` of this size the occupation is taken as `e^{−ħω/k_BT}`.
const OCCUPATION_ASYMPTOTIC: f64 = 30.0;

/// Inverse mechanical susceptibility `m(ω_m² − ω² − iγ_mω)`.
fn mechanical_factor(omega: Complex64, op: &OperatingPoint) -> Complex64 {
    let p = &op.params;
    p.mass * (p.mech_freq * p.mech_freq - omega * omega - I * op.mech_damping * omega)
}

/// Evaluates `d` at a complex frequency.
pub fn denominator_at(omega: Complex64, op: &OperatingPoint) -> Complex64 {
    let p = &op.params;
    let two_kappa = 2.0 * p.cavity_decay;
    let cavity = (two_kappa - I * omega) * (two_kappa - I * omega) + p.detuning * p.detuning;
    mechanical_factor(omega, op) * cavity - 2.0 * op.optomechanical_strength() * p.detuning
}

pub fn denominator_d(omega: f64, op: &OperatingPoint) -> Complex64 {
    denominator_at(Complex64::new(omega, 0.0), op)
}

/// Sum of the magnitudes of the terms of `d(ω)`; the reference for the
/// singularity test.
fn denominator_scale(omega: f64, op: &OperatingPoint) -> f64 {
    let p = &op.params;
    let w = omega.abs();
    let mech = p.mass * (p.mech_freq * p.mech_freq + w * w + op.mech_damping * w);
    let two_kappa = 2.0 * p.cavity_decay;
    let cavity = two_kappa * two_kappa + 2.0 * two_kappa * w + w * w + p.detuning * p.detuning;
    mech * cavity + 2.0 * op.optomechanical_strength() * p.detuning.abs()
}

/// `d`, `E` and `V` at one real frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearResponse {
    pub omega: f64,
    pub denominator: Complex64,
    /// Probe amplitude transmitted to the right port.
    pub transmitted: Complex64,
    /// Membrane-fluctuation amplitude reaching either port.
    pub thermal_amplitude: Complex64,
}

impl LinearResponse {
    pub fn evaluate(omega: f64, op: &OperatingPoint) -> Result<Self> {
        let p = &op.params;
        let w = Complex64::new(omega, 0.0);
        let denominator = denominator_at(w, op);
        if !(denominator.norm() > SINGULAR_RATIO * denominator_scale(omega, op)) {
            return Err(Error::NearSingular { omega });
        }
        let two_kappa = 2.0 * p.cavity_decay;
        let probe_leg = two_kappa - I * (p.detuning + w);
        let transmitted = two_kappa / denominator
            * (mechanical_factor(w, op) * probe_leg + I * op.optomechanical_strength());
        let thermal_amplitude = libm::sqrt(two_kappa) / denominator
            * (-I * op.coupling * op.cavity_amplitude * probe_leg);
        Ok(Self {
            omega,
            denominator,
            transmitted,
            thermal_amplitude,
        })
    }

    pub fn reflection(&self) -> f64 {
        (self.transmitted - 1.0).norm_sqr()
    }

    pub fn transmission(&self) -> f64 {
        self.transmitted.norm_sqr()
    }

    /// `8|κ·iħg²c_s²/d|²`; only `|c_s|⁴` survives the modulus.
    pub fn vacuum_noise(&self, op: &OperatingPoint) -> f64 {
        let kappa = op.params.cavity_decay;
        let strength = op.optomechanical_strength();
        8.0 * kappa * kappa * strength * strength / self.denominator.norm_sqr()
    }

    pub fn thermal_noise(&self, op: &OperatingPoint) -> f64 {
        self.thermal_amplitude.norm_sqr() * thermal_weight(self.omega, op)
    }
}

pub fn response_e(omega: f64, op: &OperatingPoint) -> Result<Complex64> {
    Ok(LinearResponse::evaluate(omega, op)?.transmitted)
}

/// `R(ω) = |E(ω) − 1|²`.
pub fn reflection_r(omega: f64, op: &OperatingPoint) -> Result<f64> {
    Ok(LinearResponse::evaluate(omega, op)?.reflection())
}

/// `T(ω) = |E(ω)|²`.
pub fn transmission_t(omega: f64, op: &OperatingPoint) -> Result<f64> {
    Ok(LinearResponse::evaluate(omega, op)?.transmission())
}

pub fn vacuum_noise(omega: f64, op: &OperatingPoint) -> Result<f64> {
    Ok(LinearResponse::evaluate(omega, op)?.vacuum_noise(op))
}

pub fn thermal_noise(omega: f64, op: &OperatingPoint) -> Result<f64> {
    Ok(LinearResponse::evaluate(omega, op)?.thermal_noise(op))
}

/// Bose occupation `1/(e^{ħω/k_BT} − 1)` for `ω > 0`.
pub fn occupation(omega: f64, op: &OperatingPoint) -> f64 {
    let temp = op.params.bath_temp;
    if temp <= 0.0 {
        return 0.0;
    }
    let x = op.constants.hbar * omega / (op.constants.k_b * temp);
    if 0.5 * x > OCCUPATION_ASYMPTOTIC {
        libm::exp(-x)
    } else {
        1.0 / libm::expm1(x)
    }
}

/// Bath factor `ħγ_m m(−ω)[1 + coth(−ħω/(2k_BT))]`.
///
/// Equals `2ħγ_m m ω n̄(ω)` for `ω > 0` and `2ħγ_m m|ω|(n̄(|ω|) + 1)` for
/// `ω < 0`; non-negative everywhere. At `ω = 0` it takes the limit
/// `2γ_m m k_B T`.
pub fn thermal_weight(omega: f64, op: &OperatingPoint) -> f64 {
    let p = &op.params;
    let hbar = op.constants.hbar;
    let prefactor = 2.0 * hbar * op.mech_damping * p.mass;
    if omega == 0.0 {
        return 2.0 * op.mech_damping * p.mass * op.constants.k_b * p.bath_temp;
    }
    let w = omega.abs();
    let n = occupation(w, op);
    if omega > 0.0 {
        prefactor * w * n
    } else {
        prefactor * w * (n + 1.0)
    }
}

/// Width of the transmission dip (reflection peak):
/// `γ_m/2 + ħg²ε_c²/(4mω_mκ(4κ² + ω_m²))`.
pub fn eit_linewidth(op: &OperatingPoint) -> f64 {
    let p = &op.params;
    let hbar = op.constants.hbar;
    let kappa = p.cavity_decay;
    let wm = p.mech_freq;
    let g2 = op.coupling * op.coupling;
    let drive2 = op.drive_amplitude * op.drive_amplitude;
    op.mech_damping / 2.0
        + hbar * g2 * drive2 / (4.0 * p.mass * wm * kappa * (4.0 * kappa * kappa + wm * wm))
}

/// Result of a numerical scan of the transmission dip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipScan {
    /// Frequency of the transmission minimum [rad/s].
    pub center: f64,
    pub minimum: f64,
    /// Mean of the transmission maxima bracketing the dip.
    pub shoulder: f64,
    /// Half-width at half-depth [rad/s]; comparable to [`eit_linewidth`].
    pub half_width: f64,
    pub full_width: f64,
}

/// Locates the transparency dip around `Δ` on a uniform grid of `points`
/// samples and measures its width at half depth. The depth runs from the
/// minimum up to the mean of the two neighbouring transmission maxima.
pub fn scan_dip(op: &OperatingPoint, points: usize) -> Result<DipScan> {
    if points < 16 {
        return Err(Error::invalid(
            "points",
            "dip scan needs at least 16 samples",
        ));
    }
    let p = &op.params;
    let half_window = 6.0 * p.cavity_decay + 4.0 * eit_linewidth(op);
    let lo = p.detuning - half_window;
    let step = 2.0 * half_window / (points - 1) as f64;
    let omega = |i: usize| lo + step * i as f64;
    let trans = (0..points)
        .map(|i| transmission_t(omega(i), op))
        .collect::<Result<Vec<_>>>()?;

    let inner = (p.cavity_decay / step) as usize;
    let mid = points / 2;
    let (from, to) = (mid.saturating_sub(inner), (mid + inner).min(points - 1));
    let center_idx = (from..=to)
        .min_by(|&a, &b| trans[a].total_cmp(&trans[b]))
        .unwrap_or(mid);

    let no_dip = Error::NumericalFailure {
        stage: "dip scan",
        detail: "no transmission dip resolved around the detuning",
    };
    let mut left = center_idx;
    while left > 0 && trans[left - 1] > trans[left] {
        left -= 1;
    }
    let mut right = center_idx;
    while right + 1 < points && trans[right + 1] > trans[right] {
        right += 1;
    }
    if left == 0 || right == points - 1 || left == center_idx || right == center_idx {
        return Err(no_dip);
    }

    let minimum = trans[center_idx];
    let shoulder = 0.5 * (trans[left] + trans[right]);
    let level = 0.5 * (minimum + shoulder);
    let crossing = |a: usize, b: usize| {
        let t = (level - trans[a]) / (trans[b] - trans[a]);
        omega(a) + t * (omega(b) - omega(a))
    };
    let mut i = center_idx;
    while trans[i - 1] < level {
        i -= 1;
    }
    let lower = crossing(i, i - 1);
    let mut j = center_idx;
    while trans[j + 1] < level {
        j += 1;
    }
    let upper = crossing(j, j + 1);

    Ok(DipScan {
        center: omega(center_idx),
        minimum,
        shoulder,
        half_width: 0.5 * (upper - lower),
        full_width: upper - lower,
    })
}

/// Output spectra on a frequency grid.
///
/// `out_left = S_in·R + S_v + S_T` and `out_right = S_in·T + S_v + S_T`; the
/// noise channels enter both ports identically. `input` is the probe line per
/// unit of `ω/ω_m`, i.e. `ω_m · S_in(ω)`, which puts it on the same footing as
/// the dimensionless noise spectra on the usual `ω/ω_m` axis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChannelSpectra {
    pub omega: Vec<f64>,
    pub input: Vec<f64>,
    pub reflection: Vec<f64>,
    pub transmission: Vec<f64>,
    pub vacuum: Vec<f64>,
    pub thermal: Vec<f64>,
    pub out_left: Vec<f64>,
    pub out_right: Vec<f64>,
}

/// Every channel at a single frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPoint {
    pub omega: f64,
    pub input: f64,
    pub reflection: f64,
    pub transmission: f64,
    pub vacuum: f64,
    pub thermal: f64,
}

impl ChannelPoint {
    pub fn evaluate(omega: f64, op: &OperatingPoint, input: &Lorentzian) -> Result<Self> {
        let lin = LinearResponse::evaluate(omega, op)?;
        Ok(Self {
            omega,
            input: op.params.mech_freq * input.density(omega),
            reflection: lin.reflection(),
            transmission: lin.transmission(),
            vacuum: lin.vacuum_noise(op),
            thermal: lin.thermal_noise(op),
        })
    }

    pub fn out_left(&self) -> f64 {
        self.input * self.reflection + self.vacuum + self.thermal
    }

    pub fn out_right(&self) -> f64 {
        self.input * self.transmission + self.vacuum + self.thermal
    }
}

impl ChannelSpectra {
    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn from_points(points: &[ChannelPoint]) -> Self {
        let column = |f: fn(&ChannelPoint) -> f64| points.iter().map(f).collect::<Vec<_>>();
        Self {
            omega: column(|c| c.omega),
            input: column(|c| c.input),
            reflection: column(|c| c.reflection),
            transmission: column(|c| c.transmission),
            vacuum: column(|c| c.vacuum),
            thermal: column(|c| c.thermal),
            out_left: column(ChannelPoint::out_left),
            out_right: column(ChannelPoint::out_right),
        }
    }

    pub fn point(&self, i: usize) -> ChannelPoint {
        ChannelPoint {
            omega: self.omega[i],
            input: self.input[i],
            reflection: self.reflection[i],
            transmission: self.transmission[i],
            vacuum: self.vacuum[i],
            thermal: self.thermal[i],
        }
    }
}

pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid(
            "grid",
            "must contain at least one frequency",
        ));
    }
    if grid.iter().any(|w| !w.is_finite()) {
        return Err(Error::invalid("grid", "frequencies must be finite"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("grid", "must be strictly increasing"));
    }
    Ok(())
}

pub fn output_spectra(
    grid: &[f64],
    op: &OperatingPoint,
    input: &Lorentzian,
) -> Result<ChannelSpectra> {
    validate_grid(grid)?;
    let points = grid
        .iter()
        .map(|&w| ChannelPoint::evaluate(w, op, input))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChannelSpectra::from_points(&points))
}

/// `n` uniformly spaced frequencies covering `[lo, hi]` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::invalid("grid", "needs at least two points"));
    }
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::invalid("grid", "bounds must be finite with lo < hi"));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect())
}

/// Number of strict interior local maxima of a sampled curve.
pub fn count_local_maxima(values: &[f64]) -> usize {
    values
        .windows(3)
        .filter(|w| w[1] > w[0] && w[1] > w[2])
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::empty_cavity::EmptyCavity;
    use crate::operating_point::{default_params, derive_operating_point, SystemParams};

    fn op_at(power: f64) -> OperatingPoint {
        derive_operating_point(&default_params().with_power(power)).unwrap()
    }

    fn op_with(params: SystemParams) -> OperatingPoint {
        derive_operating_point(&params).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn wm() -> f64 {
        default_params().mech_freq
    }

    // Reference values below come from an independent numpy evaluation of the
    // closed forms with the same CODATA constants.

    #[test]
    fn denominator_without_drive_at_dc() {
        let op = op_at(0.0);
        let p = op.params;
        let expected =
            p.mass * p.mech_freq.powi(2) * (4.0 * p.cavity_decay.powi(2) + p.detuning.powi(2));
        let d = denominator_d(0.0, &op);
        assert!(rel(d.re, expected) < 1e-14);
        assert_eq!(d.im, 0.0);
    }

    #[test]
    fn denominator_at_dip_is_coupling_dominated() {
        let op = op_at(5e-6);
        let d = denominator_d(wm(), &op);
        let coupling = 2.0 * op.optomechanical_strength() * wm();
        assert!(rel(d.norm(), coupling) < 0.05);
    }

    #[test]
    fn undriven_response_is_empty_cavity_amplitude() {
        let op = op_at(0.0);
        let p = op.params;
        let e = response_e(p.detuning, &op).unwrap();
        assert!((e - 1.0).norm() < 1e-14);
        for frac in [0.3, 0.7, 1.2, 2.5] {
            let w = frac * wm();
            let expected =
                2.0 * p.cavity_decay / Complex64::new(2.0 * p.cavity_decay, p.detuning - w);
            assert!((response_e(w, &op).unwrap() - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn dip_amplitude_matches_asymptote() {
        // With the mechanical term of d and of the numerator dropped,
        // E(ω_m) = 2κ·iħg²n / (−2ħg²nΔ) = −iκ/Δ.
        let op = op_at(5e-6);
        let p = op.params;
        let asymptote = Complex64::new(0.0, -p.cavity_decay / p.detuning);
        let e = response_e(wm(), &op).unwrap();
        assert!((e - asymptote).norm() / asymptote.norm() < 0.1);
    }

    #[test]
    fn far_off_resonance_rejects_probe() {
        let op = op_at(5e-6);
        assert!(response_e(5.0 * wm(), &op).unwrap().norm() < 0.1);
    }

    #[test]
    fn router_states_at_mechanical_frequency() {
        let off = op_at(0.0);
        assert!(reflection_r(wm(), &off).unwrap() < 1e-10);
        assert!((transmission_t(wm(), &off).unwrap() - 1.0).abs() < 1e-10);

        let on = op_at(5e-6);
        let t = transmission_t(wm(), &on).unwrap();
        let r = reflection_r(wm(), &on).unwrap();
        assert!(rel(t, 0.009999618225429904) < 1e-6);
        assert!(rel(r, 1.009980715689122) < 1e-6);
        assert!(rel(t, 0.01) < 0.2);
        assert!(r > 1.0);
    }

    #[test]
    fn vacuum_noise_values() {
        let off = op_at(0.0);
        for frac in [0.5, 1.0, 1.5] {
            assert_eq!(vacuum_noise(frac * wm(), &off).unwrap(), 0.0);
        }
        let on = op_at(5e-6);
        assert!(rel(vacuum_noise(wm(), &on).unwrap(), 0.019999618132457857) < 1e-6);

        let grid = uniform_grid(0.5 * wm(), 1.5 * wm(), 4001).unwrap();
        let peaks = |power: f64| {
            let op = op_at(power);
            let sv: Vec<f64> = grid
                .iter()
                .map(|&w| vacuum_noise(w, &op).unwrap())
                .collect();
            count_local_maxima(&sv)
        };
        assert_eq!(peaks(5e-6), 1);
        assert_eq!(peaks(20e-6), 2);
    }

    #[test]
    fn thermal_noise_values() {
        let cold = op_with(default_params().with_temperature(0.0));
        assert_eq!(thermal_noise(wm(), &cold).unwrap(), 0.0);

        let five = op_at(5e-6);
        let twenty = op_at(20e-6);
        let s5 = thermal_noise(wm(), &five).unwrap();
        let s20 = thermal_noise(wm(), &twenty).unwrap();
        assert!(rel(s5, 0.059963180843468515) < 1e-6);
        assert!(rel(s20, 0.014991009882879547) < 1e-6);
        assert!(rel(s20 / s5, 0.25) < 0.05);

        let hot = op_with(default_params().with_power(20e-6).with_temperature(0.2));
        let grid = uniform_grid(0.5 * wm(), 1.5 * wm(), 4001).unwrap();
        let max = grid
            .iter()
            .map(|&w| thermal_noise(w, &hot).unwrap())
            .fold(0.0, f64::max);
        assert!(rel(max, 0.2332) < 1e-3);
    }

    #[test]
    fn thermal_weight_limits() {
        let op = op_with(default_params().with_temperature(0.05));
        let p = op.params;
        let dc = thermal_weight(0.0, &op);
        assert!(rel(dc, 2.0 * op.mech_damping * p.mass * op.constants.k_b * 0.05) < 1e-15);
        assert!(rel(thermal_weight(1e-3, &op), dc) < 1e-6);
        // Stimulated and spontaneous parts: weight(−ω) − weight(ω) = 2ħγ_m m ω.
        let w = wm();
        let diff = thermal_weight(-w, &op) - thermal_weight(w, &op);
        assert!(rel(diff, 2.0 * op.constants.hbar * op.mech_damping * p.mass * w) < 1e-9);
        // Deep in the quantum regime the occupation uses the exponential tail.
        let frozen = op_with(default_params().with_temperature(1e-6));
        assert!(occupation(w, &frozen) >= 0.0);
        assert!(occupation(w, &frozen).is_finite());
    }

    #[test]
    fn output_spectra_identities() {
        let grid = uniform_grid(0.5 * wm(), 1.5 * wm(), 801).unwrap();
        let line = Lorentzian::new(wm(), 0.01 * wm()).unwrap();

        let off = op_with(default_params().with_power(0.0).with_temperature(0.0));
        let s = output_spectra(&grid, &off, &line).unwrap();
        for i in 0..s.len() {
            let total = s.out_left[i] + s.out_right[i];
            assert!((total - s.input[i]).abs() <= 1e-9 * s.input[i]);
        }

        let on = op_at(5e-6);
        let s = output_spectra(&grid, &on, &line).unwrap();
        for i in 0..s.len() {
            let lhs = s.out_left[i] - s.out_right[i];
            let rhs = s.input[i] * (s.reflection[i] - s.transmission[i]);
            assert!((lhs - rhs).abs() <= 1e-12 * (s.out_left[i] + s.out_right[i]));
        }

        let cold_on = op_with(default_params().with_temperature(0.0));
        let s = output_spectra(&[wm()], &cold_on, &line).unwrap();
        assert!(s.out_right[0] / s.input[0] < 0.05);
    }

    #[test]
    fn output_spectra_rejects_bad_grids() {
        let op = op_at(5e-6);
        let line = Lorentzian::new(wm(), 0.01 * wm()).unwrap();
        assert!(matches!(
            output_spectra(&[], &op, &line),
            Err(Error::InvalidParameter { field: "grid", .. })
        ));
        assert!(output_spectra(&[2.0, 1.0], &op, &line).is_err());
        assert!(output_spectra(&[1.0, 1.0], &op, &line).is_err());
        assert!(uniform_grid(1.0, 2.0, 1).is_err());
    }

    #[test]
    fn linewidth_formula() {
        assert_eq!(eit_linewidth(&op_at(0.0)), op_at(0.0).mech_damping / 2.0);
        assert!(rel(eit_linewidth(&op_at(5e-6)) / wm(), 0.04761266736490852) < 1e-6);
        assert!(rel(eit_linewidth(&op_at(20e-6)) / wm(), 0.19044930582327044) < 1e-6);
    }

    #[test]
    fn dip_scan_widths() {
        // Brute-force numpy scan on a 2e5-point grid gave half-widths of
        // 0.0400 ω_m (5 µW) and 0.1224 ω_m (20 µW).
        let s5 = scan_dip(&op_at(5e-6), 40_001).unwrap();
        assert!((s5.half_width / wm() - 0.0400).abs() < 5e-4);
        assert!((s5.center / wm() - 1.0).abs() < 1e-2);
        let s20 = scan_dip(&op_at(20e-6), 40_001).unwrap();
        assert!((s20.half_width / wm() - 0.1224).abs() < 1e-3);
        assert!(matches!(
            scan_dip(&op_at(0.0), 4001),
            Err(Error::NumericalFailure { .. })
        ));
    }

    #[test]
    fn weak_drive_scaling() {
        let a = op_at(1e-9);
        let b = op_at(2e-9);
        let w = 0.5 * wm();
        let ratio = vacuum_noise(w, &b).unwrap() / vacuum_noise(w, &a).unwrap();
        assert!((ratio - 4.0).abs() < 1e-3);
        let gamma_half = a.mech_damping / 2.0;
        let lw = (eit_linewidth(&b) - gamma_half) / (eit_linewidth(&a) - gamma_half);
        assert!((lw - 2.0).abs() < 1e-3);
    }

    #[test]
    fn undriven_limit_matches_empty_cavity() {
        let op = op_at(0.0);
        let p = op.params;
        let empty = EmptyCavity::new(p.detuning, p.cavity_decay).unwrap();
        let grid = uniform_grid(
            p.detuning - 10.0 * p.cavity_decay,
            p.detuning + 10.0 * p.cavity_decay,
            2001,
        )
        .unwrap();
        let worst = grid
            .iter()
            .filter(|&&w| (w / wm() - 1.0).abs() > 0.01)
            .map(|&w| {
                let r = reflection_r(w, &op).unwrap() - empty.reflectance(w);
                let t = transmission_t(w, &op).unwrap() - empty.transmittance(w);
                r.abs().max(t.abs())
            })
            .fold(0.0, f64::max);
        assert!(worst < 1e-6);
    }

    #[test]
    fn singular_point_is_reported() {
        // Without damping and drive, d vanishes at ω = ω_m.
        let mut params = default_params().with_power(0.0);
        params.quality = 1e300;
        let op = op_with(params);
        assert!(matches!(
            response_e(params.mech_freq, &op),
            Err(Error::NearSingular { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn channels_are_non_negative(power in 0.0f64..20e-6, frac in 0.01f64..3.0, temp in 0.0f64..0.5) {
                let op = op_with(default_params().with_power(power).with_temperature(temp));
                let lin = LinearResponse::evaluate(frac * wm(), &op).unwrap();
                prop_assert!(lin.reflection() >= 0.0);
                prop_assert!(lin.transmission() >= 0.0);
                prop_assert!(lin.vacuum_noise(&op) >= 0.0);
                prop_assert!(lin.thermal_noise(&op) >= 0.0);
            }
        }
    }
}
