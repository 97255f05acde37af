//! CSV and JSON renderings.
//!
//! CSV numbers use Rust's `{:.9e}` formatting: a `.` decimal point, no digit
//! grouping and ten significant digits, independent of the host locale.

use std::fmt::Write as _;

use optorouter_core::{ChannelSpectra, Complex64, RoutingReport, StabilityReport};
use serde::Serialize;

pub const SPECTRUM_COLUMNS: [&str; 7] =
    ["omega_over_omega_m", "R", "T", "Sv", "St", "Scout", "Sdout"];

pub fn num(value: f64) -> String {
    format!("{value:.9e}")
}

fn spectrum_row(spectra: &ChannelSpectra, i: usize, mech_freq: f64) -> [f64; 7] {
    [
        spectra.omega[i] / mech_freq,
        spectra.reflection[i],
        spectra.transmission[i],
        spectra.vacuum[i],
        spectra.thermal[i],
        spectra.out_left[i],
        spectra.out_right[i],
    ]
}

fn push_row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    let line = cells.into_iter().collect::<Vec<_>>().join(",");
    out.push_str(&line);
    out.push('\n');
}

pub fn spectrum_csv(spectra: &ChannelSpectra, mech_freq: f64) -> String {
    let mut out = String::new();
    push_row(&mut out, SPECTRUM_COLUMNS.iter().map(|c| c.to_string()));
    for i in 0..spectra.len() {
        push_row(&mut out, spectrum_row(spectra, i, mech_freq).map(num));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct SpectrumJson {
    pub omega_over_omega_m: Vec<f64>,
    #[serde(rename = "R")]
    pub reflection: Vec<f64>,
    #[serde(rename = "T")]
    pub transmission: Vec<f64>,
    #[serde(rename = "Sv")]
    pub vacuum: Vec<f64>,
    #[serde(rename = "St")]
    pub thermal: Vec<f64>,
    #[serde(rename = "Scout")]
    pub out_left: Vec<f64>,
    #[serde(rename = "Sdout")]
    pub out_right: Vec<f64>,
}

impl SpectrumJson {
    pub fn new(spectra: &ChannelSpectra, mech_freq: f64) -> Self {
        Self {
            omega_over_omega_m: spectra.omega.iter().map(|w| w / mech_freq).collect(),
            reflection: spectra.reflection.clone(),
            transmission: spectra.transmission.clone(),
            vacuum: spectra.vacuum.clone(),
            thermal: spectra.thermal.clone(),
            out_left: spectra.out_left.clone(),
            out_right: spectra.out_right.clone(),
        }
    }
}

/// Outcome of one sweep value.
#[derive(Debug)]
pub enum SweepOutcome {
    Ok(ChannelSpectra),
    Unstable(String),
    Failed(String),
}

impl SweepOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            SweepOutcome::Ok(_) => "ok",
            SweepOutcome::Unstable(_) => "unstable",
            SweepOutcome::Failed(_) => "error",
        }
    }
}

pub fn sweep_csv(param: &str, blocks: &[(f64, SweepOutcome)], mech_freq: f64) -> String {
    let mut out = String::new();
    let header = ["sweep_param", "sweep_value", "status"]
        .into_iter()
        .chain(SPECTRUM_COLUMNS)
        .map(String::from);
    push_row(&mut out, header);
    for (value, outcome) in blocks {
        let lead = [param.to_string(), num(*value), outcome.status().to_string()];
        match outcome {
            SweepOutcome::Ok(spectra) => {
                for i in 0..spectra.len() {
                    let row = spectrum_row(spectra, i, mech_freq).map(num);
                    push_row(&mut out, lead.iter().cloned().chain(row));
                }
            }
            SweepOutcome::Unstable(_) | SweepOutcome::Failed(_) => {
                let empty = std::iter::repeat_n(String::new(), SPECTRUM_COLUMNS.len());
                push_row(&mut out, lead.iter().cloned().chain(empty));
            }
        }
    }
    out
}

#[derive(Debug, Serialize)]
pub struct SweepBlockJson {
    pub sweep_param: String,
    pub sweep_value: f64,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumJson>,
}

pub fn sweep_json(
    param: &str,
    blocks: &[(f64, SweepOutcome)],
    mech_freq: f64,
) -> Vec<SweepBlockJson> {
    blocks
        .iter()
        .map(|(value, outcome)| {
            let (message, spectrum) = match outcome {
                SweepOutcome::Ok(s) => (None, Some(SpectrumJson::new(s, mech_freq))),
                SweepOutcome::Unstable(m) | SweepOutcome::Failed(m) => (Some(m.clone()), None),
            };
            SweepBlockJson {
                sweep_param: param.to_string(),
                sweep_value: *value,
                status: outcome.status(),
                message,
                spectrum,
            }
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct RootJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for RootJson {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

#[derive(Debug, Serialize)]
pub struct StabilityJson {
    pub stable: bool,
    pub margin_rad_per_s: f64,
    pub max_residual: f64,
    pub roots_rad_per_s: Vec<RootJson>,
    pub max_stable_power_w: Option<f64>,
}

impl StabilityJson {
    pub fn new(report: &StabilityReport, max_stable_power: Option<f64>) -> Self {
        Self {
            stable: report.stable,
            margin_rad_per_s: report.margin,
            max_residual: report.max_residual,
            roots_rad_per_s: report.roots.iter().copied().map(RootJson::from).collect(),
            max_stable_power_w: max_stable_power,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("quantity,value\n");
        let _ = writeln!(out, "stable,{}", self.stable);
        let _ = writeln!(out, "margin_rad_per_s,{}", num(self.margin_rad_per_s));
        let _ = writeln!(out, "max_residual,{}", num(self.max_residual));
        for (i, r) in self.roots_rad_per_s.iter().enumerate() {
            let _ = writeln!(out, "root{i}_re_rad_per_s,{}", num(r.re));
            let _ = writeln!(out, "root{i}_im_rad_per_s,{}", num(r.im));
        }
        if let Some(p) = self.max_stable_power_w {
            let _ = writeln!(out, "max_stable_power_w,{}", num(p));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct RouteJson {
    pub p_reflect: f64,
    pub p_transmit: f64,
    pub vacuum_leak: f64,
    pub thermal_leak: f64,
    pub contrast: f64,
    pub input_in_band: f64,
    pub band_lo_over_omega_m: f64,
    pub band_hi_over_omega_m: f64,
    pub switching_contrast: f64,
    pub eit_linewidth_formula_over_omega_m: f64,
    /// `None` when no dip is resolved (undriven cavity).
    pub dip_half_width_scan_over_omega_m: Option<f64>,
}

impl RouteJson {
    pub fn new(
        report: &RoutingReport,
        switching_contrast: f64,
        linewidth: f64,
        scanned: Option<f64>,
        mech_freq: f64,
    ) -> Self {
        Self {
            p_reflect: report.p_reflect,
            p_transmit: report.p_transmit,
            vacuum_leak: report.vacuum_leak,
            thermal_leak: report.thermal_leak,
            contrast: report.contrast,
            input_in_band: report.input_in_band,
            band_lo_over_omega_m: report.band.lo / mech_freq,
            band_hi_over_omega_m: report.band.hi / mech_freq,
            switching_contrast,
            eit_linewidth_formula_over_omega_m: linewidth / mech_freq,
            dip_half_width_scan_over_omega_m: scanned.map(|w| w / mech_freq),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("quantity,value\n");
        let rows = [
            ("p_reflect", Some(self.p_reflect)),
            ("p_transmit", Some(self.p_transmit)),
            ("vacuum_leak", Some(self.vacuum_leak)),
            ("thermal_leak", Some(self.thermal_leak)),
            ("contrast", Some(self.contrast)),
            ("input_in_band", Some(self.input_in_band)),
            ("band_lo_over_omega_m", Some(self.band_lo_over_omega_m)),
            ("band_hi_over_omega_m", Some(self.band_hi_over_omega_m)),
            ("switching_contrast", Some(self.switching_contrast)),
            (
                "eit_linewidth_formula_over_omega_m",
                Some(self.eit_linewidth_formula_over_omega_m),
            ),
            (
                "dip_half_width_scan_over_omega_m",
                self.dip_half_width_scan_over_omega_m,
            ),
        ];
        for (name, value) in rows {
            let cell = value.map(num).unwrap_or_default();
            let _ = writeln!(out, "{name},{cell}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_is_plain_scientific() {
        assert_eq!(num(0.5), "5.000000000e-1");
        assert_eq!(num(-1234567.0), "-1.234567000e6");
        assert_eq!(num(0.0), "0.000000000e0");
    }

    #[test]
    fn csv_shape() {
        let spectra = ChannelSpectra {
            omega: vec![1.0, 2.0],
            input: vec![0.0; 2],
            reflection: vec![0.1, 0.2],
            transmission: vec![0.9, 0.8],
            vacuum: vec![0.0; 2],
            thermal: vec![0.0; 2],
            out_left: vec![0.0; 2],
            out_right: vec![0.0; 2],
        };
        let csv = spectrum_csv(&spectra, 2.0);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "omega_over_omega_m,R,T,Sv,St,Scout,Sdout");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("5.000000000e-1,1.000000000e-1,"));

        let blocks = vec![
            (1e-6, SweepOutcome::Ok(spectra)),
            (2e-6, SweepOutcome::Unstable("boom".into())),
        ];
        let sweep = sweep_csv("power", &blocks, 2.0);
        let lines: Vec<&str> = sweep.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[3], "power,2.000000000e-6,unstable,,,,,,,");
    }
}
