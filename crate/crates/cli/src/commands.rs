use optorouter_core::response::{eit_linewidth, scan_dip, ChannelPoint};
use optorouter_core::router::BAND_HALF_WIDTHS;
use optorouter_core::{
    assess_stability, derive_operating_point, max_stable_power, routing_probabilities,
    switching_contrast, Band, ChannelSpectra, Lorentzian, OperatingPoint, SystemParams,
};
use rayon::prelude::*;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, ExitStatus};
use crate::output::{self, RouteJson, SpectrumJson, StabilityJson, SweepOutcome};

const DIP_SCAN_POINTS: usize = 20_001;

/// Rendered command output plus the exit status it should produce.
#[derive(Debug)]
pub struct Rendered {
    pub body: String,
    pub status: ExitStatus,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Self {
            body,
            status: ExitStatus::Success,
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn warn_regime(params: &SystemParams) {
    if !params.in_eit_regime() {
        eprintln!("warning: parameters are outside γ_m ≪ κ ≪ ω_m; the transparency window may be poorly formed");
    }
}

/// Operating point for `cfg`, rejected with exit 3 if unstable.
fn stable_operating_point(cfg: &RunConfig) -> Result<OperatingPoint, CliError> {
    let params = cfg.system_params()?;
    let op = derive_operating_point(&params)?;
    let report = assess_stability(&op)?;
    if !report.stable {
        return Err(CliError::Unstable(format!(
            "a characteristic root sits {:.3e} rad/s above the real axis",
            -report.margin
        )));
    }
    Ok(op)
}

pub fn compute_spectra(cfg: &RunConfig) -> Result<ChannelSpectra, CliError> {
    cfg.validate()?;
    let op = stable_operating_point(cfg)?;
    let grid = cfg.grid()?;
    let line = Lorentzian::new(op.params.probe_center(), op.params.input_bandwidth)?;
    let points = grid
        .par_iter()
        .map(|&w| ChannelPoint::evaluate(w, &op, &line))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChannelSpectra::from_points(&points))
}

pub fn spectrum(cfg: &RunConfig) -> Result<Rendered, CliError> {
    warn_regime(&cfg.system_params()?);
    let spectra = compute_spectra(cfg)?;
    let mech_freq = cfg.mech_freq();
    Ok(Rendered::ok(match cfg.format {
        Format::Csv => output::spectrum_csv(&spectra, mech_freq),
        Format::Json => json(&SpectrumJson::new(&spectra, mech_freq)),
    }))
}

pub fn sweep(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let param = cfg
        .sweep_param
        .ok_or_else(|| CliError::invalid("sweep_param", "a sweep parameter is required"))?;
    if cfg.sweep_values.is_empty() {
        return Err(CliError::invalid("sweep_values", "sweep list is empty"));
    }
    let configs = cfg
        .sweep_values
        .iter()
        .map(|&v| {
            if !v.is_finite() {
                return Err(CliError::invalid(
                    "sweep_values",
                    format!("{v} is not finite"),
                ));
            }
            let next = cfg.with_sweep_value(param, v);
            next.validate()?;
            Ok((v, next))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let blocks: Vec<(f64, SweepOutcome)> = configs
        .par_iter()
        .map(|(v, c)| {
            let outcome = match compute_spectra(c) {
                Ok(s) => SweepOutcome::Ok(s),
                Err(CliError::Unstable(m)) => SweepOutcome::Unstable(m),
                Err(e) => SweepOutcome::Failed(e.to_string()),
            };
            (*v, outcome)
        })
        .collect();

    let mech_freq = cfg.mech_freq();
    Ok(Rendered::ok(match cfg.format {
        Format::Csv => output::sweep_csv(param.name(), &blocks, mech_freq),
        Format::Json => json(&output::sweep_json(param.name(), &blocks, mech_freq)),
    }))
}

pub fn stability(cfg: &RunConfig) -> Result<Rendered, CliError> {
    cfg.validate()?;
    let params = cfg.system_params()?;
    let op = derive_operating_point(&params)?;
    let report = assess_stability(&op)?;
    let threshold = max_stable_power(&params, params.drive_power).ok();
    let view = StabilityJson::new(&report, threshold);
    let body = match cfg.format {
        Format::Csv => view.to_csv(),
        Format::Json => json(&view),
    };
    Ok(Rendered {
        body,
        status: if report.stable {
            ExitStatus::Success
        } else {
            ExitStatus::Unstable
        },
    })
}

/// Configured routing band, or the plotted range widened to cover ±10Γ.
fn routing_band(cfg: &RunConfig, params: &SystemParams) -> Result<Band, CliError> {
    if let Some(b) = cfg.band {
        return Ok(Band::new(cfg.frequency(b.lo), cfg.frequency(b.hi))?);
    }
    let plotted = Band::default_for(params);
    let center = params.probe_center();
    let reach = BAND_HALF_WIDTHS * params.input_bandwidth;
    Ok(Band::new(
        plotted.lo.min(center - reach),
        plotted.hi.max(center + reach),
    )?)
}

pub fn route(cfg: &RunConfig) -> Result<Rendered, CliError> {
    cfg.validate()?;
    let op = stable_operating_point(cfg)?;
    let params = op.params;
    warn_regime(&params);
    let band = routing_band(cfg, &params)?;
    let report = routing_probabilities(&op, band, cfg.quad_points)?;
    let contrast = switching_contrast(&params, params.drive_power)?;
    let scanned = scan_dip(&op, DIP_SCAN_POINTS).ok().map(|s| s.half_width);
    let view = RouteJson::new(
        &report,
        contrast,
        eit_linewidth(&op),
        scanned,
        params.mech_freq,
    );
    Ok(Rendered::ok(match cfg.format {
        Format::Csv => view.to_csv(),
        Format::Json => json(&view),
    }))
}
