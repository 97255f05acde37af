//! Stability of the linearized dynamics.
//!
//! Fluctuations evolve as `e^{−iωt}`, so the operating point is stable when
//! every zero of `d(ω)` lies in the open lower half plane. The margin is the
//! distance of the closest root to the real axis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operating_point::{derive_operating_point, OperatingPoint, SystemParams};
use crate::roots::{eval, eval_scale, polynomial_roots};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest accepted `|d(root)| / Σ|a_k||root|^k`.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-6;

/// Relative width of the power bracket at which bisection stops.
pub const POWER_REL_TOL: f64 = 1e-2;

/// Coefficients of `d(ω)` in ascending powers of `ω`.
///
/// Expanding `m(ω_m² − iγω − ω²)(4κ² + Δ² − 4iκω − ω²) − 2ħg²|c_s|²Δ`:
///
/// ```text
/// ω⁴: m
/// ω³: i m (4κ + γ)
/// ω²: −m (ω_m² + 4κ² + Δ² + 4γκ)
/// ω¹: −i m (γ(4κ² + Δ²) + 4κω_m²)
/// ω⁰: m ω_m² (4κ² + Δ²) − 2ħg²|c_s|²Δ
/// ```
pub fn d_polynomial_coeffs(op: &OperatingPoint) -> [Complex64; 5] {
    let p = &op.params;
    let m = p.mass;
    let kappa = p.cavity_decay;
    let gamma = op.mech_damping;
    let wm2 = p.mech_freq * p.mech_freq;
    let cav = 4.0 * kappa * kappa + p.detuning * p.detuning;
    [
        Complex64::new(
            m * wm2 * cav - 2.0 * op.optomechanical_strength() * p.detuning,
            0.0,
        ),
        -I * m * (gamma * cav + 4.0 * kappa * wm2),
        Complex64::new(-m * (wm2 + cav + 4.0 * gamma * kappa), 0.0),
        I * m * (4.0 * kappa + gamma),
        Complex64::new(m, 0.0),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    /// Zeros of `d(ω)` sorted by imaginary part, closest to the real axis first.
    pub roots: [Complex64; 4],
    pub stable: bool,
    /// `−max Im(root)` [rad/s]; positive when stable.
    pub margin: f64,
    /// Worst relative residual `|d(root)| / Σ|a_k||root|^k`.
    pub max_residual: f64,
}

pub fn assess_stability(op: &OperatingPoint) -> Result<StabilityReport> {
    let coeffs = d_polynomial_coeffs(op);
    let found = polynomial_roots(&coeffs)?;
    if found.len() != 4 {
        return Err(Error::NumericalFailure {
            stage: "stability",
            detail: "characteristic polynomial did not yield four roots",
        });
    }
    let mut roots = [found[0], found[1], found[2], found[3]];
    roots.sort_by(|a, b| b.im.total_cmp(&a.im).then(a.re.total_cmp(&b.re)));

    let max_residual = roots
        .iter()
        .map(|&r| eval(&coeffs, r).norm() / eval_scale(&coeffs, r))
        .fold(0.0, f64::max);
    if !(max_residual < ROOT_RESIDUAL_TOL) {
        return Err(Error::NumericalFailure {
            stage: "stability",
            detail: "root residual above tolerance",
        });
    }
    let margin = -roots[0].im;
    Ok(StabilityReport {
        roots,
        stable: margin > 0.0,
        margin,
        max_residual,
    })
}

/// Largest drive power in `[0, max_power]` that keeps the operating point
/// stable, found by bisection to [`POWER_REL_TOL`]. Assumes the stable set
/// along the power axis is an interval starting at zero.
pub fn max_stable_power(params: &SystemParams, max_power: f64) -> Result<f64> {
    if !(max_power.is_finite() && max_power >= 0.0) {
        return Err(Error::invalid(
            "max_power",
            "must be finite and non-negative",
        ));
    }
    let stable_at = |power: f64| -> Result<bool> {
        Ok(assess_stability(&derive_operating_point(&params.with_power(power))?)?.stable)
    };
    if !stable_at(0.0)? {
        return Err(Error::ContractViolation(
            "operating point is unstable without drive",
        ));
    }
    if max_power == 0.0 || stable_at(max_power)? {
        return Ok(max_power);
    }
    let (mut lo, mut hi) = (0.0, max_power);
    while hi - lo > POWER_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if stable_at(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operating_point::default_params;
    use crate::response::denominator_at;
    use crate::roots::eval;
    use proptest::prelude::*;
    use std::vec::Vec;

    fn op_at(power: f64) -> OperatingPoint {
        derive_operating_point(&default_params().with_power(power)).unwrap()
    }

    fn blue() -> SystemParams {
        let p = default_params();
        p.with_detuning(-p.mech_freq)
    }

    /// Roots of the two uncoupled quadratic factors.
    fn closed_form_roots(op: &OperatingPoint) -> [Complex64; 4] {
        let p = &op.params;
        let g = op.mech_damping;
        let shifted = (p.mech_freq * p.mech_freq - g * g / 4.0).sqrt();
        [
            Complex64::new(shifted, -g / 2.0),
            Complex64::new(-shifted, -g / 2.0),
            Complex64::new(p.detuning, -2.0 * p.cavity_decay),
            Complex64::new(-p.detuning, -2.0 * p.cavity_decay),
        ]
    }

    #[test]
    fn leading_coefficient_is_mass() {
        let op = op_at(5e-6);
        assert_eq!(
            d_polynomial_coeffs(&op)[4],
            Complex64::new(op.params.mass, 0.0)
        );
    }

    #[test]
    fn coefficients_match_direct_evaluation() {
        let op = op_at(20e-6);
        let coeffs = d_polynomial_coeffs(&op);
        let wm = op.params.mech_freq;
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut uniform = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let w = Complex64::new((4.0 * uniform() - 2.0) * wm, (2.0 * uniform() - 1.0) * wm);
            let direct = denominator_at(w, &op);
            let horner = eval(&coeffs, w);
            assert!((direct - horner).norm() <= 1e-9 * eval_scale(&coeffs, w));
        }
    }

    #[test]
    fn drive_only_moves_constant_term() {
        let a = d_polynomial_coeffs(&op_at(5e-6));
        let b = d_polynomial_coeffs(&op_at(10e-6));
        assert_ne!(a[0], b[0]);
        assert_eq!(a[1..], b[1..]);
    }

    #[test]
    fn undriven_roots_are_closed_form() {
        let op = op_at(0.0);
        let report = assess_stability(&op).unwrap();
        for expected in closed_form_roots(&op) {
            let best = report
                .roots
                .iter()
                .map(|r| (r - expected).norm() / expected.norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-8, "missing root {expected}");
        }
        assert!(report.stable);
        assert!((report.margin - op.mech_damping / 2.0).abs() < 1e-6 * op.mech_damping);
    }

    #[test]
    fn reference_powers_are_stable() {
        for power in [0.0, 5e-6, 20e-6] {
            let report = assess_stability(&op_at(power)).unwrap();
            assert!(report.stable, "unstable at {power}");
            assert!(report.max_residual < ROOT_RESIDUAL_TOL);
        }
        assert_eq!(max_stable_power(&default_params(), 20e-6).unwrap(), 20e-6);
        assert_eq!(max_stable_power(&default_params(), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn blue_detuning_has_threshold() {
        let params = blue();
        let threshold = max_stable_power(&params, 1e-3).unwrap();
        assert!(threshold > 0.0 && threshold < 1e-3);
        let below = assess_stability(
            &derive_operating_point(&params.with_power(0.98 * threshold)).unwrap(),
        )
        .unwrap();
        let above = assess_stability(
            &derive_operating_point(&params.with_power(1.02 * threshold)).unwrap(),
        )
        .unwrap();
        assert!(below.stable);
        assert!(!above.stable);
        assert!(above.margin < 0.0);
    }

    #[test]
    fn stable_set_is_an_interval() {
        let params = blue();
        let threshold = max_stable_power(&params, 1e-3).unwrap();
        let flags: Vec<bool> = (0..=60)
            .map(|i| {
                let power = threshold * 3.0 * i as f64 / 60.0;
                assess_stability(&derive_operating_point(&params.with_power(power)).unwrap())
                    .unwrap()
                    .stable
            })
            .collect();
        let first_unstable = flags.iter().position(|s| !s).unwrap();
        assert!(flags[first_unstable..].iter().all(|s| !s));
    }

    #[test]
    fn unstable_origin_is_rejected() {
        let mut params = default_params();
        params.quality = -1.0;
        assert!(max_stable_power(&params, 1e-6).is_err());
        assert!(max_stable_power(&default_params(), -1.0).is_err());
    }

    proptest! {
        #[test]
        fn residuals_stay_small(power in 0.0f64..50e-6, detuning_frac in -1.5f64..1.5) {
            let p = default_params();
            let op = derive_operating_point(&p.with_power(power).with_detuning(detuning_frac * p.mech_freq)).unwrap();
            let report = assess_stability(&op).unwrap();
            prop_assert!(report.max_residual < ROOT_RESIDUAL_TOL);
        }
    }
}
