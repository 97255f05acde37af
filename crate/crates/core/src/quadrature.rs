//! Adaptive 7/15-point Gauss–Kronrod quadrature for a small vector of
//! integrands sharing the same evaluation points.

#![allow(clippy::excessive_precision)]

use alloc::vec::Vec;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Bisection depth at which a panel is declared non-convergent.
const MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSettings {
    /// Number of equal panels the interval is first split into.
    pub panels: usize,
    pub rel_tol: f64,
    /// Absolute floor per component, relative to the panel-sum magnitude.
    pub abs_floor: f64,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self {
            panels: 16,
            rel_tol: 1e-6,
            abs_floor: 1e-300,
        }
    }
}

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
    depth: u32,
}

fn gauss_kronrod<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Result<([f64; N], [f64; N])>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];
    for k in 0..N {
        kronrod[k] = WGK[7] * fc[k];
        gauss[k] = WG[3] * fc[k];
    }
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let lo = f(center - half * x)?;
        let hi = f(center + half * x)?;
        for k in 0..N {
            let sum = lo[k] + hi[k];
            kronrod[k] += w * sum;
            if j % 2 == 1 {
                gauss[k] += WG[j / 2] * sum;
            }
        }
    }
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for k in 0..N {
        value[k] = kronrod[k] * half;
        error[k] = ((kronrod[k] - gauss[k]) * half).abs();
    }
    Ok((value, error))
}

/// Integrates every component of `f` over `[a, b]`.
///
/// The interval is first cut into `settings.panels` equal pieces; pieces are
/// then bisected until each component's summed error estimate is below
/// `rel_tol` times the magnitude of that component's integral.
pub fn integrate<const N: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    settings: QuadSettings,
) -> Result<[f64; N]>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::invalid(
            "band",
            "integration bounds must be finite with lo < hi",
        ));
    }
    if settings.panels == 0 {
        return Err(Error::invalid("quad_points", "need at least one panel"));
    }
    let width = (b - a) / settings.panels as f64;
    let mut panels = Vec::with_capacity(settings.panels);
    for i in 0..settings.panels {
        let lo = a + width * i as f64;
        let hi = if i + 1 == settings.panels {
            b
        } else {
            lo + width
        };
        let (value, error) = gauss_kronrod(&mut f, lo, hi)?;
        panels.push(Panel {
            a: lo,
            b: hi,
            value,
            error,
            depth: 0,
        });
    }

    loop {
        let mut total = [0.0; N];
        let mut scale = [0.0; N];
        let mut error = [0.0; N];
        for p in &panels {
            for k in 0..N {
                total[k] += p.value[k];
                scale[k] += p.value[k].abs();
                error[k] += p.error[k];
            }
        }
        let target: [f64; N] = core::array::from_fn(|k| {
            (settings.rel_tol * total[k].abs()).max(settings.abs_floor * scale[k])
        });
        if (0..N).all(|k| error[k] <= target[k]) {
            return Ok(total);
        }

        // Split every panel whose share of the error exceeds its share of the
        // tolerance.
        let span = b - a;
        let mut next = Vec::with_capacity(panels.len() * 2);
        let mut split_any = false;
        for p in panels {
            let share = (p.b - p.a) / span;
            let needs_split =
                (0..N).any(|k| error[k] > target[k] && p.error[k] > target[k] * share);
            if !needs_split {
                next.push(p);
                continue;
            }
            if p.depth >= MAX_DEPTH {
                return Err(Error::NumericalFailure {
                    stage: "quadrature",
                    detail: "adaptive refinement exceeded maximum depth",
                });
            }
            split_any = true;
            let mid = 0.5 * (p.a + p.b);
            for (lo, hi) in [(p.a, mid), (mid, p.b)] {
                let (value, error) = gauss_kronrod(&mut f, lo, hi)?;
                next.push(Panel {
                    a: lo,
                    b: hi,
                    value,
                    error,
                    depth: p.depth + 1,
                });
            }
        }
        if !split_any {
            return Err(Error::NumericalFailure {
                stage: "quadrature",
                detail: "error estimate stalled above tolerance",
            });
        }
        panels = next;
    }
}
