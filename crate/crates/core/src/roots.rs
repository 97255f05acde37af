//! Roots of complex polynomials from the eigenvalues of the companion matrix.
//!
//! The companion matrix is already upper Hessenberg, so the eigenvalues are
//! found with single-shift complex QR sweeps (Givens rotations, Wilkinson
//! shift, exceptional shifts on stagnation). Each root is then polished with a
//! few Newton steps on the original coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS_PER_ROOT: usize = 60;
const NEWTON_STEPS: usize = 4;

/// Horner evaluation; `coeffs[k]` multiplies `x^k`.
pub fn eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// `Σ |c_k| |x|^k`, the magnitude scale against which residuals are judged.
pub fn eval_scale(coeffs: &[Complex64], x: Complex64) -> f64 {
    let r = x.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

fn derivative_eval(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * x + c * k as f64;
    }
    acc
}

struct Hessenberg {
    n: usize,
    a: Vec<Complex64>,
}

impl Hessenberg {
    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.a[i * self.n + j] = v;
    }

    /// Companion matrix of the monic polynomial with lower coefficients
    /// `monic[0..n]`: ones on the subdiagonal, `−monic` in the last column.
    fn companion(monic: &[Complex64]) -> Self {
        let n = monic.len();
        let mut h = Self {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        };
        for i in 1..n {
            h.set(i, i - 1, Complex64::new(1.0, 0.0));
        }
        for (i, &c) in monic.iter().enumerate() {
            h.set(i, n - 1, -c);
        }
        h
    }

    /// Wilkinson shift: eigenvalue of the trailing 2×2 block closest to the
    /// bottom-right entry.
    fn wilkinson_shift(&self, hi: usize) -> Complex64 {
        let a = self.at(hi - 1, hi - 1);
        let b = self.at(hi - 1, hi);
        let c = self.at(hi, hi - 1);
        let d = self.at(hi, hi);
        let half_diff = (a - d) * 0.5;
        let disc = (half_diff * half_diff + b * c).sqrt();
        let mid = (a + d) * 0.5;
        let (l1, l2) = (mid + disc, mid - disc);
        if (l1 - d).norm() <= (l2 - d).norm() {
            l1
        } else {
            l2
        }
    }

    /// One shifted QR sweep on the active block `lo..=hi`.
    fn sweep(&mut self, lo: usize, hi: usize, shift: Complex64) {
        for k in lo..=hi {
            let v = self.at(k, k) - shift;
            self.set(k, k, v);
        }
        let mut rotations: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let x = self.at(k, k);
            let y = self.at(k + 1, k);
            let r = libm::hypot(x.norm(), y.norm());
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (x / r, y / r)
            };
            for j in k..=hi {
                let top = self.at(k, j);
                let bottom = self.at(k + 1, j);
                self.set(k, j, c.conj() * top + s.conj() * bottom);
                self.set(k + 1, j, -s * top + c * bottom);
            }
            rotations.push((c, s));
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + offset;
            for i in lo..=(k + 1).min(hi) {
                let left = self.at(i, k);
                let right = self.at(i, k + 1);
                self.set(i, k, left * c + right * s);
                self.set(i, k + 1, -left * s.conj() + right * c.conj());
            }
        }
        for k in lo..=hi {
            let v = self.at(k, k) + shift;
            self.set(k, k, v);
        }
    }

    fn eigenvalues(mut self) -> Result<Vec<Complex64>> {
        let n = self.n;
        let mut values = Vec::with_capacity(n);
        if n == 0 {
            return Ok(values);
        }
        let mut hi = n - 1;
        let mut stalled = 0usize;
        loop {
            if hi == 0 {
                values.push(self.at(0, 0));
                break;
            }
            // Deflate on a negligible subdiagonal entry.
            let mut lo = hi;
            while lo > 0 {
                let sub = self.at(lo, lo - 1).norm();
                let diag = self.at(lo, lo).norm() + self.at(lo - 1, lo - 1).norm();
                if sub <= f64::EPSILON * diag || sub < f64::MIN_POSITIVE {
                    self.set(lo, lo - 1, Complex64::new(0.0, 0.0));
                    break;
                }
                lo -= 1;
            }
            if lo == hi {
                values.push(self.at(hi, hi));
                hi -= 1;
                stalled = 0;
                continue;
            }
            stalled += 1;
            if stalled > MAX_SWEEPS_PER_ROOT {
                return Err(Error::NumericalFailure {
                    stage: "companion QR",
                    detail: "eigenvalue iteration did not converge",
                });
            }
            let shift = if stalled.is_multiple_of(11) {
                // Exceptional shift breaks cycles of the Wilkinson shift.
                let sub = self.at(hi, hi - 1).norm();
                self.at(hi, hi) + Complex64::new(0.75 * sub, 0.4375 * sub)
            } else {
                self.wilkinson_shift(hi)
            };
            self.sweep(lo, hi, shift);
        }
        Ok(values)
    }
}

fn polish(coeffs: &[Complex64], mut x: Complex64) -> Complex64 {
    let mut best = eval(coeffs, x).norm();
    for _ in 0..NEWTON_STEPS {
        let slope = derivative_eval(coeffs, x);
        if slope.norm() == 0.0 {
            break;
        }
        let candidate = x - eval(coeffs, x) / slope;
        let residual = eval(coeffs, candidate).norm();
        if !(residual < best) {
            break;
        }
        best = residual;
        x = candidate;
    }
    x
}

/// All roots of `Σ coeffs[k] x^k`.
///
/// Trailing zero coefficients are dropped; the polynomial must have degree at
/// least one. The variable is rescaled so that the constant and leading
/// coefficients have equal magnitude and the coefficients are normalized to
/// unit geometric mean before the eigenvalue iteration.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = match coeffs.iter().rposition(|c| c.norm() != 0.0) {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::invalid(
                "coefficients",
                "polynomial must have degree at least one",
            ))
        }
    };
    if coeffs
        .iter()
        .any(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        return Err(Error::invalid("coefficients", "must be finite"));
    }
    let coeffs = &coeffs[..=degree];

    // Zero roots factor out exactly.
    let zeros = coeffs.iter().position(|c| c.norm() != 0.0).unwrap_or(0);
    let reduced = &coeffs[zeros..];
    let deg = reduced.len() - 1;

    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if deg == 0 {
        return Ok(roots);
    }

    let scale = libm::pow(reduced[0].norm() / reduced[deg].norm(), 1.0 / deg as f64);
    let scaled: Vec<Complex64> = reduced
        .iter()
        .enumerate()
        .map(|(k, &c)| c * libm::pow(scale, k as f64))
        .collect();
    let log_mean = scaled
        .iter()
        .map(|c| libm::log(c.norm().max(f64::MIN_POSITIVE)))
        .sum::<f64>()
        / scaled.len() as f64;
    let norm = libm::exp(log_mean);
    let lead = scaled[deg] / norm;
    let monic: Vec<Complex64> = scaled[..deg].iter().map(|&c| (c / norm) / lead).collect();

    for z in Hessenberg::companion(&monic).eigenvalues()? {
        roots.push(polish(coeffs, z * scale));
    }
    Ok(roots)
}
