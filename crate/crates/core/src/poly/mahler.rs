//! Mahler measure from Jensen's integral, as an oracle independent of root isolation.
//!
//! Roots on the unit circle put logarithmic singularities on the integration contour,
//! which caps the plain trapezoidal rule at O(1/N) accuracy. Instead the integral
//! `I(r) = mean log|f(r e^(2 pi i t))|` is taken on circles just outside the unit circle,
//! where the integrand is analytic and the trapezoidal rule converges geometrically.
//! By Jensen's formula `I(r) = log M(f) + k log r` while no root has modulus in
//! `(1, r]`, with `k` the (integer) number of roots in the closed unit disk, so `k` is
//! read off from the slope between two radii and `log M(f)` by extrapolating to `r = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::PalindromicPolynomial;
use crate::error::{Error, Result};

const MIN_SAMPLES: usize = 256;
const REFINEMENT_TOL: f64 = 1e-10;
const SLOPE_TOL: f64 = 1e-6;

fn jensen_mean(coeffs: &[f64], radius: f64, samples: usize, phase: f64) -> Option<f64> {
    let mut acc = 0.0;
    for k in 0..samples {
        let theta = 2.0 * PI * (k as f64 + 0.5 + phase) / samples as f64;
        let z = Complex64::from_polar(radius, theta);
        let v = coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let a = v.norm();
        if a == 0.0 || !a.is_finite() {
            return None;
        }
        acc += a.ln();
    }
    Some(acc / samples as f64)
}

fn log_measure(coeffs: &[f64], samples: usize, delta: f64) -> Result<f64> {
    for attempt in 0..4 {
        let phase = attempt as f64 * 0.137;
        let radii = [1.0 + delta, 1.0 + 2.0 * delta, 1.0 + 3.0 * delta];
        let means: Option<Vec<f64>> = radii
            .iter()
            .map(|&r| jensen_mean(coeffs, r, samples, phase))
            .collect();
        let Some(means) = means else {
            continue;
        };
        let logs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
        let s01 = (means[1] - means[0]) / (logs[1] - logs[0]);
        let s12 = (means[2] - means[1]) / (logs[2] - logs[1]);
        let k = s01.round();
        if (s01 - k).abs() > SLOPE_TOL || (s12 - k).abs() > SLOPE_TOL {
            return Err(Error::QuadratureUnstable(format!(
                "non-integral root count slope {s01:.9} / {s12:.9} near the unit circle"
            )));
        }
        return Ok(means[0] - k * logs[0]);
    }
    Err(Error::QuadratureUnstable(
        "integrand vanished at sample points for every jittered grid".into(),
    ))
}

/// Mahler measure of `f` from `samples`-point trapezoidal quadrature of Jensen's integral.
///
/// Fails with [`Error::QuadratureUnstable`] when the `samples` and `samples / 2` estimates
/// disagree, or when a root sits too close to the unit circle for the contour shift.
pub fn mahler_measure_jensen(f: &PalindromicPolynomial, samples: usize) -> Result<f64> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let coeffs: Vec<f64> = f.coeffs().iter().map(|&c| c as f64).collect();
    // Contour offset chosen so that samples * delta keeps the aliasing error negligible.
    let delta = (64.0 / samples as f64).min(0.02);
    let fine = log_measure(&coeffs, samples, delta)?;
    let coarse = log_measure(&coeffs, samples / 2, delta)?;
    if (fine - coarse).abs() > REFINEMENT_TOL * fine.abs().max(1.0) {
        return Err(Error::QuadratureUnstable(format!(
            "refinements disagree: {fine:.3e} vs {coarse:.3e}"
        )));
    }
    Ok(fine.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> PalindromicPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn lehmer_measure() {
        let m = mahler_measure_jensen(&poly("1,1,0,-1,-1,-1,-1,-1,0,1,1"), 1 << 16).unwrap();
        assert!((m - 1.176280818).abs() < 1e-6, "{m}");
    }

    #[test]
    fn cyclotomic_has_measure_one() {
        let m = mahler_measure_jensen(&poly("1,1,1"), 1 << 12).unwrap();
        assert!((m - 1.0).abs() < 1e-12, "{m}");
    }

    #[test]
    fn quartic_measure() {
        let m = mahler_measure_jensen(&poly("1,-1,-1,-1,1"), 1 << 14).unwrap();
        assert!((m - 1.7220838).abs() < 1e-6, "{m}");
    }

    #[test]
    fn non_salem_measure() {
        // x^2 + 5x + 1: roots -0.2087 and -4.7913, M = 4.7913
        let m = mahler_measure_jensen(&poly("1,5,1"), 1 << 12).unwrap();
        assert!((m - (5.0 + 21f64.sqrt()) / 2.0).abs() < 1e-10, "{m}");
    }

    #[test]
    fn too_few_samples() {
        assert!(mahler_measure_jensen(&poly("1,1,1"), 16).is_err());
    }
}
