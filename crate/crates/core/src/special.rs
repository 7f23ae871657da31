//! Scalar kernels: the principal branch of the Lambert W function and a spectral-efficiency
//! evaluator that stays accurate at vanishing SNR.

use core::f64::consts::{E, LN_2};

use crate::float;
use crate::{Error, Result};

/// -1/e, the branch point of W.
pub const BRANCH_POINT: f64 = -1.0 / E;

/// Inputs this far below the branch point are treated as rounding noise and clamped.
const BRANCH_SLACK: f64 = 1e-15;

/// Absolute residual accepted when the argument is close to zero.
const ABS_RESIDUAL_NEAR_ZERO: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub rel_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rel_tolerance: 1e-12,
            max_iterations: 100,
        }
    }
}

impl SolverConfig {
    pub fn new(rel_tolerance: f64, max_iterations: usize) -> Result<Self> {
        if !(rel_tolerance > 0.0) || !rel_tolerance.is_finite() {
            return Err(Error::invalid(
                "rel_tolerance",
                "must be positive and finite",
                rel_tolerance,
            ));
        }
        if max_iterations == 0 {
            return Err(Error::invalid("max_iterations", "must be at least 1", 0.0));
        }
        Ok(Self {
            rel_tolerance,
            max_iterations,
        })
    }

    fn accepts(&self, w: f64, a: f64) -> bool {
        let residual = (w * float::exp(w) - a).abs();
        residual <= self.rel_tolerance * a.abs() || (a.abs() < 1.0 && residual <= ABS_RESIDUAL_NEAR_ZERO)
    }
}

/// Principal branch W0 of the Lambert W function, the inverse of `w * e^w` on `[-1, inf)`.
///
/// Uses Halley iteration from a region-specific starting point and falls back to bisection
/// if Halley fails to meet the residual tolerance. Arguments at most `1e-15` below `-1/e`
/// are clamped to the branch point.
pub fn lambert_w0(a: f64, cfg: &SolverConfig) -> Result<f64> {
    if a.is_nan() || a == f64::INFINITY {
        return Err(Error::invalid("a", "must be finite", a));
    }
    if a < BRANCH_POINT - BRANCH_SLACK {
        return Err(Error::Domain { arg: a });
    }
    if a <= BRANCH_POINT {
        return Ok(-1.0);
    }
    if a == 0.0 {
        return Ok(0.0);
    }

    let mut w = initial_guess(a);
    for _ in 0..cfg.max_iterations {
        let ew = float::exp(w);
        let f = w * ew - a;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        let next = (w - step).max(-1.0);
        let settled = (next - w).abs() <= 4.0 * f64::EPSILON * (1.0 + next.abs());
        w = next;
        if settled {
            break;
        }
    }
    if w.is_finite() && cfg.accepts(w, a) {
        return Ok(w);
    }
    bisect(a, cfg)
}

fn initial_guess(a: f64) -> f64 {
    if a > E {
        let l = float::ln(a);
        l - float::ln(l)
    } else if a < -0.25 {
        // Series in p = sqrt(2(e*a + 1)) around the branch point.
        let p = float::sqrt(2.0 * (E * a + 1.0));
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else {
        a / (1.0 + a)
    }
}

fn bisect(a: f64, cfg: &SolverConfig) -> Result<f64> {
    let mut lo = -1.0_f64;
    let mut hi = if a <= E { 1.0 } else { float::ln(a) };
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..cfg.max_iterations {
        mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mid * float::exp(mid) > a {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if cfg.accepts(mid, a) {
        Ok(mid)
    } else {
        Err(Error::Convergence {
            last: mid,
            iterations: cfg.max_iterations,
        })
    }
}

/// Spectral efficiency `log2(1 + snr)` in bit/s/Hz.
///
/// Evaluated through `log1p`, so tiny SNRs keep full relative precision.
pub fn spectral_efficiency(snr: f64) -> Result<f64> {
    if !(snr >= 0.0) || !snr.is_finite() {
        return Err(Error::invalid("snr", "must be non-negative and finite", snr));
    }
    Ok(float::ln_1p(snr) / LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(lambert_w0(0.0, &cfg()).unwrap(), 0.0);
        assert!((lambert_w0(E, &cfg()).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(lambert_w0(BRANCH_POINT, &cfg()).unwrap(), -1.0);
    }

    #[test]
    fn branch_point_slack() {
        assert_eq!(lambert_w0(BRANCH_POINT - 5e-16, &cfg()).unwrap(), -1.0);
        assert!(matches!(
            lambert_w0(BRANCH_POINT - 1e-12, &cfg()),
            Err(Error::Domain { .. })
        ));
        assert!(lambert_w0(f64::NAN, &cfg()).is_err());
    }

    #[test]
    fn near_branch_point() {
        let a = BRANCH_POINT + 1e-12;
        let w = lambert_w0(a, &cfg()).unwrap();
        assert!(w > -1.0 && w < -0.99);
        assert!((w * float::exp(w) - a).abs() < 1e-14);
    }

    #[test]
    fn convergence_error_reports_last_iterate() {
        let tight = SolverConfig::new(1e-300, 1).unwrap();
        match lambert_w0(5.0, &tight) {
            Err(Error::Convergence { last, iterations }) => {
                assert!(last.is_finite());
                assert_eq!(iterations, 1);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn solver_config_validation() {
        assert!(SolverConfig::new(0.0, 10).is_err());
        assert!(SolverConfig::new(1e-12, 0).is_err());
    }

    #[test]
    fn spectral_efficiency_examples() {
        assert_eq!(spectral_efficiency(0.0).unwrap(), 0.0);
        assert!((spectral_efficiency(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((spectral_efficiency(0.2318).unwrap() - 0.30076803328030879).abs() < 1e-13);
        assert!(spectral_efficiency(-1e-3).is_err());
        assert!(spectral_efficiency(f64::INFINITY).is_err());
    }

    #[test]
    fn spectral_efficiency_low_snr() {
        for snr in [1e-9, 1e-10, 1e-14, 1e-20] {
            let se = spectral_efficiency(snr).unwrap();
            let lin = snr * crate::LOG2_E;
            assert!(((se - lin) / lin).abs() < 1e-6);
        }
    }
}
