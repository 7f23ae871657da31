//! Efficiency under circuit-power models.
//!
//! Two consumption models are covered. The constant one adds a fixed `mu` to the transmit
//! power. The varying one charges `nu` per Hz of bandwidth (sampling and baseband work) and
//! `eta` per decoded bit:
//!
//! ```text
//! EE(P, B) = B se / (P + nu B + eta B se),   se = log2(1 + P beta / (B N0))
//! ```
//!
//! The varying model only depends on `z = P/B` and has a unique maximizer for `nu > 0`:
//! `x = W0(beta nu / (N0 e) - 1/e) + 1` and `z* = N0 (e^x - 1) / beta`. The efficiency at
//! the optimum does not depend on how `B` is chosen, so any rate `B x log2(e)` is reachable
//! at maximum efficiency. The MIMO variant has the same structure in `z = P/(M B)`.

use core::f64::consts::E;

use crate::float;
use crate::link::{MimoConfig, SisoLink};
use crate::quantities::{BandwidthHz, DataRate, EnergyEfficiency, NoisePsd, PowerWatts};
use crate::special::{lambert_w0, spectral_efficiency, SolverConfig};
use crate::{Error, Result, LOG2_E};

/// Hardware constants of the circuit-power models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    /// Constant circuit power, W.
    pub mu: f64,
    /// Processing cost per Hz of bandwidth, W/Hz (J per sample at the Nyquist rate).
    pub nu: f64,
    /// Encoding/decoding cost, J/bit.
    pub eta: f64,
}

impl CircuitParams {
    pub fn new(mu: f64, nu: f64, eta: f64) -> Result<Self> {
        for (name, v) in [("mu", mu), ("nu", nu), ("eta", eta)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::invalid(name, "must be non-negative and finite", v));
            }
        }
        Ok(Self { mu, nu, eta })
    }
}

/// An efficiency-maximizing solution of the varying circuit-power model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// `W0(gain nu / (N0 e) - 1/e) + 1`; the spectral efficiency in nats/s/Hz.
    pub x: f64,
    /// Optimal `P/B` in W/Hz (per antenna, `P/(M B)`, for MIMO).
    pub ratio_p_over_b: f64,
    /// `e^x - 1`.
    pub snr: f64,
    /// `x log2(e)` in bit/s/Hz per stream.
    pub se: f64,
    pub ee: EnergyEfficiency,
    /// Number of parallel streams sharing the bandwidth (1 for SISO, M for MIMO).
    pub streams: u32,
}

impl OperatingPoint {
    /// Transmit power that keeps the optimal ratio at bandwidth `b`.
    pub fn power_at(&self, b: BandwidthHz) -> PowerWatts {
        PowerWatts(self.ratio_p_over_b * f64::from(self.streams) * b.value())
    }
}

/// `B log2(1 + P beta / (B N0)) / (P + mu)`.
pub fn ee_constant_circuit(
    link: &SisoLink,
    p: PowerWatts,
    b: BandwidthHz,
    mu: f64,
) -> Result<EnergyEfficiency> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::invalid("mu", "must be non-negative and finite", mu));
    }
    let consumed = p.value() + mu;
    if !(consumed > 0.0) {
        return Err(Error::invalid(
            "p + mu",
            "total consumption must be positive",
            consumed,
        ));
    }
    EnergyEfficiency::new(link.capacity(p, b)?.value() / consumed)
}

/// Efficiency under the varying circuit-power model; `cp.mu` is not part of this model.
pub fn ee_varying_circuit(
    link: &SisoLink,
    p: PowerWatts,
    b: BandwidthHz,
    cp: &CircuitParams,
) -> Result<EnergyEfficiency> {
    let se = spectral_efficiency(link.snr(p, b))?;
    ee_over_consumption(1.0, p, b, se, cp)
}

/// MIMO variant with `M` transmit and `M` receive antennas:
/// `M B se / (P + nu B M + eta B M se)` with `se = log2(1 + P sigma^2 / (M B N0))`.
pub fn ee_varying_circuit_mimo(
    cfg: &MimoConfig,
    p: PowerWatts,
    b: BandwidthHz,
    cp: &CircuitParams,
) -> Result<EnergyEfficiency> {
    require_square(cfg)?;
    let se = spectral_efficiency(cfg.snr_per_stream(p, b))?;
    ee_over_consumption(f64::from(cfg.m_tx()), p, b, se, cp)
}

fn require_square(cfg: &MimoConfig) -> Result<()> {
    if cfg.m_tx() != cfg.n_rx() {
        return Err(Error::invalid(
            "n_rx",
            "the circuit-power MIMO model needs as many receive as transmit antennas",
            f64::from(cfg.n_rx()),
        ));
    }
    Ok(())
}

fn ee_over_consumption(
    streams: f64,
    p: PowerWatts,
    b: BandwidthHz,
    se: f64,
    cp: &CircuitParams,
) -> Result<EnergyEfficiency> {
    let rate = streams * b.value() * se;
    let consumed = p.value() + cp.nu * b.value() * streams + cp.eta * rate;
    if !(consumed > 0.0) {
        return Err(Error::invalid(
            "denominator",
            "total consumption must be positive",
            consumed,
        ));
    }
    EnergyEfficiency::new(rate / consumed)
}

/// Closed-form maximizer of [`ee_varying_circuit`].
///
/// With `nu == 0` the efficiency only approaches its supremum as P/B -> 0; that case is
/// reported as [`Error::DegenerateOptimum`] carrying the supremum.
pub fn optimal_operating_point_siso(link: &SisoLink, cp: &CircuitParams) -> Result<OperatingPoint> {
    optimum_for_gain(link.beta().value(), link.n0(), cp, 1)
}

/// Closed-form maximizer of [`ee_varying_circuit_mimo`]; the ratio refers to `P/(M B)`.
pub fn optimal_operating_point_mimo(cfg: &MimoConfig, cp: &CircuitParams) -> Result<OperatingPoint> {
    require_square(cfg)?;
    optimum_for_gain(cfg.sigma_max_sq().value(), cfg.n0(), cp, cfg.m_tx())
}

fn optimum_for_gain(gain: f64, n0: NoisePsd, cp: &CircuitParams, streams: u32) -> Result<OperatingPoint> {
    let g = gain / n0.value();
    if cp.nu == 0.0 {
        let slope = LOG2_E * g;
        return Err(Error::DegenerateOptimum {
            supremum: slope / (1.0 + cp.eta * slope),
        });
    }
    let arg = g * cp.nu / E - 1.0 / E;
    let x = lambert_w0(arg, &SolverConfig::default())? + 1.0;
    let snr = float::exp_m1(x);
    let ratio_p_over_b = snr / g;
    let se = x * LOG2_E;
    let ee = EnergyEfficiency::new(se / (ratio_p_over_b + cp.nu + cp.eta * se))?;
    Ok(OperatingPoint {
        x,
        ratio_p_over_b,
        snr,
        se,
        ee,
        streams,
    })
}

/// Data rate reached at the optimum with bandwidth `b`, `streams B x log2(e)`.
pub fn rate_at_optimum(b: BandwidthHz, point: &OperatingPoint) -> DataRate {
    DataRate(f64::from(point.streams) * b.value() * point.se)
}

/// Bandwidth needed to deliver `rate` at the optimum; inverse of [`rate_at_optimum`].
pub fn bandwidth_for_rate(rate: DataRate, point: &OperatingPoint) -> Result<BandwidthHz> {
    BandwidthHz::new(rate.value() / (f64::from(point.streams) * point.se))
}

/// Log-spaced closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRange {
    pub lo: f64,
    pub hi: f64,
}

impl LogRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0) || !lo.is_finite() {
            return Err(Error::invalid("lo", "must be positive and finite", lo));
        }
        if !(hi >= lo) || !hi.is_finite() {
            return Err(Error::invalid("hi", "must be finite and not below lo", hi));
        }
        Ok(Self { lo, hi })
    }

    /// Decades between consecutive points of an `n`-point lattice.
    pub fn step_log10(&self, n: usize) -> f64 {
        (float::log10(self.hi) - float::log10(self.lo)) / (n.max(2) - 1) as f64
    }

    /// The `i`-th of `n` log-spaced points; the endpoints are returned exactly.
    pub fn point(&self, i: usize, n: usize) -> f64 {
        if i == 0 {
            self.lo
        } else if i + 1 >= n {
            self.hi
        } else {
            float::powf(10.0, float::log10(self.lo) + i as f64 * self.step_log10(n))
        }
    }
}

/// Lattice maximizer found by [`grid_search_oracle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptimum {
    pub power: PowerWatts,
    pub bandwidth: BandwidthHz,
    pub ee: EnergyEfficiency,
    /// Lattice spacing in decades along the power axis.
    pub power_step_log10: f64,
    /// Lattice spacing in decades along the bandwidth axis.
    pub bandwidth_step_log10: f64,
}

impl GridOptimum {
    pub fn ratio_p_over_b(&self) -> f64 {
        self.power.value() / self.bandwidth.value()
    }
}

pub const MIN_GRID_POINTS: usize = 16;

/// Brute-force maximization of `ee_eval` over a log-spaced `points x points` lattice.
///
/// Independent of the closed forms, so it serves as their oracle. For the varying circuit
/// model the lattice optimum never exceeds the closed-form optimum and approaches it as the
/// lattice gets denser. Ties go to the lowest power, then the lowest bandwidth.
pub fn grid_search_oracle<F>(
    ee_eval: F,
    p_range: LogRange,
    b_range: LogRange,
    points: usize,
) -> Result<GridOptimum>
where
    F: Fn(PowerWatts, BandwidthHz) -> Result<EnergyEfficiency>,
{
    if points < MIN_GRID_POINTS {
        return Err(Error::invalid(
            "points",
            "the lattice needs at least 16 points per axis",
            points as f64,
        ));
    }
    let bandwidths: alloc::vec::Vec<f64> = (0..points).map(|j| b_range.point(j, points)).collect();
    let mut best: Option<(f64, f64, f64)> = None;
    for i in 0..points {
        let p = p_range.point(i, points);
        for &b in &bandwidths {
            let non_finite = Error::NonFiniteEvaluation {
                power: p,
                bandwidth: b,
            };
            let ee = PowerWatts::new(p)
                .and_then(|pw| Ok((pw, BandwidthHz::new(b)?)))
                .and_then(|(pw, bw)| ee_eval(pw, bw))
                .map_err(|_| non_finite.clone())?
                .value();
            if best.map_or(true, |(_, _, top)| ee > top) {
                best = Some((p, b, ee));
            }
        }
    }
    let (p, b, ee) = best.expect("lattice is non-empty");
    Ok(GridOptimum {
        power: PowerWatts(p),
        bandwidth: BandwidthHz(b),
        ee: EnergyEfficiency(ee),
        power_step_log10: p_range.step_log10(points),
        bandwidth_step_log10: b_range.step_log10(points),
    })
}
