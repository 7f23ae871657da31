//! Regression suite over every published number the library reproduces.
//!
//! Each [`Check`] compares one computed value against a pinned target. Checks are grouped by
//! acceptance criterion through the `AC<n>.` prefix of their id.

use std::f64::consts::{E, PI};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use eelimit_core::circuit::{
    ee_varying_circuit, grid_search_oracle, optimal_operating_point_mimo, optimal_operating_point_siso,
    CircuitParams, LogRange,
};
use eelimit_core::link::{sphere_antenna_count, ultimate_ee, FreeSpace, MimoConfig, SisoLink, SphereGeometry};
use eelimit_core::quantities::{linear_to_db, BandwidthHz, LinearGain, NoisePsd, PowerWatts};
use eelimit_core::special::{lambert_w0, SolverConfig};
use eelimit_core::sweeps::log10_distance;
use eelimit_core::Result;

/// How `actual` is compared with `expected`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// `|actual - expected| / |expected| <= tol`.
    Relative(f64),
    /// `|actual - expected| <= tol`.
    Absolute(f64),
    /// `max(actual / expected, expected / actual) <= tol`.
    Factor(f64),
    /// `actual >= expected`.
    AtLeast,
    /// `actual <= expected`.
    AtMost,
}

impl Tolerance {
    fn holds(&self, expected: f64, actual: f64) -> bool {
        if !actual.is_finite() {
            return false;
        }
        match *self {
            Tolerance::Relative(tol) => ((actual - expected) / expected).abs() <= tol,
            Tolerance::Absolute(tol) => (actual - expected).abs() <= tol,
            Tolerance::Factor(tol) => {
                actual > 0.0 && (actual / expected).max(expected / actual) <= tol
            }
            Tolerance::AtLeast => actual >= expected,
            Tolerance::AtMost => actual <= expected,
        }
    }

    fn value(&self) -> f64 {
        match *self {
            Tolerance::Relative(t) | Tolerance::Absolute(t) | Tolerance::Factor(t) => t,
            Tolerance::AtLeast | Tolerance::AtMost => 0.0,
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            Tolerance::Relative(_) => "relative",
            Tolerance::Absolute(_) => "absolute",
            Tolerance::Factor(_) => "factor",
            Tolerance::AtLeast => "lower bound",
            Tolerance::AtMost => "upper bound",
        }
    }
}

/// One row of the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check_id: String,
    pub description: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(id: &str, description: &str, expected: f64, actual: f64, tol: Tolerance) -> Self {
        Self {
            check_id: id.to_string(),
            description: format!("{description} [{}]", tol.describe()),
            expected,
            actual,
            tolerance: tol.value(),
            pass: tol.holds(expected, actual),
        }
    }

    /// Acceptance criterion number encoded in the id (`AC8.ratio` -> 8).
    pub fn criterion(&self) -> Option<u32> {
        self.check_id
            .strip_prefix("AC")?
            .split('.')
            .next()?
            .parse()
            .ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Speed of light for the free-space checks; 3e8 reproduces the published round numbers.
    pub speed_of_light: f64,
    pub seed: u64,
    /// Random or log-spaced cases per property suite.
    pub property_cases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            speed_of_light: 3e8,
            seed: 0x5eed_ee11,
            property_cases: 1000,
        }
    }
}

const NU: f64 = 1e-14;
const ETA: f64 = 1e-15;

fn n0() -> NoisePsd {
    NoisePsd::room_temperature()
}

fn link_db(beta_db: f64) -> Result<SisoLink> {
    SisoLink::new(LinearGain::from_db(beta_db)?, n0())
}

fn hardware() -> CircuitParams {
    CircuitParams {
        mu: 0.0,
        nu: NU,
        eta: ETA,
    }
}

pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    let mut checks = Vec::new();
    fig1_endpoints(&mut checks)?;
    ultimate_limit(&mut checks);
    infinite_bandwidth(&mut checks)?;
    sphere(&mut checks)?;
    free_space(&mut checks, cfg)?;
    theorem_example(&mut checks)?;
    corollary(&mut checks)?;
    oracle(&mut checks)?;
    properties(&mut checks, cfg)?;
    fig3_convergence(&mut checks)?;
    let pass = checks.iter().all(|c| c.pass);
    Ok(Report { pass, checks })
}

fn fig1_endpoints(checks: &mut Vec<Check>) -> Result<()> {
    let low = link_db(-110.0)?.ee_limit().value();
    let high = link_db(-50.0)?.ee_limit().value();
    checks.push(Check::new("AC1.limit_m110db", "EE limit at beta = -110 dB, bit/J", 3.624e9, low, Tolerance::Relative(1e-3)));
    checks.push(Check::new("AC1.limit_m50db", "EE limit at beta = -50 dB, bit/J", 3.624e15, high, Tolerance::Relative(1e-3)));
    checks.push(Check::new("AC1.published_low", "EE limit at -110 dB vs published 3 Gbit/J", 3e9, low, Tolerance::Factor(1.25)));
    checks.push(Check::new("AC1.published_high", "EE limit at -50 dB vs published 3 Pbit/J", 3e15, high, Tolerance::Factor(1.25)));
    Ok(())
}

fn ultimate_limit(checks: &mut Vec<Check>) {
    let v = ultimate_ee(n0()).value();
    checks.push(Check::new("AC2.ultimate", "log2(e)/N0 at -174 dBm/Hz, bit/J", 3.624e20, v, Tolerance::Relative(1e-3)));
    checks.push(Check::new(
        "AC2.published",
        "ultimate limit vs published 10^20.6 bit/J (published value is rounded up from 10^20.56)",
        10f64.powf(20.6),
        v,
        Tolerance::Relative(0.10),
    ));
}

fn infinite_bandwidth(checks: &mut Vec<Check>) -> Result<()> {
    let rate = link_db(-75.0)?
        .rate_limit_infinite_bandwidth(PowerWatts::from_dbm(20.0)?)
        .value();
    checks.push(Check::new("AC3.rate", "B -> inf rate at P = 20 dBm, beta = -75 dB, bit/s", 1.146e12, rate, Tolerance::Relative(1e-3)));
    checks.push(Check::new("AC3.published", "B -> inf rate vs published 1 Tbit/s", 1e12, rate, Tolerance::Factor(1.2)));
    Ok(())
}

fn sphere(checks: &mut Vec<Check>) -> Result<()> {
    let geom = SphereGeometry::new(10.0, 0.1 * 0.1 / (4.0 * PI))?;
    let count = sphere_antenna_count(&geom) as f64;
    checks.push(Check::new("AC4.count", "antennas covering r = 10 m with A = 0.1^2/(4 pi)", 1_579_137.0, count, Tolerance::Absolute(0.0)));
    checks.push(Check::new("AC4.published", "antenna count vs published 1.6 million", 1.6e6, count, Tolerance::Relative(0.02)));
    Ok(())
}

fn free_space(checks: &mut Vec<Check>, cfg: &VerifyConfig) -> Result<()> {
    let fs = FreeSpace::with_speed_of_light(cfg.speed_of_light)?;
    for (distance, expected, id) in [
        (2.5, -49.9, "AC5.gain_2m5"),
        (80.0, -80.0, "AC5.gain_80m"),
        (800.0, -100.0, "AC5.gain_800m"),
    ] {
        let db = fs.gain(distance, 3e9)?.to_db();
        checks.push(Check::new(
            id,
            &format!("free-space gain at {distance} m, 3 GHz, dB"),
            expected,
            db,
            Tolerance::Absolute(0.2),
        ));
    }
    Ok(())
}

fn theorem_example(checks: &mut Vec<Check>) -> Result<()> {
    let pt = optimal_operating_point_siso(&link_db(-80.0)?, &hardware())?;
    let snr_db = linear_to_db(pt.snr)?;
    checks.push(Check::new("AC6.ee", "maximum EE at beta = -80 dB, bit/J", 2.93e12, pt.ee.value(), Tolerance::Relative(2e-3)));
    checks.push(Check::new("AC6.ee_published", "maximum EE vs published 3 Tbit/J", 3e12, pt.ee.value(), Tolerance::Relative(0.05)));
    checks.push(Check::new("AC6.snr", "optimal SNR, dB", -6.35, snr_db, Tolerance::Absolute(0.05)));
    checks.push(Check::new("AC6.snr_published", "optimal SNR vs published -6 dB", -6.0, snr_db, Tolerance::Absolute(0.5)));
    checks.push(Check::new("AC6.se", "spectral efficiency at the optimum, bit/s/Hz", 0.3008, pt.se, Tolerance::Relative(5e-3)));
    checks.push(Check::new("AC6.se_published", "spectral efficiency vs published 0.3 bit/s/Hz", 0.3, pt.se, Tolerance::Relative(0.02)));
    Ok(())
}

fn corollary(checks: &mut Vec<Check>) -> Result<()> {
    let cfg = MimoConfig::new(1, 1, LinearGain::new(1.0)?, n0())?;
    let pt = optimal_operating_point_mimo(&cfg, &hardware())?;
    checks.push(Check::new("AC7.ee", "MIMO maximum EE with sigma^2 = 1, bit/J", 6.20e14, pt.ee.value(), Tolerance::Relative(1e-3)));
    checks.push(Check::new("AC7.published", "MIMO maximum EE vs published 0.6 Pbit/J", 0.6e15, pt.ee.value(), Tolerance::Relative(0.05)));
    Ok(())
}

fn oracle(checks: &mut Vec<Check>) -> Result<()> {
    let link = link_db(-80.0)?;
    let hw = hardware();
    let closed = optimal_operating_point_siso(&link, &hw)?;
    let started = Instant::now();
    let best = grid_search_oracle(
        |p, b| ee_varying_circuit(&link, p, b, &hw),
        LogRange::new(1e-8, 1.0)?,
        LogRange::new(1e6, 1e13)?,
        256,
    )?;
    let elapsed = started.elapsed().as_secs_f64();
    let step = best.power_step_log10.max(best.bandwidth_step_log10);
    checks.push(Check::new(
        "AC8.ee_fraction",
        "256x256 lattice EE / closed-form EE",
        0.995,
        best.ee.value() / closed.ee.value(),
        Tolerance::AtLeast,
    ));
    checks.push(Check::new(
        "AC8.ee_not_above",
        "closed-form EE / lattice EE (lattice never beats the closed form)",
        1.0,
        closed.ee.value() / best.ee.value() * (1.0 + 1e-12),
        Tolerance::AtLeast,
    ));
    checks.push(Check::new(
        "AC8.ratio",
        "decades between lattice maximizer P/B and closed-form ratio (tolerance = one lattice step)",
        0.0,
        log10_distance(best.ratio_p_over_b(), closed.ratio_p_over_b),
        Tolerance::Absolute(step),
    ));
    checks.push(Check::new("AC8.runtime", "oracle wall time, s", 0.0, elapsed, Tolerance::Absolute(5.0)));
    Ok(())
}

fn properties(checks: &mut Vec<Check>, cfg: &VerifyConfig) -> Result<()> {
    let n = cfg.property_cases;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let solver = SolverConfig::default();
    let hw = hardware();

    // Lambert W inverse identity on log-spaced offsets from the branch point.
    let (lo, hi) = ((1e-6f64).log10(), (1e9f64).log10());
    let mut worst = 0.0f64;
    for i in 0..n {
        let a = -1.0 / E + 10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64);
        let w = lambert_w0(a, &solver)?;
        worst = worst.max((w * w.exp() - a).abs() / a.abs().max(1.0));
    }
    checks.push(Check::new("AC9.lambert_identity", &format!("max |W e^W - a| / max(1,|a|) over {n} points"), 0.0, worst, Tolerance::Absolute(1e-10)));

    // Transmit-power-only EE strictly increases with B and stays below the limit.
    let mut violations = 0usize;
    for _ in 0..n {
        let link = link_db(rng.gen_range(-120.0..0.0))?;
        let p = PowerWatts::new(10f64.powf(rng.gen_range(-6.0..1.0)))?;
        let b = 10f64.powf(rng.gen_range(3.0..14.0));
        let factor = rng.gen_range(1.01..100.0);
        let lower = link.ee_tx_only(p, BandwidthHz::new(b)?)?.value();
        let upper = link.ee_tx_only(p, BandwidthHz::new(b * factor)?)?.value();
        if !(upper > lower && upper < link.ee_limit().value()) {
            violations += 1;
        }
    }
    checks.push(Check::new("AC9.monotone_bandwidth", &format!("monotonicity violations over {n} samples"), 0.0, violations as f64, Tolerance::Absolute(0.0)));

    // Interference drops out at P/B = 1e-18 W/Hz.
    let mut worst = 0.0f64;
    for _ in 0..n {
        let link = link_db(rng.gen_range(-120.0..-70.0))?;
        let alpha = rng.gen_range(0.0..1e-7);
        let b = 10f64.powf(rng.gen_range(3.0..12.0));
        let ee = link
            .ee_with_interference(alpha, PowerWatts::new(1e-18 * b)?, BandwidthHz::new(b)?)?
            .value();
        let limit = link.ee_limit().value();
        worst = worst.max(((ee - limit) / limit).abs());
    }
    checks.push(Check::new("AC9.interference_limit", &format!("max relative gap to the interference-free limit over {n} samples"), 0.0, worst, Tolerance::Absolute(1e-4)));

    // eta leaves the maximizer untouched.
    let mut drift = 0.0f64;
    let mut ee_increases = 0usize;
    for _ in 0..n {
        let link = link_db(rng.gen_range(-120.0..0.0))?;
        let eta = 10f64.powf(rng.gen_range(-18.0..-10.0));
        let a = optimal_operating_point_siso(&link, &CircuitParams { eta, ..hw })?;
        let b = optimal_operating_point_siso(&link, &CircuitParams { eta: eta * 100.0, ..hw })?;
        drift = drift.max((a.x - b.x).abs() + (a.snr - b.snr).abs() + (a.se - b.se).abs());
        if !(b.ee < a.ee) {
            ee_increases += 1;
        }
    }
    checks.push(Check::new("AC9.eta_invariance", &format!("max change of x, snr, se under eta x100 over {n} samples"), 0.0, drift, Tolerance::Absolute(0.0)));
    checks.push(Check::new("AC9.eta_lowers_ee", &format!("cases where eta x100 did not lower the EE, of {n}"), 0.0, ee_increases as f64, Tolerance::Absolute(0.0)));

    // Any (P, B) on the optimal ratio gives the same EE.
    let mut spread = 0.0f64;
    for _ in 0..n {
        let link = link_db(rng.gen_range(-120.0..0.0))?;
        let pt = optimal_operating_point_siso(&link, &hw)?;
        let values = (0..3)
            .map(|_| {
                let b = BandwidthHz::new(10f64.powf(rng.gen_range(3.0..13.0)))?;
                Ok(ee_varying_circuit(&link, pt.power_at(b), b, &hw)?.value())
            })
            .collect::<Result<Vec<f64>>>()?;
        for v in &values {
            spread = spread.max(((v - values[0]) / values[0]).abs());
        }
    }
    checks.push(Check::new("AC9.ratio_sufficiency", &format!("max relative EE spread along the optimal ratio over {n} triples"), 0.0, spread, Tolerance::Absolute(1e-12)));

    // No random point beats the closed form.
    let link = link_db(-80.0)?;
    let best = optimal_operating_point_siso(&link, &hw)?.ee.value();
    let mut excess = f64::NEG_INFINITY;
    for _ in 0..n {
        let p = PowerWatts::new(10f64.powf(rng.gen_range(-8.0..0.0)))?;
        let b = BandwidthHz::new(10f64.powf(rng.gen_range(6.0..13.0)))?;
        excess = excess.max(ee_varying_circuit(&link, p, b, &hw)?.value() / best - 1.0);
    }
    checks.push(Check::new(
        "AC9.dominance",
        &format!("max EE(P,B)/EE* - 1 over {n} random points"),
        1e-9,
        excess,
        Tolerance::AtMost,
    ));
    Ok(())
}

fn fig3_convergence(checks: &mut Vec<Check>) -> Result<()> {
    let p = PowerWatts::from_dbm(20.0)?;
    let ratio = |beta_db: f64, b: f64| -> Result<f64> {
        let link = link_db(beta_db)?;
        Ok(link.ee_tx_only(p, BandwidthHz::new(b)?)?.value() / link.ee_limit().value())
    };
    let edge = ratio(-110.0, 1e9)?;
    let shifted = ratio(-90.0, 1e11)?;
    checks.push(Check::new("AC10.ratio", "EE / limit at beta = -110 dB, B = 1 GHz, P = 20 dBm", 0.892, edge, Tolerance::Absolute(1e-3)));
    checks.push(Check::new("AC10.recurrence", "EE / limit at beta = -90 dB, B = 100 GHz vs the -110 dB value", edge, shifted, Tolerance::Relative(1e-6)));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_kinds() {
        assert!(Tolerance::Relative(0.1).holds(10.0, 10.9));
        assert!(!Tolerance::Relative(0.1).holds(10.0, 11.5));
        assert!(Tolerance::Factor(1.25).holds(3e9, 3.624e9));
        assert!(!Tolerance::Factor(1.1).holds(3e9, 3.624e9));
        assert!(Tolerance::Absolute(0.2).holds(-80.0, -80.05));
        assert!(Tolerance::AtLeast.holds(0.995, 0.999));
        assert!(!Tolerance::AtLeast.holds(0.995, f64::NAN));
    }

    #[test]
    fn criterion_from_id() {
        let c = Check::new("AC10.ratio", "x", 1.0, 1.0, Tolerance::Absolute(0.0));
        assert_eq!(c.criterion(), Some(10));
    }
}
