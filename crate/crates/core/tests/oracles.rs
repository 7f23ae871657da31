//! Closed forms checked against independent brute-force evaluations.

use std::f64::consts::{E, LN_2};

use eelimit_core::circuit::{
    ee_varying_circuit, grid_search_oracle, optimal_operating_point_mimo, optimal_operating_point_siso,
    CircuitParams, LogRange,
};
use eelimit_core::link::{MimoConfig, SisoLink};
use eelimit_core::quantities::{BandwidthHz, LinearGain, NoisePsd, PowerWatts};
use eelimit_core::special::{lambert_w0, SolverConfig};

const N0: f64 = 3.981071705534972e-21;

/// Plain bisection on w e^w = a over [-1, hi]; shares nothing with the Halley path.
fn w0_bisection(a: f64) -> f64 {
    let (mut lo, mut hi) = (-1.0_f64, (a.abs() + 2.0).ln() + 1.0);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid * mid.exp() > a {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search for the maximizer of the per-Hz efficiency in log(z).
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..300 {
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if f(a) < f(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    0.5 * (lo + hi)
}

fn link(beta: f64) -> SisoLink {
    SisoLink::new(LinearGain::new(beta).unwrap(), NoisePsd::new(N0).unwrap()).unwrap()
}

#[test]
fn lambert_matches_bisection() {
    let cfg = SolverConfig::default();
    // Frozen from the bisection oracle (40-digit run).
    let cases = [
        (-0.35863872740434359, -0.79106656216033913),
        (924071.00883043159, 11.310787298516733),
    ];
    for (a, expected) in cases {
        let oracle = w0_bisection(a);
        assert!((oracle - expected).abs() < 1e-12, "oracle drifted at {a}");
        let w = lambert_w0(a, &cfg).unwrap();
        assert!((w - expected).abs() < 1e-11, "W({a}) = {w}");
    }
    for a in [-0.367, -0.2, -1e-3, 1e-9, 0.5, 1.0, 10.0, 1e3, 1e12, 1e100] {
        let w = lambert_w0(a, &cfg).unwrap();
        assert!((w - w0_bisection(a)).abs() <= 1e-10 * (1.0 + w.abs()), "a = {a}");
    }
}

#[test]
fn theorem_ratio_matches_direct_maximization() {
    let cp = CircuitParams::new(0.0, 1e-14, 1e-15).unwrap();
    for beta in [1e-11, 1e-8, 1e-5, 1.0] {
        let g = beta / N0;
        let per_hz = |log_z: f64| {
            let z = log_z.exp();
            let se = (g * z).ln_1p() / LN_2;
            se / (z + cp.nu + cp.eta * se)
        };
        let z_star = golden_max(per_hz, (1e-30f64).ln(), (1e3f64).ln()).exp();
        let pt = optimal_operating_point_siso(&link(beta), &cp).unwrap();
        assert!(
            ((pt.ratio_p_over_b - z_star) / z_star).abs() < 1e-6,
            "beta {beta}: closed {} vs search {z_star}",
            pt.ratio_p_over_b
        );
        let ee_star = per_hz(z_star.ln());
        assert!(((pt.ee.value() - ee_star) / ee_star).abs() < 1e-10);
    }
}

#[test]
fn grid_oracle_brackets_closed_form() {
    let l = link(1e-8);
    let cp = CircuitParams::new(0.0, 1e-14, 1e-15).unwrap();
    let pt = optimal_operating_point_siso(&l, &cp).unwrap();
    let p_range = LogRange::new(1e-8, 1.0).unwrap();
    let b_range = LogRange::new(1e6, 1e13).unwrap();
    let mut previous = 0.0;
    for points in [16, 64, 256] {
        let best = grid_search_oracle(|p, b| ee_varying_circuit(&l, p, b, &cp), p_range, b_range, points).unwrap();
        assert!(best.ee.value() <= pt.ee.value() * (1.0 + 1e-12));
        assert!(best.ee.value() >= previous);
        previous = best.ee.value();
    }
    assert!(previous / pt.ee.value() > 0.9999);
}

#[test]
fn grid_oracle_ratio_symmetry() {
    let l = link(1e-8);
    let cp = CircuitParams::new(0.0, 1e-14, 1e-15).unwrap();
    let eval = |p: f64, b: f64| {
        ee_varying_circuit(&l, PowerWatts::new(p).unwrap(), BandwidthHz::new(b).unwrap(), &cp)
            .unwrap()
            .value()
    };
    for (p, b) in [(1e-4, 1e9), (3e-3, 2e10), (0.5, 1e12)] {
        let a = eval(p, b);
        let d = eval(2.0 * p, 2.0 * b);
        assert!(((a - d) / a).abs() < 1e-12);
    }
    let a = LogRange::new(1e-8, 1.0).unwrap();
    let b = LogRange::new(1e6, 1e13).unwrap();
    let a2 = LogRange::new(2e-8, 2.0).unwrap();
    let b2 = LogRange::new(2e6, 2e13).unwrap();
    let f = |p: PowerWatts, b: BandwidthHz| ee_varying_circuit(&l, p, b, &cp);
    let one = grid_search_oracle(f, a, b, 64).unwrap();
    let two = grid_search_oracle(f, a2, b2, 64).unwrap();
    assert!(((one.ee.value() - two.ee.value()) / one.ee.value()).abs() < 1e-9);
}

#[test]
fn corollary_matches_direct_maximization() {
    let n0 = NoisePsd::new(N0).unwrap();
    let cp = CircuitParams::new(0.0, 1e-14, 1e-15).unwrap();
    let cfg = MimoConfig::new(8, 8, LinearGain::new(1.0).unwrap(), n0).unwrap();
    let pt = optimal_operating_point_mimo(&cfg, &cp).unwrap();
    let g = 1.0 / N0;
    let per_hz = |log_z: f64| {
        let z = log_z.exp();
        let se = (g * z).ln_1p() / LN_2;
        se / (z + cp.nu + cp.eta * se)
    };
    let z_star = golden_max(per_hz, (1e-30f64).ln(), (1e3f64).ln()).exp();
    assert!(((pt.ratio_p_over_b - z_star) / z_star).abs() < 1e-6);
    assert!(((pt.x - (w0_bisection(g * cp.nu / E - 1.0 / E) + 1.0)) / pt.x).abs() < 1e-12);
}
