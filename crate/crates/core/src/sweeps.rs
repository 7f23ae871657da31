//! Parameter sweeps producing the data behind the efficiency-limit figures.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::{ee_varying_circuit, optimal_operating_point_siso, rate_at_optimum, CircuitParams, LogRange};
use crate::float;
use crate::link::{FreeSpace, SisoLink};
use crate::quantities::{BandwidthHz, LinearGain, NoisePsd, PowerWatts};
use crate::{Error, Result};

/// Carrier used for the distance annotations of the channel-gain sweep.
pub const ANNOTATION_CARRIER_HZ: f64 = 3e9;

/// Which figure a sweep regenerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    /// Limit efficiency versus channel gain.
    Fig1,
    /// Efficiency versus bandwidth at fixed power.
    Fig3,
    /// Efficiency and rate over the (P, B) plane with circuit power.
    Fig4,
}

impl FigureId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
        }
    }
}

impl core::str::FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(FigureId::Fig1),
            "fig3" => Ok(FigureId::Fig3),
            "fig4" => Ok(FigureId::Fig4),
            _ => Err(Error::invalid("figure", "expected fig1, fig3 or fig4", f64::NAN)),
        }
    }
}

/// Column-major description plus row-major data of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    metadata: Vec<(String, String)>,
}

impl SweepTable {
    pub fn new<I, S>(columns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            metadata: vec![("version".to_string(), env!("CARGO_PKG_VERSION").to_string())],
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::invalid("row", "column count mismatch", row.len() as f64));
        }
        if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid("row", "table values must be finite", *bad));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.metadata.push((key.into(), value.to_string()));
        self
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(Error::invalid("samples", "need at least two samples", samples as f64));
    }
    Ok(())
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + i as f64 * step })
}

/// Limit efficiency against channel gain in dB.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig1Spec {
    pub beta_db_min: f64,
    pub beta_db_max: f64,
    pub samples: usize,
    pub n0: NoisePsd,
    pub free_space: FreeSpace,
}

impl Default for Fig1Spec {
    fn default() -> Self {
        Self {
            beta_db_min: -110.0,
            beta_db_max: -50.0,
            samples: 121,
            n0: NoisePsd::room_temperature(),
            free_space: FreeSpace::default(),
        }
    }
}

pub fn sweep_fig1(spec: &Fig1Spec) -> Result<SweepTable> {
    check_samples(spec.samples)?;
    if !(spec.beta_db_min >= -200.0 && spec.beta_db_min < spec.beta_db_max && spec.beta_db_max <= 0.0) {
        return Err(Error::invalid(
            "beta_db",
            "range must be ordered and lie within [-200, 0] dB",
            spec.beta_db_min,
        ));
    }
    let mut table = SweepTable::new(["beta_db", "ee_limit_bit_per_joule", "free_space_distance_m"]);
    table
        .meta("figure", "fig1")
        .meta("n0_w_per_hz", format!("{:e}", spec.n0.value()))
        .meta("carrier_hz", format!("{:e}", ANNOTATION_CARRIER_HZ))
        .meta("speed_of_light_m_per_s", format!("{:e}", spec.free_space.speed_of_light));
    for beta_db in linspace(spec.beta_db_min, spec.beta_db_max, spec.samples) {
        let beta = LinearGain::from_db(beta_db)?;
        let link = SisoLink::new(beta, spec.n0)?;
        let distance = spec.free_space.distance_for_gain(beta, ANNOTATION_CARRIER_HZ)?;
        table.push_row(vec![beta_db, link.ee_limit().value(), distance])?;
    }
    Ok(table)
}

/// Transmit-power-only efficiency against bandwidth for a set of channel gains.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig3Spec {
    pub betas_db: Vec<f64>,
    pub power: PowerWatts,
    pub n0: NoisePsd,
    pub bandwidth: LogRange,
    pub samples: usize,
}

impl Default for Fig3Spec {
    fn default() -> Self {
        Self {
            betas_db: vec![-110.0, -90.0, -70.0, -50.0],
            power: PowerWatts(0.1),
            n0: NoisePsd::room_temperature(),
            bandwidth: LogRange { lo: 1e6, hi: 1e16 },
            samples: 201,
        }
    }
}

fn db_label(beta_db: f64) -> String {
    if beta_db < 0.0 {
        format!("m{}db", -beta_db)
    } else {
        format!("{}db", beta_db)
    }
}

pub fn sweep_fig3(spec: &Fig3Spec) -> Result<SweepTable> {
    check_samples(spec.samples)?;
    if spec.betas_db.is_empty() {
        return Err(Error::invalid("betas_db", "need at least one channel gain", 0.0));
    }
    let links = spec
        .betas_db
        .iter()
        .map(|&db| SisoLink::new(LinearGain::from_db(db)?, spec.n0))
        .collect::<Result<Vec<_>>>()?;
    let mut columns = vec![String::from("bandwidth_hz")];
    for &db in &spec.betas_db {
        columns.push(format!("ee_beta_{}", db_label(db)));
        columns.push(format!("limit_beta_{}", db_label(db)));
    }
    let mut table = SweepTable::new(columns);
    table
        .meta("figure", "fig3")
        .meta("power_w", format!("{:e}", spec.power.value()))
        .meta("n0_w_per_hz", format!("{:e}", spec.n0.value()))
        .meta("betas_db", join(&spec.betas_db))
        .meta(
            "assumption",
            "channel-gain set spans -110..-50 dB in 20 dB steps; not read off the original figure",
        );
    for i in 0..spec.samples {
        let b = BandwidthHz::new(spec.bandwidth.point(i, spec.samples))?;
        let mut row = vec![b.value()];
        for link in &links {
            row.push(link.ee_tx_only(spec.power, b)?.value());
            row.push(link.ee_limit().value());
        }
        table.push_row(row)?;
    }
    Ok(table)
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Circuit-power efficiency and rate over a (P, B) lattice plus the optimal locus.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig4Spec {
    pub link: SisoLink,
    pub circuit: CircuitParams,
    pub power: LogRange,
    pub bandwidth: LogRange,
    pub samples: usize,
}

impl Default for Fig4Spec {
    fn default() -> Self {
        Self {
            link: SisoLink::new_unchecked(LinearGain(1e-8), NoisePsd::room_temperature()),
            circuit: CircuitParams {
                mu: 0.0,
                nu: 1e-14,
                eta: 1e-15,
            },
            power: LogRange { lo: 1e-5, hi: 1e1 },
            bandwidth: LogRange { lo: 1e9, hi: 1e13 },
            samples: 61,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fig4Tables {
    pub ee_surface: SweepTable,
    pub rate_surface: SweepTable,
    pub locus: SweepTable,
}

pub fn sweep_fig4(spec: &Fig4Spec) -> Result<Fig4Tables> {
    check_samples(spec.samples)?;
    let point = optimal_operating_point_siso(&spec.link, &spec.circuit)?;
    let n = spec.samples;

    let mut ee_surface = SweepTable::new(["power_w", "bandwidth_hz", "ee_bit_per_joule"]);
    let mut rate_surface = SweepTable::new(["power_w", "bandwidth_hz", "rate_bit_per_s"]);
    let mut locus = SweepTable::new(["bandwidth_hz", "power_w", "ee_bit_per_joule", "rate_bit_per_s"]);
    for (name, table) in [
        ("ee_surface", &mut ee_surface),
        ("rate_surface", &mut rate_surface),
        ("locus", &mut locus),
    ] {
        table
            .meta("figure", "fig4")
            .meta("table", name)
            .meta("beta", format!("{:e}", spec.link.beta().value()))
            .meta("n0_w_per_hz", format!("{:e}", spec.link.n0().value()))
            .meta("nu_w_per_hz", format!("{:e}", spec.circuit.nu))
            .meta("eta_j_per_bit", format!("{:e}", spec.circuit.eta))
            .meta("optimal_ratio_w_per_hz", format!("{:e}", point.ratio_p_over_b))
            .meta(
                "assumption",
                "P and B ranges inferred from the locus rate span 0.3 Gbit/s .. 3 Tbit/s",
            );
    }

    for i in 0..n {
        let p = PowerWatts::new(spec.power.point(i, n))?;
        for j in 0..n {
            let b = BandwidthHz::new(spec.bandwidth.point(j, n))?;
            let ee = ee_varying_circuit(&spec.link, p, b, &spec.circuit)?;
            let rate = spec.link.capacity(p, b)?;
            ee_surface.push_row(vec![p.value(), b.value(), ee.value()])?;
            rate_surface.push_row(vec![p.value(), b.value(), rate.value()])?;
        }
    }
    for j in 0..n {
        let b = BandwidthHz::new(spec.bandwidth.point(j, n))?;
        let p = point.power_at(b);
        let ee = ee_varying_circuit(&spec.link, p, b, &spec.circuit)?;
        locus.push_row(vec![b.value(), p.value(), ee.value(), rate_at_optimum(b, &point).value()])?;
    }
    Ok(Fig4Tables {
        ee_surface,
        rate_surface,
        locus,
    })
}

/// Decades between `value` and `target`.
pub fn log10_distance(value: f64, target: f64) -> f64 {
    (float::log10(value) - float::log10(target)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn fig1_defaults() {
        let t = sweep_fig1(&Fig1Spec::default()).unwrap();
        assert_eq!(t.columns().len(), 3);
        assert_eq!(t.rows().len(), 121);
        let first = &t.rows()[0];
        assert_eq!(first[0], -110.0);
        assert!(rel(first[1], 3.623886098015146e9) < 1e-12);
        let last = t.rows().last().unwrap();
        assert_eq!(last[0], -50.0);
        assert!(rel(last[1], 3.623886098015146e15) < 1e-12);
        let at80 = t.rows().iter().find(|r| r[0] == -80.0).unwrap();
        assert!((at80[2] - 80.0).abs() < 1.0);
    }

    #[test]
    fn fig1_rejects_bad_ranges() {
        let mut spec = Fig1Spec::default();
        spec.beta_db_max = 10.0;
        assert!(sweep_fig1(&spec).is_err());
        let mut spec = Fig1Spec::default();
        spec.samples = 1;
        assert!(sweep_fig1(&spec).is_err());
    }

    #[test]
    fn fig3_convergence_rows() {
        let mut spec = Fig3Spec::default();
        spec.bandwidth = LogRange::new(1e9, 1e11).unwrap();
        spec.samples = 3;
        let t = sweep_fig3(&spec).unwrap();
        let rows = t.rows();
        // columns: B, ee(-110), lim(-110), ee(-90), lim(-90), ...
        assert!((rows[0][1] / rows[0][2] - 0.89213433852382409).abs() < 1e-9);
        assert!(rel(rows[2][3] / rows[2][4], rows[0][1] / rows[0][2]) < 1e-6);
        for r in rows {
            for k in 0..4 {
                assert!(r[1 + 2 * k] < r[2 + 2 * k]);
            }
        }
        assert_eq!(t.columns()[1], "ee_beta_m110db");
    }

    #[test]
    fn fig4_locus() {
        let spec = Fig4Spec {
            samples: 5,
            ..Fig4Spec::default()
        };
        let t = sweep_fig4(&spec).unwrap();
        assert_eq!(t.ee_surface.rows().len(), 25);
        let ee = t.locus.column("ee_bit_per_joule").unwrap();
        for v in &ee {
            assert!(rel(*v, 2931977867531.1094) < 1e-10);
        }
        let rates = t.locus.column("rate_bit_per_s").unwrap();
        assert!(rel(rates[0], 3.0142723464716123e8) < 1e-10);
        assert!(rel(*rates.last().unwrap(), 3.0142723464716123e12) < 1e-10);
        let best = ee.iter().cloned().fold(0.0, f64::max);
        for v in t.ee_surface.column("ee_bit_per_joule").unwrap() {
            assert!(v <= best * (1.0 + 1e-12));
        }
    }

    #[test]
    fn table_rejects_non_finite() {
        let mut t = SweepTable::new(["a", "b"]);
        assert!(t.push_row(vec![1.0]).is_err());
        assert!(t.push_row(vec![1.0, f64::NAN]).is_err());
        assert!(t.push_row(vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn figure_ids_parse() {
        assert_eq!("fig3".parse::<FigureId>().unwrap(), FigureId::Fig3);
        assert!("fig2".parse::<FigureId>().is_err());
        assert_eq!(FigureId::Fig4.as_str(), "fig4");
    }
}
