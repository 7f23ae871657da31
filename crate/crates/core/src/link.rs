//! Capacity and transmit-power-only efficiency of deterministic links, their limits as
//! P/B -> 0, MIMO singular-value bounds and free-space geometry.

use core::f64::consts::PI;

use crate::float;
use crate::quantities::{BandwidthHz, DataRate, EnergyEfficiency, LinearGain, NoisePsd, PowerWatts};
use crate::special::spectral_efficiency;
use crate::{Error, Result, LOG2_E};

/// Speed of light used by default, in m/s.
pub const SPEED_OF_LIGHT: f64 = 2.998e8;

/// Rounded speed of light; gives a wavelength of exactly 0.1 m at 3 GHz.
pub const SPEED_OF_LIGHT_ROUNDED: f64 = 3e8;

/// Scalar deterministic channel with gain `beta = |h|^2` and noise PSD `n0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SisoLink {
    beta: LinearGain,
    n0: NoisePsd,
}

impl SisoLink {
    /// Physical link: the channel gain may not exceed one.
    pub fn new(beta: LinearGain, n0: NoisePsd) -> Result<Self> {
        if beta.value() > 1.0 {
            return Err(Error::invalid(
                "beta",
                "a channel gain above 1 (0 dB) is unphysical",
                beta.value(),
            ));
        }
        Ok(Self { beta, n0 })
    }

    /// Skips the `beta <= 1` check, for studying unphysical gain scaling laws.
    pub fn new_unchecked(beta: LinearGain, n0: NoisePsd) -> Self {
        Self { beta, n0 }
    }

    pub fn beta(&self) -> LinearGain {
        self.beta
    }

    pub fn n0(&self) -> NoisePsd {
        self.n0
    }

    /// beta / N0 in 1/(W/Hz).
    pub(crate) fn gain_to_noise(&self) -> f64 {
        self.beta.value() / self.n0.value()
    }

    pub fn snr(&self, p: PowerWatts, b: BandwidthHz) -> f64 {
        p.value() * self.beta.value() / (b.value() * self.n0.value())
    }

    /// Shannon capacity `B log2(1 + P beta / (B N0))`.
    pub fn capacity(&self, p: PowerWatts, b: BandwidthHz) -> Result<DataRate> {
        let se = spectral_efficiency(self.snr(p, b))?;
        DataRate::new(b.value() * se)
    }

    /// Capacity per unit of transmit power. Undefined at zero power; use
    /// [`SisoLink::ee_limit`] for the P -> 0 value.
    pub fn ee_tx_only(&self, p: PowerWatts, b: BandwidthHz) -> Result<EnergyEfficiency> {
        require_positive_power(p)?;
        EnergyEfficiency::new(self.capacity(p, b)?.value() / p.value())
    }

    /// Supremum of [`SisoLink::ee_tx_only`], `log2(e) beta / N0`, reached as P/B -> 0.
    pub fn ee_limit(&self) -> EnergyEfficiency {
        EnergyEfficiency(LOG2_E * self.gain_to_noise())
    }

    /// Minimum energy per bit, `N0 ln 2 / beta`, in J/bit.
    pub fn min_energy_per_bit(&self) -> f64 {
        1.0 / self.ee_limit().value()
    }

    /// Efficiency when the aggregate interference gain `alpha` is treated as noise. Every
    /// interferer transmits with the same power `p`.
    pub fn ee_with_interference(
        &self,
        alpha: f64,
        p: PowerWatts,
        b: BandwidthHz,
    ) -> Result<EnergyEfficiency> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::invalid("alpha", "must be non-negative and finite", alpha));
        }
        require_positive_power(p)?;
        let sinr = p.value() * self.beta.value()
            / (b.value() * self.n0.value() + p.value() * alpha);
        let rate = b.value() * spectral_efficiency(sinr)?;
        EnergyEfficiency::new(rate / p.value())
    }

    /// Capacity as B -> infinity: `log2(e) P beta / N0`.
    pub fn rate_limit_infinite_bandwidth(&self, p: PowerWatts) -> DataRate {
        DataRate(LOG2_E * p.value() * self.gain_to_noise())
    }
}

fn require_positive_power(p: PowerWatts) -> Result<()> {
    if p.value() > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "p",
            "efficiency is undefined at zero power",
            p.value(),
        ))
    }
}

/// MIMO link whose singular values are all bounded by `sigma_max_sq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MimoConfig {
    m_tx: u32,
    n_rx: u32,
    sigma_max_sq: LinearGain,
    n0: NoisePsd,
}

impl MimoConfig {
    pub fn new(m_tx: u32, n_rx: u32, sigma_max_sq: LinearGain, n0: NoisePsd) -> Result<Self> {
        if sigma_max_sq.value() > 1.0 {
            return Err(Error::invalid(
                "sigma_max_sq",
                "a squared singular value above 1 violates energy conservation",
                sigma_max_sq.value(),
            ));
        }
        Self::check_counts(m_tx, n_rx)?;
        Ok(Self {
            m_tx,
            n_rx,
            sigma_max_sq,
            n0,
        })
    }

    /// Allows `sigma_max_sq > 1`, e.g. for the constant-modulus scaling model.
    pub fn new_unchecked(
        m_tx: u32,
        n_rx: u32,
        sigma_max_sq: LinearGain,
        n0: NoisePsd,
    ) -> Result<Self> {
        Self::check_counts(m_tx, n_rx)?;
        Ok(Self {
            m_tx,
            n_rx,
            sigma_max_sq,
            n0,
        })
    }

    fn check_counts(m_tx: u32, n_rx: u32) -> Result<()> {
        if m_tx == 0 {
            return Err(Error::invalid("m_tx", "need at least one antenna", 0.0));
        }
        if n_rx == 0 {
            return Err(Error::invalid("n_rx", "need at least one antenna", 0.0));
        }
        Ok(())
    }

    pub fn m_tx(&self) -> u32 {
        self.m_tx
    }

    pub fn n_rx(&self) -> u32 {
        self.n_rx
    }

    pub fn sigma_max_sq(&self) -> LinearGain {
        self.sigma_max_sq
    }

    pub fn n0(&self) -> NoisePsd {
        self.n0
    }

    pub(crate) fn streams(&self) -> u32 {
        self.m_tx.min(self.n_rx)
    }

    /// SNR per stream with the power split evenly over the `M` transmit antennas.
    pub fn snr_per_stream(&self, p: PowerWatts, b: BandwidthHz) -> f64 {
        p.value() * self.sigma_max_sq.value()
            / (f64::from(self.m_tx) * b.value() * self.n0.value())
    }

    /// Capacity upper bound with every singular value equal to the maximum one:
    /// `min(M, N) B log2(1 + P sigma^2 / (M B N0))`.
    pub fn capacity_upper(&self, p: PowerWatts, b: BandwidthHz) -> Result<DataRate> {
        let se = spectral_efficiency(self.snr_per_stream(p, b))?;
        DataRate::new(f64::from(self.streams()) * b.value() * se)
    }

    /// `(min(M, N) / M) log2(e) sigma^2 / N0`.
    pub fn ee_limit(&self) -> EnergyEfficiency {
        let fraction = f64::from(self.streams()) / f64::from(self.m_tx);
        EnergyEfficiency(fraction * LOG2_E * self.sigma_max_sq.value() / self.n0.value())
    }
}

/// `sigma_max^2` of an `N x M` channel whose entries all have magnitude `sqrt(beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantModulusGain {
    pub sigma_max_sq: f64,
    /// False once the value exceeds the energy-conservation bound of one.
    pub physical: bool,
}

pub fn sigma_max_sq_constant_modulus(beta: LinearGain, m: u32, n: u32) -> Result<ConstantModulusGain> {
    MimoConfig::check_counts(m, n)?;
    let sigma_max_sq = beta.value() * f64::from(m.max(n));
    Ok(ConstantModulusGain {
        sigma_max_sq,
        physical: sigma_max_sq <= 1.0,
    })
}

/// `log2(e) / N0`: the limit when the full transmit power is captured.
pub fn ultimate_ee(n0: NoisePsd) -> EnergyEfficiency {
    EnergyEfficiency(LOG2_E / n0.value())
}

/// Receive antennas of area `antenna_area` (m^2) tiling a sphere of `radius` (m) around
/// the transmitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereGeometry {
    radius: f64,
    antenna_area: f64,
}

impl SphereGeometry {
    pub fn new(radius: f64, antenna_area: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::invalid("radius", "must be positive and finite", radius));
        }
        if !(antenna_area > 0.0) || !antenna_area.is_finite() {
            return Err(Error::invalid(
                "antenna_area",
                "must be positive and finite",
                antenna_area,
            ));
        }
        Ok(Self {
            radius,
            antenna_area,
        })
    }

    /// Sphere covered by isotropic antennas designed for `carrier_frequency`.
    pub fn isotropic(radius: f64, carrier_frequency: f64, space: &FreeSpace) -> Result<Self> {
        Self::new(radius, space.isotropic_aperture(carrier_frequency)?)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn antenna_area(&self) -> f64 {
        self.antenna_area
    }

    pub fn surface(&self) -> f64 {
        4.0 * PI * self.radius * self.radius
    }
}

/// Antennas needed to fully cover the sphere, `ceil(4 pi r^2 / A)`.
pub fn sphere_antenna_count(geom: &SphereGeometry) -> u64 {
    float::ceil(geom.surface() / geom.antenna_area) as u64
}

/// Free-space propagation between lossless isotropic antennas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeSpace {
    pub speed_of_light: f64,
}

impl Default for FreeSpace {
    fn default() -> Self {
        Self {
            speed_of_light: SPEED_OF_LIGHT,
        }
    }
}

impl FreeSpace {
    pub fn with_speed_of_light(speed_of_light: f64) -> Result<Self> {
        if !(speed_of_light > 0.0) || !speed_of_light.is_finite() {
            return Err(Error::invalid(
                "speed_of_light",
                "must be positive and finite",
                speed_of_light,
            ));
        }
        Ok(Self { speed_of_light })
    }

    /// c = 3e8 m/s.
    pub fn rounded() -> Self {
        Self {
            speed_of_light: SPEED_OF_LIGHT_ROUNDED,
        }
    }

    pub fn wavelength(&self, carrier_frequency: f64) -> Result<f64> {
        if !(carrier_frequency > 0.0) || !carrier_frequency.is_finite() {
            return Err(Error::invalid(
                "carrier_frequency",
                "must be positive and finite",
                carrier_frequency,
            ));
        }
        Ok(self.speed_of_light / carrier_frequency)
    }

    /// Effective area of an isotropic antenna, `lambda^2 / (4 pi)`.
    pub fn isotropic_aperture(&self, carrier_frequency: f64) -> Result<f64> {
        let lambda = self.wavelength(carrier_frequency)?;
        Ok(lambda * lambda / (4.0 * PI))
    }

    /// Friis gain `(lambda / (4 pi d))^2`.
    pub fn gain(&self, distance: f64, carrier_frequency: f64) -> Result<LinearGain> {
        if !(distance > 0.0) || !distance.is_finite() {
            return Err(Error::invalid("distance", "must be positive and finite", distance));
        }
        let ratio = self.wavelength(carrier_frequency)? / (4.0 * PI * distance);
        LinearGain::new(ratio * ratio)
    }

    /// Distance at which the free-space gain equals `gain`.
    pub fn distance_for_gain(&self, gain: LinearGain, carrier_frequency: f64) -> Result<f64> {
        let lambda = self.wavelength(carrier_frequency)?;
        Ok(lambda / (4.0 * PI * float::sqrt(gain.value())))
    }
}
