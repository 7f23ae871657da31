//! Unit-tagged scalars.
//!
//! All arithmetic downstream happens on the linear SI value held by these newtypes; the
//! dB/dBm helpers exist for parsing user input and for formatting output.

use core::fmt;

use crate::float;
use crate::{Error, Result};

/// Convert a decibel value to a linear power ratio.
pub fn db_to_linear(x_db: f64) -> Result<f64> {
    if !x_db.is_finite() {
        return Err(Error::invalid("x_db", "must be finite", x_db));
    }
    Ok(float::powf(10.0, x_db / 10.0))
}

/// Convert a strictly positive linear power ratio to decibels.
pub fn linear_to_db(g: f64) -> Result<f64> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::invalid("g", "must be positive and finite", g));
    }
    Ok(10.0 * float::log10(g))
}

/// dBm to watts.
pub fn dbm_to_watts(x_dbm: f64) -> Result<PowerWatts> {
    if !x_dbm.is_finite() {
        return Err(Error::invalid("x_dbm", "must be finite", x_dbm));
    }
    PowerWatts::new(float::powf(10.0, (x_dbm - 30.0) / 10.0))
}

/// Watts to dBm. Zero power has no dBm value.
pub fn watts_to_dbm(p: PowerWatts) -> Result<f64> {
    Ok(linear_to_db(p.value())? + 30.0)
}

macro_rules! quantity {
    ($(#[$meta:meta])* $name:ident, $unit:literal, $check:expr, $reason:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
        pub struct $name(pub(crate) f64);

        impl $name {
            pub fn new(value: f64) -> Result<Self> {
                let ok: fn(f64) -> bool = $check;
                if value.is_finite() && ok(value) {
                    Ok(Self(value))
                } else {
                    Err(Error::invalid(stringify!($name), $reason, value))
                }
            }

            #[inline]
            pub fn value(self) -> f64 {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:e} {}", self.0, $unit)
            }
        }

        impl TryFrom<f64> for $name {
            type Error = Error;

            fn try_from(value: f64) -> Result<Self> {
                Self::new(value)
            }
        }
    };
}

quantity!(
    /// Dimensionless power ratio such as a channel gain or a squared singular value.
    LinearGain,
    "",
    |v| v > 0.0,
    "must be positive and finite"
);
quantity!(
    /// Transmit power in W.
    PowerWatts,
    "W",
    |v| v >= 0.0,
    "must be non-negative and finite"
);
quantity!(
    /// Bandwidth in Hz.
    BandwidthHz,
    "Hz",
    |v| v > 0.0,
    "must be positive and finite"
);
quantity!(
    /// Noise power spectral density in W/Hz.
    NoisePsd,
    "W/Hz",
    |v| v > 0.0,
    "must be positive and finite"
);
quantity!(
    /// Energy efficiency in bit/Joule.
    EnergyEfficiency,
    "bit/J",
    |v| v >= 0.0,
    "must be non-negative and finite"
);
quantity!(
    /// Data rate in bit/s.
    DataRate,
    "bit/s",
    |v| v >= 0.0,
    "must be non-negative and finite"
);

impl LinearGain {
    pub fn from_db(x_db: f64) -> Result<Self> {
        Self::new(db_to_linear(x_db)?)
    }

    pub fn to_db(self) -> f64 {
        10.0 * float::log10(self.0)
    }
}

impl PowerWatts {
    pub fn from_dbm(x_dbm: f64) -> Result<Self> {
        dbm_to_watts(x_dbm)
    }
}

impl NoisePsd {
    /// The room-temperature value -174 dBm/Hz.
    pub fn room_temperature() -> Self {
        // 10^(-20.4) W/Hz
        Self(float::powf(10.0, -20.4))
    }

    pub fn from_dbm_per_hz(x_dbm_hz: f64) -> Result<Self> {
        Self::new(dbm_to_watts(x_dbm_hz)?.value())
    }
}

const SI_PREFIXES: [(f64, &str); 7] = [
    (1e18, "E"),
    (1e15, "P"),
    (1e12, "T"),
    (1e9, "G"),
    (1e6, "M"),
    (1e3, "k"),
    (1.0, ""),
];

/// Split a value into a mantissa and an SI prefix, e.g. 3.6e9 -> (3.6, "G").
pub fn si_scale(value: f64) -> (f64, &'static str) {
    let mag = value.abs();
    for (scale, prefix) in SI_PREFIXES {
        if mag >= scale {
            return (value / scale, prefix);
        }
    }
    (value, "")
}

impl EnergyEfficiency {
    /// Engineer-readable form such as `3.6 Gbit/Joule`.
    pub fn scaled(&self) -> Scaled {
        Scaled {
            value: self.0,
            unit: "bit/Joule",
        }
    }
}

impl DataRate {
    pub fn scaled(&self) -> Scaled {
        Scaled {
            value: self.0,
            unit: "bit/s",
        }
    }
}

/// Display adapter printing a quantity with an SI prefix and two significant digits.
#[derive(Debug, Clone, Copy)]
pub struct Scaled {
    value: f64,
    unit: &'static str,
}

impl fmt::Display for Scaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (mantissa, prefix) = si_scale(self.value);
        let precision = f.precision().unwrap_or(1);
        write!(f, "{:.*} {}{}", precision, mantissa, prefix, self.unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn db_examples() {
        assert_eq!(db_to_linear(0.0).unwrap(), 1.0);
        assert!(rel(db_to_linear(-110.0).unwrap(), 1e-11) < 1e-14);
        assert!(rel(db_to_linear(-80.0).unwrap(), 1e-8) < 1e-14);
        assert_eq!(linear_to_db(1.0).unwrap(), 0.0);
        assert!((linear_to_db(0.2318).unwrap() - (-6.348865683724228)).abs() < 1e-12);
        assert!((linear_to_db(1e-5).unwrap() + 50.0).abs() < 1e-12);
    }

    #[test]
    fn dbm_examples() {
        assert!(rel(dbm_to_watts(20.0).unwrap().value(), 0.1) < 1e-14);
        assert!(rel(dbm_to_watts(30.0).unwrap().value(), 1.0) < 1e-14);
        assert!(rel(dbm_to_watts(-174.0).unwrap().value(), 3.981071705534972e-21) < 1e-13);
        assert!(rel(NoisePsd::room_temperature().value(), 3.981071705534972e-21) < 1e-13);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(db_to_linear(f64::NAN).is_err());
        assert!(db_to_linear(f64::INFINITY).is_err());
        assert!(dbm_to_watts(f64::NEG_INFINITY).is_err());
        assert!(linear_to_db(0.0).is_err());
        assert!(linear_to_db(-1.0).is_err());
        assert!(LinearGain::new(0.0).is_err());
        assert!(PowerWatts::new(-1e-3).is_err());
        assert!(PowerWatts::new(0.0).is_ok());
        assert!(BandwidthHz::new(0.0).is_err());
        assert!(NoisePsd::new(f64::NAN).is_err());
        assert!(EnergyEfficiency::new(f64::INFINITY).is_err());
        assert!(DataRate::new(0.0).is_ok());
    }

    #[test]
    fn scaled_display() {
        let ee = EnergyEfficiency::new(3.623886e9).unwrap();
        assert_eq!(format!("{}", ee.scaled()), "3.6 Gbit/Joule");
        let ee = EnergyEfficiency::new(6.2e14).unwrap();
        assert_eq!(format!("{:.2}", ee.scaled()), "620.00 Tbit/Joule");
        assert_eq!(si_scale(3.6e20), (360.0, "E"));
        assert_eq!(si_scale(12.0), (12.0, ""));
    }
}
