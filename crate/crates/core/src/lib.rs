//! Hard limits on the energy efficiency (bit/Joule) of wireless links.
//!
//! Everything in this crate is pure arithmetic over linear SI quantities: Shannon-capacity
//! based efficiency expressions, their asymptotic limits, MIMO singular-value bounds and the
//! closed-form efficiency-optimal ratio between transmit power and bandwidth. Decibel forms
//! only appear in the conversion helpers of [`quantities`].
//!
//! The crate is `no_std` and only needs `alloc` for the sweep tables.
//!
//! ```
//! use eelimit_core::{quantities::*, link::SisoLink, circuit::{CircuitParams, optimal_operating_point_siso}};
//!
//! let n0 = NoisePsd::from_dbm_per_hz(-174.0).unwrap();
//! let link = SisoLink::new(LinearGain::from_db(-80.0).unwrap(), n0).unwrap();
//! let hw = CircuitParams::new(0.0, 1e-14, 1e-15).unwrap();
//! let point = optimal_operating_point_siso(&link, &hw).unwrap();
//! assert!((point.ee.value() / 2.932e12 - 1.0).abs() < 1e-3);
//! ```
#![no_std]

extern crate alloc;

pub mod circuit;
mod error;
pub(crate) mod float;
pub mod link;
pub mod quantities;
pub mod special;
pub mod sweeps;

pub use error::{Error, Result};

/// log2(e), the bit/nat conversion factor that shows up in every limit.
pub const LOG2_E: f64 = core::f64::consts::LOG2_E;
