//! Numerics for a membrane-in-the-middle optomechanical cavity acting as a
//! single-photon router.
//!
//! A strong red-detuned control field turns the otherwise transmitting
//! double-ended cavity into a reflector for a narrow-band probe photon. This
//! crate evaluates the linearized response of that system: reflection and
//! transmission spectra, vacuum and thermal noise backgrounds, stability of
//! the operating point and band-integrated routing probabilities.
//!
//! All frequencies are angular (rad/s). Spectra are evaluated in the frame
//! rotating at the drive frequency, so the probe sits at `ω_c + ω` and the
//! transparency feature is at `ω = Δ`.
//!
//! The crate is `no_std` and only needs `alloc` for grid-valued results.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod empty_cavity;
mod error;
pub mod operating_point;
pub mod quadrature;
pub mod response;
pub mod roots;
pub mod router;
pub mod stability;

pub use num_complex::Complex64;

pub use crate::empty_cavity::{lorentzian_input, EmptyCavity, Lorentzian};
pub use crate::error::{Error, Result};
pub use crate::operating_point::{
    default_params, derive_operating_point, OperatingPoint, PhysConstants, SystemParams, CODATA,
};
pub use crate::response::{output_spectra, ChannelSpectra, DipScan};
pub use crate::router::{routing_probabilities, switching_contrast, Band, RoutingReport};
pub use crate::stability::{assess_stability, max_stable_power, StabilityReport};
