//! Static fields, potentials and Aharonov-Bohm phase shifts of
//! Bopp-Podolsky (generalized) electrodynamics for two textbook sources:
//! an infinite solenoid and an infinite charged tube.
//!
//! In generalized electrodynamics the field equations carry the operator
//! `(1 - a^2 laplacian)`, where the length `a` is the inverse mass of the
//! photon's massive mode. Fields leak through source surfaces over the
//! scale `a`, and the Aharonov-Bohm phase picks up corrections relative
//! to the Maxwell prediction. Everything here works in normalized units:
//! radii in units of the device radius R (`S = r/R`), the coupling as
//! `A = a/R`, fields in units of the Maxwell interior field.
//!
//! Module map:
//! * [`specfun`] - modified Bessel/Struve functions, hypergeometric
//!   series, all overflow-safe via [`scaled::ScaledValue`].
//! * [`magnetic`] - solenoid field, vector potential, magnetic AB shift.
//! * [`electric`] - charged-tube field, scalar potential, electric AB
//!   shift, boundary-matching coefficients.
//! * [`oracle`] - independent numerics (finite-difference BVP solver,
//!   adaptive quadrature, loop integrals) used to validate every closed
//!   form before trusting it.
//! * [`verify`] - the runnable check suite behind `podolsky-ab verify`.

pub mod constants;
pub mod dd;
pub mod electric;
pub mod error;
pub mod magnetic;
pub mod oracle;
pub mod scaled;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use scaled::ScaledValue;
