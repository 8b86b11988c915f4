//! Physical constants (SI-2019 exact where applicable).
//!
//! The core math is unit-free; these enter only through the `*_si`
//! wrappers and the command-line front end.

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Vacuum permeability, H/m. The classical defined value 4 pi x 10^-7;
/// the deviation of the measured SI-2019 value is far below every
/// tolerance used here.
pub const MU_0: f64 = 4.0e-7 * std::f64::consts::PI;

/// Vacuum permittivity, F/m, from 1/(mu_0 c^2).
pub const EPSILON_0: f64 = 1.0 / (MU_0 * SPEED_OF_LIGHT * SPEED_OF_LIGHT);

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Default Podolsky length for SI examples, metres. Spectroscopy bounds
/// put the massive-mode length scale at or below ~1e-18 m.
pub const DEFAULT_PODOLSKY_LENGTH: f64 = 1e-18;
