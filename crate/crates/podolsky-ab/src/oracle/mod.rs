//! Independent numerical ground truth: a finite-difference solver for
//! the screened radial equations, adaptive quadrature, potential
//! reconstruction and direct loop-integral phase evaluation. Nothing in
//! here trusts the closed forms it is used to validate.

mod bvp;
mod quad;

pub use bvp::{
    richardson_extrapolate, solve_radial_bvp, BvpSolution, FarBoundary, LeftBoundary, RadialGrid,
    Spacing, MIN_POINTS,
};
pub use quad::{cumulative_integral, quadrature, QuadResult};

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Loop integral of the vector potential around a coaxial circle,
/// in units q mu_0 n I R^2 / hbar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopPhase {
    /// 2 pi S a_phi(S): the azimuthal symmetry collapses the quadrature.
    pub shortcut: f64,
    /// 64-point azimuthal Riemann sum of the same integrand; must equal
    /// the shortcut to rounding since the integrand is angle-free.
    pub azimuthal_sum: f64,
}

/// Evaluate the AB loop integral at radius S >= 1 for a vector
/// potential profile given in units mu_0 n I R.
pub fn loop_phase_numeric<F: Fn(f64) -> f64>(a_phi: F, s: f64) -> Result<LoopPhase> {
    if !(s >= 1.0) {
        return Err(Error::Domain(format!(
            "loop must enclose the solenoid: S >= 1, got {s}"
        )));
    }
    let shortcut = 2.0 * PI * s * a_phi(s);
    let n = 64;
    let dphi = 2.0 * PI / n as f64;
    let mut sum = 0.0;
    for _ in 0..n {
        sum += a_phi(s) * s * dphi;
    }
    Ok(LoopPhase {
        shortcut,
        azimuthal_sum: sum,
    })
}

/// Reconstruct a potential from sampled field values by cumulative
/// integration: phi(x_i) = reference_value - int_{x_ref}^{x_i} e dx.
///
/// `reference` must coincide with a grid node. Samples are integrated
/// in whatever units they carry; for normalized electric profiles pass
/// A * e_r so that d phi / dS = -A e(zeta) comes out in sigma R/eps_0.
pub fn integrate_field_to_potential(
    grid: &RadialGrid,
    field: &[f64],
    reference: f64,
    reference_value: f64,
) -> Result<Vec<f64>> {
    let x = grid.nodes();
    if field.len() != x.len() {
        return Err(Error::InvalidParameter(format!(
            "field has {} samples for {} nodes",
            field.len(),
            x.len()
        )));
    }
    let span = x[x.len() - 1] - x[0];
    let ref_idx = x
        .iter()
        .position(|&xi| (xi - reference).abs() <= 1e-12 * span.max(1.0))
        .ok_or_else(|| {
            Error::InvalidParameter(format!("reference {reference} is not a grid node"))
        })?;
    let cumulative = cumulative_integral(x, field)?;
    Ok(cumulative
        .iter()
        .map(|&f| reference_value - (f - cumulative[ref_idx]))
        .collect())
}
