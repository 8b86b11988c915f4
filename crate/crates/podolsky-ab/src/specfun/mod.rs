//! Special functions needed by the closed-form fields: modified Bessel
//! I_0, I_1, K_0, K_1 (plain and exponentially scaled), modified Struve
//! L_{-1}, L_0, L_1, the cancellation-free tail L_nu - I_nu, and the
//! generalized hypergeometric series 1F2 / 2F3.
//!
//! Everything is pure and reentrant; no global state.

mod bessel;
mod hyper;
mod struve;

pub use bessel::{bessel_i, bessel_k, i0, i1, k0, k1, Scaling};
pub use hyper::{hyp_pfq, i0_integral, k0_integral, k0_integral_tail, l0_integral, m0_integral};
pub use struve::{struve_l, struve_minus_bessel, STRUVE_TAIL_SWITCH};

/// Convergence policy for the series evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Stop once a term falls below `rel_tol * |partial sum|`.
    pub rel_tol: f64,
    /// Hard cap on the number of terms before reporting failure.
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            max_terms: 10_000,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> crate::error::Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(crate::error::Error::InvalidParameter(
                "rel_tol must be positive".into(),
            ));
        }
        if self.max_terms == 0 {
            return Err(crate::error::Error::InvalidParameter(
                "max_terms must be at least 1".into(),
            ));
        }
        Ok(())
    }
}
