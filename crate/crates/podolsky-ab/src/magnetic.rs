//! Magnetic field, vector potential and Aharonov-Bohm phase shift of an
//! infinite solenoid in generalized electrodynamics.
//!
//! Normalized units throughout: radii as `S = r/R`, the coupling as
//! `A = a/R`, the field in units of the Maxwell interior field
//! `mu_0 n I`, the vector potential in units of `mu_0 n I R`. SI enters
//! only in [`delta_g_magnetic_si`].
//!
//! Closed forms (z = 1/A, zeta = S/A):
//!   b_z(S)   = z I_1(z) K_0(zeta)                 outside,
//!              1 - z K_1(z) I_0(zeta)             inside;
//!   a_phi(S) = 1/(2S) - I_1(z) K_1(zeta)          outside,
//!              S/2    - K_1(z) I_1(zeta)          inside.
//! Every I*K product pairs exp(+z)-like and exp(-zeta)-like factors, so
//! the exponents are combined analytically via `ScaledValue` before any
//! f64 is formed.

use crate::constants::{HBAR, MU_0};
use crate::error::{Error, Result};
use crate::scaled::ScaledValue;
use crate::specfun::{bessel_i, bessel_k, Scaling};
use std::f64::consts::PI;

/// Dimensionless Podolsky coupling `A = a/R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PodolskyScale(f64);

impl PodolskyScale {
    /// The large-ratio closed forms assume `R >> a`; above this the
    /// constructor still succeeds but [`PodolskyScale::exceeds_thin_limit`]
    /// reports it.
    pub const THIN_LIMIT: f64 = 0.5;

    pub fn new(a_over_r: f64) -> Result<Self> {
        if !(a_over_r > 0.0) || !a_over_r.is_finite() {
            return Err(Error::Domain(format!(
                "Podolsky scale A = a/R must be positive and finite, got {a_over_r}"
            )));
        }
        Ok(PodolskyScale(a_over_r))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    /// 1/A = R/a, the argument at which the boundary matching happens.
    pub fn inverse(&self) -> f64 {
        1.0 / self.0
    }

    /// True when A >= 0.5 and the R >> a approximations are unreliable.
    pub fn exceeds_thin_limit(&self) -> bool {
        self.0 >= Self::THIN_LIMIT
    }
}

/// Which side of the device surface a sample sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Inside,
    Surface,
    Outside,
}

impl Region {
    pub fn label(&self) -> &'static str {
        match self {
            Region::Inside => "inside",
            Region::Surface => "surface",
            Region::Outside => "outside",
        }
    }
}

/// Radial sample point `S = r/R`; the region tag is derived from S so
/// the two can never disagree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPoint {
    s: f64,
    region: Region,
}

impl RadialPoint {
    pub fn new(s: f64) -> Result<Self> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!(
                "radius S = r/R must be >= 0, got {s}"
            )));
        }
        let region = if s < 1.0 {
            Region::Inside
        } else if s == 1.0 {
            Region::Surface
        } else {
            Region::Outside
        };
        Ok(RadialPoint { s, region })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn region(&self) -> Region {
        self.region
    }

    /// zeta = r/a = S/A.
    pub fn zeta(&self, scale: PodolskyScale) -> f64 {
        self.s / scale.value()
    }
}

/// Solenoid geometry and drive in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolenoidConfig {
    /// Radius R, metres.
    pub radius: f64,
    /// Turn density n, 1/m.
    pub turns_per_metre: f64,
    /// Drive current I, amperes.
    pub current: f64,
    /// Podolsky length a, metres.
    pub podolsky_length: f64,
}

impl SolenoidConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) {
            return Err(Error::Domain("solenoid radius must be positive".into()));
        }
        if !(self.turns_per_metre > 0.0) {
            return Err(Error::Domain("turn density must be positive".into()));
        }
        if !(self.podolsky_length > 0.0) {
            return Err(Error::Domain("Podolsky length must be positive".into()));
        }
        Ok(())
    }

    pub fn scale(&self) -> Result<PodolskyScale> {
        self.validate()?;
        let a = self.podolsky_length / self.radius;
        if a >= 1.0 {
            return Err(Error::Domain(format!(
                "Podolsky length exceeds the solenoid radius (A = {a}); \
                 the thin-coupling closed forms do not apply"
            )));
        }
        PodolskyScale::new(a)
    }

    /// Maxwell interior field mu_0 n I, tesla.
    pub fn field_unit(&self) -> f64 {
        MU_0 * self.turns_per_metre * self.current
    }

    /// Maxwell flux mu_0 n I pi R^2, weber.
    pub fn maxwell_flux(&self) -> f64 {
        self.field_unit() * PI * self.radius * self.radius
    }
}

/// Which evaluation route produced a phase-shift number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Exact,
    Asymptotic,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Exact => "exact",
            Branch::Asymptotic => "asymptotic",
        }
    }
}

/// Magnetic AB phase shift split into the Maxwell baseline and the
/// generalized-electrodynamics correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShiftResult {
    /// q Phi / hbar, radians.
    pub maxwell_phase: f64,
    /// Delta g / Delta g^(M) = 1 - delta_g_correction.
    pub ge_ratio: f64,
    /// delta g, the fractional displacement.
    pub delta_g_correction: f64,
    /// Route that produced the correction.
    pub branch: Branch,
}

impl PhaseShiftResult {
    /// Total phase q Phi (1 - delta g) / hbar, radians.
    pub fn total_phase(&self) -> f64 {
        self.maxwell_phase * self.ge_ratio
    }
}

/// Effective (source) field: the Maxwell solution, in units mu_0 n I.
/// The interior branch is closed at the surface (S = 1 counts inside).
pub fn b_eff(point: RadialPoint) -> f64 {
    if point.s <= 1.0 {
        1.0
    } else {
        0.0
    }
}

/// Interior closed form, valid for S <= 1 (callable outside for
/// branch-continuity studies).
pub fn b_z_interior(s: f64, scale: PodolskyScale) -> Result<f64> {
    let z = scale.inverse();
    let k1 = bessel_k(1, z, Scaling::Scaled)?; // e^{+z} K_1(z)
    let i0 = bessel_i(0, s * z, Scaling::Scaled)?; // e^{-s z} I_0(s z)
                                                   // z K_1(z) I_0(zeta) = z * k1 * i0 * exp((s-1) z), exponents cancel
    let product = (k1 * i0 * z) * ScaledValue::new(1.0, (s - 1.0) * z);
    Ok(1.0 - product.value())
}

/// Exterior closed form, valid for S >= 1.
pub fn b_z_exterior(s: f64, scale: PodolskyScale) -> Result<f64> {
    let z = scale.inverse();
    let i1 = bessel_i(1, z, Scaling::Scaled)?; // e^{-z} I_1(z)
    let k0 = bessel_k(0, s * z, Scaling::Scaled)?; // e^{+s z} K_0(s z)
    let product = (i1 * k0 * z) * ScaledValue::new(1.0, (1.0 - s) * z);
    Ok(product.value())
}

/// Axial magnetic field b_z(S) in units mu_0 n I. Smooth through the
/// surface; equals 1 on the axis and decays like exp(-(S-1)/A) outside.
pub fn b_z(point: RadialPoint, scale: PodolskyScale) -> Result<f64> {
    if point.s <= 1.0 {
        b_z_interior(point.s, scale)
    } else {
        b_z_exterior(point.s, scale)
    }
}

/// Large-R/a elementary form of b_z. Both branches give exactly 1/2 at
/// the surface. The interior line assumes S >> A; near the axis
/// (S <= 2A) it is outside its validity range.
pub fn b_z_approx(point: RadialPoint, scale: PodolskyScale) -> f64 {
    let a = scale.value();
    let s = point.s;
    if s > 1.0 {
        0.5 * (1.0 / s).sqrt() * (-(s - 1.0) / a).exp()
    } else if s == 0.0 {
        // limiting interior value: the correction is exp(-1/A)-suppressed
        1.0
    } else {
        1.0 - 0.5 * (1.0 / s).sqrt() * (-(1.0 - s) / a).exp()
    }
}

/// True when the interior approximation [`b_z_approx`] is being used
/// outside its S >> A validity range.
pub fn b_z_approx_near_axis(point: RadialPoint, scale: PodolskyScale) -> bool {
    point.s <= 1.0 && point.s <= 2.0 * scale.value()
}

/// Intermediate large-R/a form: the boundary Bessel factors I_1(1/A),
/// K_1(1/A) replaced by their leading asymptotes while the radial
/// dependence keeps the exact I_0/K_0. Valid near the axis, unlike
/// [`b_z_approx`].
pub fn b_z_large_ratio(point: RadialPoint, scale: PodolskyScale) -> Result<f64> {
    let z = scale.inverse();
    let s = point.s;
    if s > 1.0 {
        Ok(0.5 * (1.0 / s).sqrt() * (-(s - 1.0) / scale.value()).exp())
    } else {
        // 1 - sqrt(pi/(2A)) e^{-1/A} I_0(S/A)
        let i0 = bessel_i(0, s * z, Scaling::Scaled)?;
        let pref = ScaledValue::new((0.5 * PI * z).sqrt(), (s - 1.0) * z);
        Ok(1.0 - (i0 * pref).value())
    }
}

/// Intermediate large-R/a form of the vector potential (same treatment
/// as [`b_z_large_ratio`]).
pub fn a_phi_large_ratio(point: RadialPoint, scale: PodolskyScale) -> Result<f64> {
    let a = scale.value();
    let z = scale.inverse();
    let s = point.s;
    if s == 0.0 {
        return Ok(0.0);
    }
    if s > 1.0 {
        Ok(0.5 / s * (1.0 - a * s.sqrt() * (-(s - 1.0) / a).exp()))
    } else {
        // S/2 - sqrt(pi A/2) e^{-1/A} I_1(S/A)
        let i1 = bessel_i(1, s * z, Scaling::Scaled)?;
        let pref = ScaledValue::new((0.5 * PI * a).sqrt(), (s - 1.0) * z);
        Ok(0.5 * s - (i1 * pref).value())
    }
}

/// Interior vector potential, units mu_0 n I R.
pub fn a_phi_interior(s: f64, scale: PodolskyScale) -> Result<f64> {
    let z = scale.inverse();
    let k1 = bessel_k(1, z, Scaling::Scaled)?;
    let i1 = bessel_i(1, s * z, Scaling::Scaled)?;
    let product = (k1 * i1) * ScaledValue::new(1.0, (s - 1.0) * z);
    Ok(0.5 * s - product.value())
}

/// Exterior vector potential, units mu_0 n I R.
pub fn a_phi_exterior(s: f64, scale: PodolskyScale) -> Result<f64> {
    let z = scale.inverse();
    let i1 = bessel_i(1, z, Scaling::Scaled)?;
    let k1 = bessel_k(1, s * z, Scaling::Scaled)?;
    let product = (i1 * k1) * ScaledValue::new(1.0, (1.0 - s) * z);
    Ok(0.5 / s - product.value())
}

/// Azimuthal vector potential a_phi(S) in units mu_0 n I R. Vanishes on
/// the axis and approaches the Maxwell exterior 1/(2S) far away.
pub fn a_phi(point: RadialPoint, scale: PodolskyScale) -> Result<f64> {
    if point.s == 0.0 {
        return Ok(0.0);
    }
    if point.s <= 1.0 {
        a_phi_interior(point.s, scale)
    } else {
        a_phi_exterior(point.s, scale)
    }
}

/// Large-R/a elementary form of a_phi (the form whose exterior line is
/// the basis of the phase-shift displacement delta g).
pub fn a_phi_approx(point: RadialPoint, scale: PodolskyScale) -> f64 {
    let a = scale.value();
    let s = point.s;
    if s == 0.0 {
        return 0.0;
    }
    if s > 1.0 {
        0.5 / s * (1.0 - a * s.sqrt() * (-(s - 1.0) / a).exp())
    } else {
        0.5 / s * (s * s - a * s.sqrt() * (-(1.0 - s) / a).exp())
    }
}

/// Phase-shift displacement and ratio for a loop of radius S >= 1.
///
/// delta g = A sqrt(S) exp(-(S-1)/A); ratio = 1 - delta g. This is the
/// asymptotic branch the large-R/a expansion of a_phi produces; the
/// exact-Bessel alternative is [`delta_g_ratio_exact`].
pub fn delta_g_ratio(point: RadialPoint, scale: PodolskyScale) -> Result<(f64, f64)> {
    if point.s < 1.0 {
        return Err(Error::Domain(format!(
            "magnetic AB loop must enclose the solenoid: S >= 1, got {}",
            point.s
        )));
    }
    let a = scale.value();
    let dg = a * point.s.sqrt() * (-(point.s - 1.0) / a).exp();
    Ok((1.0 - dg, dg))
}

/// Exact-Bessel route for the same ratio: 2 pi r A_phi / Phi^(M)
/// = 1 - 2 S I_1(1/A) K_1(S/A).
pub fn delta_g_ratio_exact(point: RadialPoint, scale: PodolskyScale) -> Result<(f64, f64)> {
    if point.s < 1.0 {
        return Err(Error::Domain(format!(
            "magnetic AB loop must enclose the solenoid: S >= 1, got {}",
            point.s
        )));
    }
    let z = scale.inverse();
    let i1 = bessel_i(1, z, Scaling::Scaled)?;
    let k1 = bessel_k(1, point.s * z, Scaling::Scaled)?;
    let dg = ((i1 * k1) * ScaledValue::new(2.0 * point.s, (1.0 - point.s) * z)).value();
    Ok((1.0 - dg, dg))
}

/// SI magnetic AB phase shift for a beam circling at radius r >= R.
pub fn delta_g_magnetic_si(
    cfg: &SolenoidConfig,
    charge: f64,
    radius: f64,
) -> Result<PhaseShiftResult> {
    cfg.validate()?;
    if !(charge != 0.0) || !charge.is_finite() {
        return Err(Error::Domain(
            "beam charge must be nonzero and finite".into(),
        ));
    }
    if radius < cfg.radius {
        return Err(Error::Domain(format!(
            "beam radius {} m is inside the solenoid (R = {} m)",
            radius, cfg.radius
        )));
    }
    let scale = cfg.scale()?;
    let point = RadialPoint::new(radius / cfg.radius)?;
    let (ratio, dg) = delta_g_ratio(point, scale)?;
    if !(ratio > 0.0 && ratio <= 1.0) {
        return Err(Error::Domain(format!(
            "phase ratio {ratio} outside (0, 1]; coupling A = {} too large for the \
             asymptotic displacement formula",
            scale.value()
        )));
    }
    Ok(PhaseShiftResult {
        maxwell_phase: charge * cfg.maxwell_flux() / HBAR,
        ge_ratio: ratio,
        delta_g_correction: dg,
        branch: Branch::Asymptotic,
    })
}

/// Both forms of the flyby displacement for a beam at r = R + eps a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlybyShift {
    /// First order in eps: A (1 - eps).
    pub first_order: f64,
    /// First order in eps keeping the A/2 radius correction:
    /// A (1 + eps A / 2)(1 - eps).
    pub with_radius_term: f64,
    /// Unexpanded form A sqrt(1 + eps A) exp(-eps).
    pub unexpanded: f64,
}

/// Phase-shift displacement for a beam skimming the outer surface at
/// offset delta r = eps a, 0 <= eps <~ 1.
pub fn delta_g_flyby(scale: PodolskyScale, epsilon: f64) -> Result<FlybyShift> {
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::Domain(format!(
            "flyby offset eps must be >= 0, got {epsilon}"
        )));
    }
    let a = scale.value();
    Ok(FlybyShift {
        first_order: a * (1.0 - epsilon),
        with_radius_term: a * (1.0 + 0.5 * epsilon * a) * (1.0 - epsilon),
        unexpanded: a * (1.0 + epsilon * a).sqrt() * (-epsilon).exp(),
    })
}
