//! Electric field, scalar potential and Aharonov-Bohm phase shift of an
//! infinite charged tube in generalized electrodynamics.
//!
//! Normalized units: radii as `S = r/R`, coupling `A = a/R`, field in
//! units of `sigma/epsilon_0`, potential in units of `sigma R/epsilon_0`.
//!
//! With z = 1/A, zeta = S/A and M_nu = L_nu - I_nu (the Struve tail):
//!   interior:  E(zeta) = b1 I_0(zeta)
//!   exterior:  E(zeta) = b4 K_0(zeta) - (pi/2) z M_0(zeta)
//! where b1, b4 follow from continuity of E and E' at zeta = z via the
//! Wronskian I_0 K_1 + I_1 K_0 = 1/z:
//!   b1 = -(pi/2) z^2 { K_1(z) M_0(z) + K_0(z) [M_1(z) + 2/pi] }
//!   b4 = -(pi/2) z^2 { -I_1(z) M_0(z) + I_0(z) [M_1(z) + 2/pi] }
//! b1 carries exp(-z), b4 carries exp(+z); both live in `ScaledValue`s
//! so products against I_0(zeta)/K_0(zeta) cancel exponents analytically.

use crate::constants::{EPSILON_0, HBAR};
use crate::error::{Error, Result};
use crate::magnetic::{PodolskyScale, RadialPoint};
use crate::scaled::ScaledValue;
use crate::specfun::{
    bessel_i, bessel_k, i0, i0_integral, i1, k0_integral_tail, m0_integral, struve_minus_bessel,
    Scaling, SeriesControl,
};
use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

/// Exact hypergeometric potential path is limited to zeta <= this;
/// beyond it use the interior expansion or the asymptotic method.
pub const PHI_ZETA_MAX: f64 = 700.0;

/// Charged-tube geometry in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeConfig {
    /// Radius R, metres.
    pub radius: f64,
    /// Surface charge density sigma, C/m^2.
    pub sigma: f64,
    /// Podolsky length a, metres.
    pub podolsky_length: f64,
}

impl TubeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) {
            return Err(Error::Domain("tube radius must be positive".into()));
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
                "Podolsky length exceeds the tube radius (A = {a}); \
                 the thin-coupling closed forms do not apply"
            )));
        }
        PodolskyScale::new(a)
    }

    /// Field unit sigma/epsilon_0, V/m.
    pub fn field_unit(&self) -> f64 {
        self.sigma / EPSILON_0
    }

    /// Potential unit sigma R / epsilon_0, volts.
    pub fn potential_unit(&self) -> f64 {
        self.sigma * self.radius / EPSILON_0
    }
}

/// Boundary-matching coefficients of the interior/exterior solution,
/// in units sigma/epsilon_0. `b1` is exp(-1/A)-small, `b4` is
/// exp(+1/A)-large; both are held as scaled values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCoefficients {
    pub b1: ScaledValue,
    pub b4: ScaledValue,
}

/// Evaluation route for the electric field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldMethod {
    /// Boundary coefficients assembled once, then b1 I_0 / b4 K_0 - ...
    Exact,
    /// The flattened large-R/a organization of the same closed form
    /// (tail-function grouping); requires A <= 0.25.
    LargeRatio,
    /// Elementary-function limit of the coefficients.
    Asymptotic,
}

impl FieldMethod {
    pub fn label(&self) -> &'static str {
        match self {
            FieldMethod::Exact => "exact",
            FieldMethod::LargeRatio => "large_ratio",
            FieldMethod::Asymptotic => "asymptotic",
        }
    }
}

/// Evaluation route for the potential difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialMethod {
    /// Hypergeometric antiderivative of the exact interior field.
    Exact,
    /// Cubic Taylor surrogate of the interior antiderivative about
    /// zeta = 1.
    Expansion,
    /// Constant deep-interior field (the R >> a Maxwell-limit form).
    Asymptotic,
}

impl PotentialMethod {
    pub fn label(&self) -> &'static str {
        match self {
            PotentialMethod::Exact => "exact",
            PotentialMethod::Expansion => "expansion",
            PotentialMethod::Asymptotic => "asymptotic",
        }
    }
}

/// Gauge constants added to the interior/exterior potential.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhiGauge {
    pub phi0_in: f64,
    pub phi0_out: f64,
}

/// Two beam branches traversing the insides of two identical tubes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamPairGeometry {
    /// Branch offsets r_i/R from each tube's axis; must lie inside.
    pub s1: f64,
    pub s2: f64,
    /// Time spent inside the tubes, seconds.
    pub transit_time: f64,
    /// Beam particle charge, coulombs.
    pub charge: f64,
}

impl BeamPairGeometry {
    pub fn validate(&self) -> Result<()> {
        for (name, s) in [("S1", self.s1), ("S2", self.s2)] {
            if !(0.0..1.0).contains(&s) {
                return Err(Error::Domain(format!(
                    "beam offset {name} must lie in [0, 1), got {s}"
                )));
            }
        }
        if !(self.transit_time > 0.0) {
            return Err(Error::Domain("transit time must be positive".into()));
        }
        Ok(())
    }
}

/// Effective (source) field: the Maxwell solution, units sigma/epsilon_0.
/// The surface belongs to the exterior branch (E_eff(1) = 1).
pub fn e_eff(point: RadialPoint) -> f64 {
    let s = point.s();
    if s < 1.0 {
        0.0
    } else {
        1.0 / s
    }
}

/// Boundary coefficients from the closed forms. Every Struve-Bessel
/// difference goes through [`struve_minus_bessel`]; no exp(z)-sized
/// subtraction is ever formed.
pub fn boundary_coeffs(scale: PodolskyScale) -> Result<BoundaryCoefficients> {
    let z = scale.inverse();
    let m0 = struve_minus_bessel(0, z)?;
    let m1p = struve_minus_bessel(1, z)? + FRAC_2_PI;
    let k0s = bessel_k(0, z, Scaling::Scaled)?.value(); // e^{+z} K_0
    let k1s = bessel_k(1, z, Scaling::Scaled)?.value();
    let i0s = bessel_i(0, z, Scaling::Scaled)?.value(); // e^{-z} I_0
    let i1s = bessel_i(1, z, Scaling::Scaled)?.value();
    let b1 = ScaledValue::new(-FRAC_PI_2 * z * z * (k1s * m0 + k0s * m1p), -z);
    let b4 = ScaledValue::new(-FRAC_PI_2 * z * z * (-i1s * m0 + i0s * m1p), z);
    Ok(BoundaryCoefficients { b1, b4 })
}

fn e_r_exact_interior(s: f64, scale: PodolskyScale, coeffs: &BoundaryCoefficients) -> Result<f64> {
    let zeta = s / scale.value();
    let i0v = bessel_i(0, zeta, Scaling::Scaled)?; // e^{-zeta} I_0
    Ok((coeffs.b1 * i0v * ScaledValue::new(1.0, zeta)).value())
}

fn e_r_exact_exterior(s: f64, scale: PodolskyScale, coeffs: &BoundaryCoefficients) -> Result<f64> {
    let z = scale.inverse();
    let zeta = s * z;
    let k0v = bessel_k(0, zeta, Scaling::Scaled)?; // e^{+zeta} K_0
    let homogeneous = (coeffs.b4 * k0v * ScaledValue::new(1.0, -zeta)).value();
    let particular = -FRAC_PI_2 * z * struve_minus_bessel(0, zeta)?;
    Ok(homogeneous + particular)
}

fn e_r_large_ratio(s: f64, scale: PodolskyScale) -> Result<f64> {
    let z = scale.inverse();
    let zeta = s * z;
    let m0 = struve_minus_bessel(0, z)?;
    let m1 = struve_minus_bessel(1, z)?;
    if s < 1.0 {
        // -(pi/2) z^2 [K_1 M_0 + K_0 M_1 + (2/pi) K_0] I_0(zeta)
        let k0s = bessel_k(0, z, Scaling::Scaled)?.value();
        let k1s = bessel_k(1, z, Scaling::Scaled)?.value();
        let bracket = k1s * m0 + k0s * m1 + FRAC_2_PI * k0s;
        let i0v = bessel_i(0, zeta, Scaling::Scaled)?;
        Ok((i0v * ScaledValue::new(-FRAC_PI_2 * z * z * bracket, zeta - z)).value())
    } else {
        // -(pi/2) z^2 [I_0 M_1 - I_1 M_0 + (2/pi) I_0] K_0(zeta) - (pi/2) z M_0(zeta)
        let i0s = bessel_i(0, z, Scaling::Scaled)?.value();
        let i1s = bessel_i(1, z, Scaling::Scaled)?.value();
        let bracket = i0s * m1 - i1s * m0 + FRAC_2_PI * i0s;
        let k0v = bessel_k(0, zeta, Scaling::Scaled)?;
        let homogeneous = (k0v * ScaledValue::new(-FRAC_PI_2 * z * z * bracket, z - zeta)).value();
        Ok(homogeneous - FRAC_PI_2 * z * struve_minus_bessel(0, zeta)?)
    }
}

fn e_r_asymptotic(s: f64, scale: PodolskyScale) -> Result<f64> {
    let z = scale.inverse();
    let zeta = s * z;
    if s < 1.0 {
        // sqrt(pi/(2A)) e^{-1/A} I_0(zeta)
        let i0v = bessel_i(0, zeta, Scaling::Scaled)?;
        Ok((i0v * ScaledValue::new((FRAC_PI_2 * z).sqrt(), zeta - z)).value())
    } else {
        // 1/S - sqrt(1/(2 pi A)) e^{1/A} K_0(zeta)
        let k0v = bessel_k(0, zeta, Scaling::Scaled)?;
        let podolsky = (k0v * ScaledValue::new(-(z / (2.0 * PI)).sqrt(), z - zeta)).value();
        Ok(1.0 / s + podolsky)
    }
}

/// Radial electric field e_r(S) in units sigma/epsilon_0.
///
/// Interior for S < 1, exterior for S >= 1 (matching the effective
/// field's surface convention). `LargeRatio` requires A <= 0.25.
pub fn e_r(point: RadialPoint, scale: PodolskyScale, method: FieldMethod) -> Result<f64> {
    let s = point.s();
    match method {
        FieldMethod::Exact => {
            let coeffs = boundary_coeffs(scale)?;
            if s < 1.0 {
                e_r_exact_interior(s, scale, &coeffs)
            } else {
                e_r_exact_exterior(s, scale, &coeffs)
            }
        }
        FieldMethod::LargeRatio => {
            if scale.value() > 0.25 {
                return Err(Error::InvalidMethod(format!(
                    "large_ratio assumes R >> a (A <= 0.25), got A = {}",
                    scale.value()
                )));
            }
            e_r_large_ratio(s, scale)
        }
        FieldMethod::Asymptotic => e_r_asymptotic(s, scale),
    }
}

/// Scalar potential phi(S) in units sigma R / epsilon_0, exact branch.
///
/// Interior: -b1 S 1F2(1/2; 1, 3/2; zeta^2/4) + phi0_in.
/// Exterior: A b4 int_zeta^inf K_0 + (pi/2) int_0^zeta M_0 + phi0_out,
/// i.e. the hypergeometric/Struve antiderivatives with the
/// exponentially large constant from anchoring int K_0 at the axis
/// removed (a gauge choice; only differences are observable).
///
/// Restricted to zeta <= [`PHI_ZETA_MAX`]; beyond that the series pile
/// up exp(zeta)-sized terms, and [`phi_interior_expansion`] or the
/// asymptotic potential difference should be used instead.
pub fn phi(point: RadialPoint, scale: PodolskyScale, gauge: PhiGauge) -> Result<f64> {
    let s = point.s();
    let zeta = s / scale.value();
    if zeta > PHI_ZETA_MAX {
        return Err(Error::Overflow(format!(
            "zeta = {zeta} beyond the exact hypergeometric range ({PHI_ZETA_MAX}); \
             use phi_interior_expansion or the asymptotic method"
        )));
    }
    let ctl = SeriesControl::default();
    let coeffs = boundary_coeffs(scale)?;
    if s < 1.0 {
        // -A b1 int_0^zeta I_0 + phi0_in
        let f = i0_integral(zeta, &ctl)?;
        Ok(-(coeffs.b1 * f * scale.value()).value() + gauge.phi0_in)
    } else {
        let tail = k0_integral_tail(zeta)?;
        let homogeneous = (coeffs.b4 * tail * scale.value()).value();
        Ok(homogeneous + FRAC_PI_2 * m0_integral(zeta)? + gauge.phi0_out)
    }
}

/// Elementary-function potential for arguments beyond the
/// hypergeometric range: the Maxwell-limit interior slope and the
/// Maxwell logarithm outside (the generalized-electrodynamics parts are
/// exp(-1/A)- resp. exp(-(S-1)/A)-suppressed there).
pub fn phi_asymptotic(point: RadialPoint, scale: PodolskyScale, gauge: PhiGauge) -> f64 {
    let s = point.s();
    if s < 1.0 {
        let z = scale.inverse();
        ScaledValue::new(-(FRAC_PI_2 * z).sqrt() * s, -z).value() + gauge.phi0_in
    } else {
        -s.ln() + gauge.phi0_out
    }
}

/// Cubic Taylor surrogate of the interior potential about zeta = 1,
/// gauge-fixed like the antiderivative route up to a constant:
///   -A b1 { I_0(1) zeta + I_1(1) (zeta-1)^2/2
///           + [I_0(1) - I_1(1)] (zeta-1)^3/6 }.
pub fn phi_interior_expansion(point: RadialPoint, scale: PodolskyScale) -> Result<f64> {
    let zeta = point.s() / scale.value();
    let coeffs = boundary_coeffs(scale)?;
    let i0_1 = i0(1.0);
    let i1_1 = i1(1.0);
    let d = zeta - 1.0;
    let poly = i0_1 * zeta + 0.5 * i1_1 * d * d + (i0_1 - i1_1) * d * d * d / 6.0;
    Ok(-(coeffs.b1 * (scale.value() * poly)).value())
}

/// True when [`phi_interior_expansion`] is being used beyond |zeta-1| <= 1,
/// where the cubic truncation error grows.
pub fn phi_expansion_in_range(point: RadialPoint, scale: PodolskyScale) -> bool {
    (point.s() / scale.value() - 1.0).abs() <= 1.0
}

/// One beam branch's Podolsky potential at offset s, units
/// sigma R / epsilon_0 (gauge constant omitted; only differences are
/// used). The equal-offset null of [`delta_phi_podolsky`] is exact
/// because both branches evaluate this single function.
fn branch_potential(s: f64, scale: PodolskyScale, method: PotentialMethod) -> Result<f64> {
    let zeta = s / scale.value();
    match method {
        PotentialMethod::Exact => {
            if zeta > PHI_ZETA_MAX {
                return Err(Error::Overflow(format!(
                    "zeta = {zeta} beyond the exact hypergeometric range; \
                     use the expansion or asymptotic method"
                )));
            }
            let ctl = SeriesControl::default();
            let coeffs = boundary_coeffs(scale)?;
            let f = i0_integral(zeta, &ctl)?;
            Ok(-(coeffs.b1 * f * scale.value()).value())
        }
        PotentialMethod::Expansion => phi_interior_expansion(RadialPoint::new(s)?, scale),
        PotentialMethod::Asymptotic => {
            // phi = -sqrt(pi/(2A)) e^{-1/A} S + const
            let z = scale.inverse();
            Ok(ScaledValue::new(-(FRAC_PI_2 * z).sqrt() * s, -z).value())
        }
    }
}

/// Podolsky part of the potential difference between the two beam
/// branches, phi(S2) - phi(S1), in units sigma R / epsilon_0.
/// Identical offsets give exactly zero and swapping them exactly
/// negates the result.
pub fn delta_phi_podolsky(
    geom: &BeamPairGeometry,
    scale: PodolskyScale,
    method: PotentialMethod,
) -> Result<f64> {
    geom.validate()?;
    let phi2 = branch_potential(geom.s2, scale, method)?;
    let phi1 = branch_potential(geom.s1, scale, method)?;
    Ok(phi2 - phi1)
}

/// Electric AB phase shift Delta g = -(q t / hbar) Delta phi, radians.
/// `delta_phi` is the total potential difference in volts (Maxwell
/// offset plus Podolsky part).
pub fn delta_g_electric(geom: &BeamPairGeometry, delta_phi: f64) -> Result<f64> {
    geom.validate()?;
    Ok(-geom.charge * geom.transit_time * delta_phi / HBAR)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scale(a: f64) -> PodolskyScale {
        PodolskyScale::new(a).unwrap()
    }

    fn point(s: f64) -> RadialPoint {
        RadialPoint::new(s).unwrap()
    }

    #[test]
    fn effective_field_values() {
        assert_eq!(e_eff(point(0.5)), 0.0);
        assert_eq!(e_eff(point(1.0)), 1.0);
        assert_eq!(e_eff(point(2.0)), 0.5);
    }

    #[test]
    fn coefficient_signs_small_a() {
        for a in [0.05, 0.1, 0.2] {
            let c = boundary_coeffs(scale(a)).unwrap();
            assert!(c.b1.value() > 0.0, "b1 must be positive at A = {a}");
            assert!(c.b4.mantissa() < 0.0, "b4 must be negative at A = {a}");
        }
    }

    #[test]
    fn interior_suppression_deep_inside() {
        // b1 I_0(0) = b1 <= sqrt(pi/(2A)) e^{-1/A}: Maxwell-limit damping
        let a = 0.1;
        let c = boundary_coeffs(scale(a)).unwrap();
        let bound = (FRAC_PI_2 / a).sqrt() * (-1.0 / a).exp();
        let axis = e_r(point(0.0), scale(a), FieldMethod::Exact).unwrap();
        assert!(
            axis > 0.0 && axis <= bound,
            "axis field {axis} vs bound {bound}"
        );
        assert!((axis - c.b1.value()).abs() <= 1e-18);
    }

    #[test]
    fn exterior_approaches_maxwell() {
        // algebraic tail: S e_r - 1 = A^2/S^2 (1 + ...) for the exact form
        let a = 0.01;
        let v = e_r(point(3.0), scale(a), FieldMethod::Exact).unwrap();
        let dev = 3.0 * v - 1.0;
        let lead = (a / 3.0) * (a / 3.0);
        // next algebraic correction is 9 (A/S)^4, i.e. 1e-4 relative here
        assert!(
            (dev / lead - 1.0).abs() < 2e-4,
            "dev {dev} vs leading {lead}"
        );
        // asymptotic method is exponentially Maxwell instead
        let va = e_r(point(3.0), scale(a), FieldMethod::Asymptotic).unwrap();
        assert!((3.0 * va - 1.0).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_interior_at_axis() {
        let a = 0.05;
        let v = e_r(point(0.0), scale(a), FieldMethod::Asymptotic).unwrap();
        let expect = (FRAC_PI_2 / a).sqrt() * (-1.0 / a).exp();
        assert!((v / expect - 1.0).abs() < 1e-13);
    }

    #[test]
    fn large_ratio_needs_small_a() {
        assert!(matches!(
            e_r(point(0.5), scale(0.3), FieldMethod::LargeRatio),
            Err(Error::InvalidMethod(_))
        ));
        let ok = e_r(point(0.5), scale(0.2), FieldMethod::LargeRatio);
        assert!(ok.is_ok());
    }

    #[test]
    fn phi_gauge_and_range() {
        let sc = scale(0.1);
        let g = PhiGauge {
            phi0_in: 3.25,
            phi0_out: 0.0,
        };
        // zeta = 0: the 1F2 prefactor kills the series, leaving the gauge
        let v = phi(point(0.0), sc, g).unwrap();
        assert_eq!(v, 3.25);
        // beyond the representable horizon the exact path refuses
        let tiny = scale(1e-3);
        assert!(matches!(
            phi(point(0.9), tiny, PhiGauge::default()),
            Err(Error::Overflow(_))
        ));
        assert!(phi_expansion_in_range(point(0.15), sc));
        assert!(!phi_expansion_in_range(point(0.9), sc));
    }

    #[test]
    fn expansion_matches_field_at_anchor() {
        // -d(phi_expansion)/dS at zeta = 1 must equal e_r = b1 I_0(1)
        let sc = scale(0.1);
        let c = boundary_coeffs(sc).unwrap();
        let h = 1e-6;
        let s0 = sc.value(); // zeta = 1
        let hi = phi_interior_expansion(point(s0 + h), sc).unwrap();
        let lo = phi_interior_expansion(point(s0 - h), sc).unwrap();
        let e_fd = -(hi - lo) / (2.0 * h);
        let e_exact = (c.b1 * ScaledValue::from_f64(i0(1.0))).value();
        assert!(
            ((e_fd - e_exact) / e_exact).abs() < 1e-7,
            "FD {e_fd} vs exact {e_exact}"
        );
    }

    #[test]
    fn potential_null_and_antisymmetry() {
        let sc = scale(0.1);
        for method in [
            PotentialMethod::Exact,
            PotentialMethod::Expansion,
            PotentialMethod::Asymptotic,
        ] {
            let same = BeamPairGeometry {
                s1: 0.37,
                s2: 0.37,
                transit_time: 1.0,
                charge: 1.0,
            };
            assert_eq!(delta_phi_podolsky(&same, sc, method).unwrap(), 0.0);
            let fwd = BeamPairGeometry {
                s1: 0.2,
                s2: 0.8,
                transit_time: 1.0,
                charge: 1.0,
            };
            let rev = BeamPairGeometry {
                s1: 0.8,
                s2: 0.2,
                transit_time: 1.0,
                charge: 1.0,
            };
            let f = delta_phi_podolsky(&fwd, sc, method).unwrap();
            let r = delta_phi_podolsky(&rev, sc, method).unwrap();
            assert_eq!(f, -r, "{method:?} not antisymmetric");
            assert!(f != 0.0);
        }
    }

    #[test]
    fn geometry_validation() {
        let sc = scale(0.1);
        let bad = BeamPairGeometry {
            s1: 1.0,
            s2: 0.5,
            transit_time: 1.0,
            charge: 1.0,
        };
        assert!(delta_phi_podolsky(&bad, sc, PotentialMethod::Exact).is_err());
        let bad_t = BeamPairGeometry {
            s1: 0.1,
            s2: 0.5,
            transit_time: 0.0,
            charge: 1.0,
        };
        assert!(delta_g_electric(&bad_t, 1.0).is_err());
    }

    #[test]
    fn phase_shift_linearity() {
        let geom = BeamPairGeometry {
            s1: 0.0,
            s2: 0.5,
            transit_time: 1e-8,
            charge: -crate::constants::ELEMENTARY_CHARGE,
        };
        assert_eq!(delta_g_electric(&geom, 0.0).unwrap(), 0.0);
        let g1 = delta_g_electric(&geom, 1e-6).unwrap();
        let geom2 = BeamPairGeometry {
            transit_time: 2e-8,
            ..geom
        };
        let g2 = delta_g_electric(&geom2, 1e-6).unwrap();
        assert!((g2 / g1 - 2.0).abs() < 1e-15);
        // independent constants arithmetic: e * 1e-8 * 1e-6 / hbar
        let expect = 1.602176634e-19 * 1e-8 * 1e-6 / 1.054571817e-34;
        assert!((g1 / expect - 1.0).abs() < 1e-12);
        assert!(g1 > 0.0); // negative charge, positive delta phi
    }
}
