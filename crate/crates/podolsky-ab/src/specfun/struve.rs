//! Modified Struve functions L_{-1}, L_0, L_1 and the tail
//! `M_nu(z) = L_nu(z) - I_nu(z)`.
//!
//! The tail is the quantity the electric-field closed forms actually
//! need: it is O(1/z) while L and I are separately O(exp(z)/sqrt(z)),
//! so forming it by naive subtraction throws away ~0.43 z digits. Below
//! [`STRUVE_TAIL_SWITCH`] the difference is accumulated in double-double
//! arithmetic; above it the divergent asymptotic expansion
//! (DLMF 11.6.2) is summed to its smallest term.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::scaled::ScaledValue;
use crate::specfun::SeriesControl;
use std::f64::consts::PI;

/// Crossover between the double-double series difference and the
/// optimally truncated asymptotic tail. At z = 30 the series route
/// retains ~17 digits and the truncated tail is good to ~5e-12, so the
/// two branches overlap comfortably.
pub const STRUVE_TAIL_SWITCH: f64 = 30.0;

/// pi as a double-double (hi = f64 pi, lo = next correction).
const PI_DD: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};

/// Modified Struve function L_nu(z) for nu in {-1, 0, 1} by its
/// all-positive power series (DLMF 11.2.2 for L; terms carry no sign
/// changes, so plain compensated summation is exact to rounding).
///
/// Returned as a [`ScaledValue`]; the series is renormalized in-loop,
/// so arguments beyond the exp overflow horizon still work.
pub fn struve_l(order: i8, z: f64, ctl: &SeriesControl) -> Result<ScaledValue> {
    ctl.validate()?;
    if !matches!(order, -1 | 0 | 1) {
        return Err(Error::InvalidParameter(format!(
            "L_nu supports nu in {{-1,0,1}}, got {order}"
        )));
    }
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain(format!("L_nu requires z >= 0, got {z}")));
    }
    // leading term (z/2)^(nu+1) / (Gamma(3/2) Gamma(nu+3/2))
    let mut term = match order {
        -1 => 2.0 / PI,
        0 => 2.0 * z / PI,
        _ => 2.0 * z * z / (3.0 * PI),
    };
    if z == 0.0 {
        // (z/2)^{nu+1} prefactor kills everything except nu = -1
        return Ok(if order == -1 {
            ScaledValue::from_f64(2.0 / PI)
        } else {
            ScaledValue::ZERO
        });
    }
    let q = 0.25 * z * z;
    let nu = order as f64;
    let mut sum = term;
    let mut comp = 0.0;
    let mut shift = 0.0;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        term *= q / ((kf + 1.5) * (kf + nu + 1.5));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term <= ctl.rel_tol * sum {
            return Ok(ScaledValue::new(sum, shift));
        }
        if sum > 1e250 {
            let scale = (-250.0f64).exp();
            sum *= scale;
            comp *= scale;
            term *= scale;
            shift += 250.0;
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "L_{order}({z}) did not reach rel_tol {} within {} terms",
        ctl.rel_tol, ctl.max_terms
    )))
}

/// `M_nu(z) = L_nu(z) - I_nu(z)` for nu in {0, 1}, evaluated without
/// catastrophic cancellation. For integer nu this equals the paper
/// S_nu tail of DLMF 11.6.2 since I_{-nu} = I_nu.
pub fn struve_minus_bessel(order: u8, z: f64) -> Result<f64> {
    if order > 1 {
        return Err(Error::InvalidParameter(format!(
            "M_nu supports nu in {{0,1}}, got {order}"
        )));
    }
    if z.is_nan() || z <= 0.0 {
        return Err(Error::Domain(format!("M_nu requires z > 0, got {z}")));
    }
    if z < STRUVE_TAIL_SWITCH {
        Ok(tail_series_dd(order, z))
    } else {
        Ok(tail_asymptotic(order, z))
    }
}

/// Double-double series difference;|M| / max(L, I) ~ exp(-z) z^{1/2},
/// so the ~31 working digits keep >= 15 significant digits up to z ~ 40.
fn tail_series_dd(order: u8, z: f64) -> f64 {
    let half = Dd::from_f64(0.5 * z);
    let q = half.mul(half); // (z/2)^2, exact double-double
    let nu = order as f64;

    // Struve series: (z/2)^{nu+1} sum q^k / (Gamma(k+3/2) Gamma(k+nu+3/2))
    let mut l_term = match order {
        0 => half.mul(Dd::from_f64(4.0).div(PI_DD)), // (z/2)/Gamma(3/2)^2
        _ => q.mul(Dd::from_f64(8.0).div(PI_DD.mul_f64(3.0))), // (z/2)^2 * 8/(3 pi)
    };
    let mut l_sum = l_term;
    // Bessel series: (z/2)^nu sum q^k / (k! (k+nu)!)
    let mut i_term = if order == 0 { Dd::ONE } else { half };
    let mut i_sum = i_term;

    for k in 0..10_000 {
        let kf = k as f64;
        let l_div = Dd::from_f64(kf + 1.5).mul(Dd::from_f64(kf + nu + 1.5));
        l_term = l_term.mul(q).div(l_div);
        l_sum = l_sum.add(l_term);
        let i_div = Dd::from_f64(kf + 1.0).mul(Dd::from_f64(kf + 1.0 + nu));
        i_term = i_term.mul(q).div(i_div);
        i_sum = i_sum.add(i_term);
        if l_term.hi < 1e-34 * l_sum.hi && i_term.hi < 1e-34 * i_sum.hi {
            break;
        }
    }
    l_sum.sub(i_sum).to_f64()
}

/// DLMF 11.6.2 with I_{-nu} = I_nu folded in:
///   M_0(z) = -(1/pi^2) sum_k Gamma(k+1/2)^2 (2/z)^{2k+1}
///   M_1(z) = -2/pi + (1/pi^2) sum_{k>=1} Gamma(k+1/2) Gamma(k-1/2) (2/z)^{2k}
/// Divergent; summed to the smallest term, leaving ~exp(-z) absolute error.
fn tail_asymptotic(order: u8, z: f64) -> f64 {
    let r = 4.0 / (z * z);
    if order == 0 {
        let mut term = -2.0 / (PI * z);
        let mut sum = term;
        let mut prev = term.abs();
        for k in 0..200 {
            let kf = k as f64;
            term *= (kf + 0.5) * (kf + 0.5) * r;
            if term.abs() >= prev {
                break;
            }
            sum += term;
            prev = term.abs();
            if prev < 1e-17 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        let mut sum = -2.0 / PI;
        let mut term = 2.0 / (PI * z * z); // k = 1 entry
        let mut prev = f64::INFINITY;
        for k in 1..200 {
            if term.abs() >= prev {
                break;
            }
            sum += term;
            prev = term.abs();
            if prev < 1e-17 * sum.abs() {
                break;
            }
            let kf = k as f64;
            term *= (kf + 0.5) * (kf - 0.5) * r;
        }
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn struve_at_origin() {
        assert_eq!(struve_l(1, 0.0, &ctl()).unwrap().value(), 0.0);
        assert_eq!(struve_l(0, 0.0, &ctl()).unwrap().value(), 0.0);
        let lm1 = struve_l(-1, 0.0, &ctl()).unwrap().value();
        assert!((lm1 - 2.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            struve_l(2, 1.0, &ctl()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(struve_l(0, -1.0, &ctl()), Err(Error::Domain(_))));
        assert!(matches!(
            struve_minus_bessel(3, 1.0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(struve_minus_bessel(0, 0.0), Err(Error::Domain(_))));
        let strict = SeriesControl {
            rel_tol: 1e-14,
            max_terms: 3,
        };
        assert!(matches!(
            struve_l(0, 20.0, &strict),
            Err(Error::ConvergenceFailure(_))
        ));
        let bad = SeriesControl {
            rel_tol: -1.0,
            max_terms: 10,
        };
        assert!(matches!(
            struve_l(0, 1.0, &bad),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn recurrence_l_minus_one() {
        // L_{-1}(z) = L_1(z) + 2/pi (DLMF 11.4.25 with nu = 0)
        for &z in &[0.3, 1.0, 4.0, 11.0] {
            let lm1 = struve_l(-1, z, &ctl()).unwrap().value();
            let l1 = struve_l(1, z, &ctl()).unwrap().value();
            assert!(
                ((lm1 - l1 - 2.0 / PI) / lm1).abs() < 1e-13,
                "recurrence fails at z = {z}"
            );
        }
    }

    #[test]
    fn tail_small_z_matches_definition() {
        // below the switch the definition L - I is directly computable
        for &z in &[0.5, 2.0, 5.0] {
            let m0 = struve_minus_bessel(0, z).unwrap();
            let direct = struve_l(0, z, &ctl()).unwrap().value() - crate::specfun::bessel::i0(z);
            assert!((m0 - direct).abs() <= 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn branch_continuity_around_switch() {
        // the two routes must agree near the crossover
        let lo = STRUVE_TAIL_SWITCH - 1.0;
        let hi = STRUVE_TAIL_SWITCH + 1.0;
        let mut z = lo;
        while z <= hi {
            for order in [0u8, 1u8] {
                let series = tail_series_dd(order, z);
                let asym = tail_asymptotic(order, z);
                assert!(
                    ((series - asym) / series).abs() < 1e-9,
                    "branch mismatch: nu={order} z={z}: {series} vs {asym}"
                );
            }
            z += 0.125;
        }
    }

    #[test]
    fn deterministic_for_fixed_control() {
        let a = struve_l(0, 7.3, &ctl()).unwrap();
        let b = struve_l(0, 7.3, &ctl()).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            struve_minus_bessel(1, 12.0).unwrap(),
            struve_minus_bessel(1, 12.0).unwrap()
        );
    }
}
