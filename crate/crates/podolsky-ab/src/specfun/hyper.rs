//! Generalized hypergeometric series 1F2 / 2F3 and the antiderivatives
//! of I_0, K_0 and the Struve tail that the electric potential needs:
//!
//!   int_0^z I_0  = z 1F2(1/2; 1, 3/2; z^2/4)
//!   int_0^z K_0  = (pi/2) z [K_0 L_{-1} + K_1 L_0]
//!   int_0^z L_0  = (z^2/pi) 2F3(1, 1; 3/2, 3/2, 2; z^2/4)
//!
//! `m0_integral` evaluates int_0^z (L_0 - I_0) directly in double-double
//! arithmetic: the two antiderivatives are separately O(exp(z)) while
//! their difference is O(log z), so forming it from the plain series
//! would lose ~0.43 z digits.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::scaled::ScaledValue;
use crate::specfun::bessel::{bessel_k, Scaling};
use crate::specfun::struve::struve_l;
use crate::specfun::SeriesControl;
use std::f64::consts::{FRAC_PI_2, PI};

const PI_DD: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};

/// Where the double-double route for `m0_integral` hands over to the
/// logarithmic continuation (cancellation has eaten ~20 of 31 digits
/// by z = 45).
const M0_INTEGRAL_SWITCH: f64 = 45.0;

/// pFq(a; b; x) for p <= 2, q <= 3, x >= 0, summed to `ctl.rel_tol`
/// with compensated summation. The partial sum is renormalized into the
/// exponent once it exceeds 1e100, so the result is overflow-safe.
pub fn hyp_pfq(num: &[f64], den: &[f64], x: f64, ctl: &SeriesControl) -> Result<ScaledValue> {
    ctl.validate()?;
    if num.len() > 2 || den.len() > 3 {
        return Err(Error::InvalidParameter(format!(
            "pFq supports p <= 2, q <= 3; got p = {}, q = {}",
            num.len(),
            den.len()
        )));
    }
    for &b in den {
        if b <= 0.0 && b == b.floor() {
            return Err(Error::InvalidParameter(format!(
                "denominator parameter {b} is a nonpositive integer"
            )));
        }
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!(
            "pFq series implemented for x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(ScaledValue::ONE);
    }

    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    let mut shift = 0.0f64;
    let mut quiet = 0u32;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        let mut ratio = x / (kf + 1.0);
        for &a in num {
            ratio *= a + kf;
        }
        for &b in den {
            ratio /= b + kf;
        }
        term *= ratio;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= ctl.rel_tol * sum.abs() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(ScaledValue::new(sum, shift));
            }
        } else {
            quiet = 0;
        }
        if sum.abs() > 1e100 {
            let scale = (-100.0f64).exp();
            sum *= scale;
            comp *= scale;
            term *= scale;
            shift += 100.0;
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "pFq({num:?}; {den:?}; {x}) did not converge within {} terms",
        ctl.max_terms
    )))
}

/// int_0^z I_0(t) dt = z 1F2(1/2; 1, 3/2; z^2/4).
pub fn i0_integral(z: f64, ctl: &SeriesControl) -> Result<ScaledValue> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain(format!(
            "i0_integral requires z >= 0, got {z}"
        )));
    }
    let f = hyp_pfq(&[0.5], &[1.0, 1.5], 0.25 * z * z, ctl)?;
    Ok(f * z)
}

/// int_0^z L_0(t) dt = (z^2/pi) 2F3(1, 1; 3/2, 3/2, 2; z^2/4).
pub fn l0_integral(z: f64, ctl: &SeriesControl) -> Result<ScaledValue> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain(format!(
            "l0_integral requires z >= 0, got {z}"
        )));
    }
    let f = hyp_pfq(&[1.0, 1.0], &[1.5, 1.5, 2.0], 0.25 * z * z, ctl)?;
    Ok(f * (z * z / PI))
}

/// int_0^z K_0(t) dt = (pi/2) z [K_0(z) L_{-1}(z) + K_1(z) L_0(z)].
///
/// The products pair a decaying K with a growing L, so they are formed
/// in scaled arithmetic; the result saturates at pi/2 for large z.
pub fn k0_integral(z: f64, ctl: &SeriesControl) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain(format!(
            "k0_integral requires z >= 0, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let k0 = bessel_k(0, z, Scaling::Scaled)?;
    let k1 = bessel_k(1, z, Scaling::Scaled)?;
    let lm1 = struve_l(-1, z, ctl)?;
    let l0 = struve_l(0, z, ctl)?;
    let down = ScaledValue::new(1.0, -z); // restores the exp(-z) of K
    let bracket = (k0 * lm1 + k1 * l0) * down;
    Ok(FRAC_PI_2 * z * bracket.value())
}

/// int_z^infinity K_0(t) dt, exponentially small, returned scaled.
///
/// Splitting L = I + M in the antiderivative and using the Wronskian
/// I_0 K_1 + I_1 K_0 = 1/z turns pi/2 - k0_integral(z) into
///   -(pi/2) z [K_0(z) (M_1(z) + 2/pi) + K_1(z) M_0(z)],
/// which is free of the pi/2 cancellation (the plain difference rounds
/// to zero once z >~ 38 even though exp(z)-sized coefficients can still
/// resurrect the tail).
pub fn k0_integral_tail(z: f64) -> Result<ScaledValue> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain(format!(
            "k0_integral_tail requires z >= 0, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(ScaledValue::from_f64(FRAC_PI_2));
    }
    let k0 = bessel_k(0, z, Scaling::Scaled)?.value(); // e^{+z} K_0
    let k1 = bessel_k(1, z, Scaling::Scaled)?.value();
    let m0 = crate::specfun::struve_minus_bessel(0, z)?;
    let m1 = crate::specfun::struve_minus_bessel(1, z)?;
    let bracket = k0 * (m1 + std::f64::consts::FRAC_2_PI) + k1 * m0;
    Ok(ScaledValue::new(-FRAC_PI_2 * z * bracket, -z))
}

/// int_0^z [L_0(t) - I_0(t)] dt, cancellation-free.
///
/// Double-double series difference up to z = 45; beyond that the
/// integrand is within its asymptotic regime and the integral continues
/// as C - (2/pi) ln z plus an optimally truncated algebraic tail.
pub fn m0_integral(z: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain(format!(
            "m0_integral requires z >= 0, got {z}"
        )));
    }
    if z <= M0_INTEGRAL_SWITCH {
        Ok(m0_integral_dd(z))
    } else {
        let anchor = m0_integral_dd(M0_INTEGRAL_SWITCH);
        let log_part = -std::f64::consts::FRAC_2_PI * (z / M0_INTEGRAL_SWITCH).ln();
        Ok(anchor + log_part + m0_plus_maxwell_tail(M0_INTEGRAL_SWITCH) - m0_plus_maxwell_tail(z))
    }
}

fn m0_integral_dd(z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let half = Dd::from_f64(0.5 * z);
    let q = half.mul(half);
    // int L_0 terms: (z/2)^{2k+2} / ((k+1) Gamma(k+3/2)^2), k = 0 start z^2/pi
    let mut l_term = q.mul(Dd::from_f64(4.0)).div(PI_DD);
    let mut l_sum = l_term;
    // int I_0 terms: z (z/2)^{2k} / ((2k+1) (k!)^2), k = 0 start z
    let mut i_term = Dd::from_f64(z);
    let mut i_sum = i_term;
    for k in 0..10_000 {
        let kf = k as f64;
        let l_div = Dd::from_f64(kf + 2.0)
            .mul(Dd::from_f64(kf + 1.5))
            .mul(Dd::from_f64(kf + 1.5));
        l_term = l_term.mul(q).mul_f64(kf + 1.0).div(l_div);
        l_sum = l_sum.add(l_term);
        let i_div = Dd::from_f64(2.0 * kf + 3.0)
            .mul(Dd::from_f64(kf + 1.0))
            .mul(Dd::from_f64(kf + 1.0));
        i_term = i_term.mul(q).mul_f64(2.0 * kf + 1.0).div(i_div);
        i_sum = i_sum.add(i_term);
        if l_term.hi < 1e-34 * l_sum.hi && i_term.hi < 1e-34 * i_sum.hi {
            break;
        }
    }
    l_sum.sub(i_sum).to_f64()
}

/// int_x^infinity [M_0(t) + 2/(pi t)] dt
///   = -(1/pi^2) sum_{k>=1} Gamma(k+1/2)^2 2^{2k+1} x^{-2k} / (2k),
/// summed to its smallest term (asymptotic, all terms negative).
fn m0_plus_maxwell_tail(x: f64) -> f64 {
    let r = 4.0 / (x * x);
    // g_k = -(1/pi^2) Gamma(k+1/2)^2 2^{2k+1} x^{-2k}; g_1 = -2/(pi x^2)
    let mut g = -2.0 / (PI * x * x);
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let term = g / (2.0 * kf);
        if term.abs() >= prev {
            break;
        }
        sum += term;
        prev = term.abs();
        if prev < 1e-18 * sum.abs() {
            break;
        }
        g *= (kf + 0.5) * (kf + 0.5) * r;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn empty_product_is_one() {
        let v = hyp_pfq(&[0.5], &[1.0, 1.5], 0.0, &ctl()).unwrap();
        assert_eq!(v.value(), 1.0);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(matches!(
            hyp_pfq(&[1.0, 1.0, 1.0], &[1.5], 1.0, &ctl()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            hyp_pfq(&[1.0], &[1.0, 1.0, 1.0, 2.0], 1.0, &ctl()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            hyp_pfq(&[0.5], &[0.0, 1.5], 1.0, &ctl()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            hyp_pfq(&[0.5], &[-2.0, 1.5], 1.0, &ctl()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            hyp_pfq(&[0.5], &[1.0], -1.0, &ctl()),
            Err(Error::Domain(_))
        ));
        let strict = SeriesControl {
            rel_tol: 1e-14,
            max_terms: 2,
        };
        assert!(matches!(
            hyp_pfq(&[0.5], &[1.0, 1.5], 9.0, &strict),
            Err(Error::ConvergenceFailure(_))
        ));
    }

    #[test]
    fn large_argument_reports_exp_shift() {
        // the sum at z = 400 is ~exp(400) ~ 1e173: renormalized, finite
        let v = i0_integral(400.0, &ctl()).unwrap();
        assert!(v.exp_shift() > 100.0);
        assert!(v.value().is_finite());
        // at z = 800 the plain f64 value genuinely overflows, but the
        // scaled representation still carries it
        let w = i0_integral(800.0, &ctl()).unwrap();
        assert!(w.value().is_infinite());
        assert!(w.try_value().is_err());
        assert!(w.ln_abs() > 700.0 && w.ln_abs() < 800.0);
    }

    #[test]
    fn k0_integral_saturates_at_pi_half() {
        let ctl = ctl();
        let near = k0_integral(40.0, &ctl).unwrap();
        assert!((near - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(k0_integral(0.0, &ctl).unwrap(), 0.0);
    }

    #[test]
    fn k0_tail_consistent_with_antiderivative() {
        let ctl = ctl();
        // where the plain difference still has digits, both routes agree
        // the pi/2 subtraction caps the comparison near 1 ulp of pi/2
        for &z in &[0.5, 2.0, 8.0, 20.0] {
            let tail = k0_integral_tail(z).unwrap().value();
            let diff = FRAC_PI_2 - k0_integral(z, &ctl).unwrap();
            assert!(
                (tail - diff).abs() <= 1e-13 * tail.abs() + 2e-15,
                "z={z}: {tail} vs {diff}"
            );
        }
        // beyond f64 cancellation the Wronskian form keeps going
        let far = k0_integral_tail(50.0).unwrap();
        assert!(far.value() > 0.0);
        assert!((far.ln_abs() + 50.0).abs() < 4.0); // ~ exp(-50)
    }

    #[test]
    fn m0_integral_continuation_is_smooth() {
        // both routes live near the switch; they must agree
        let below = m0_integral(M0_INTEGRAL_SWITCH - 1e-9).unwrap();
        let above = m0_integral(M0_INTEGRAL_SWITCH + 1e-9).unwrap();
        assert!((below - above).abs() < 1e-9, "{below} vs {above}");
        // and the continuation must track the dd route where both work
        let dd = m0_integral_dd(44.0);
        let cont = {
            let anchor = m0_integral_dd(M0_INTEGRAL_SWITCH);
            anchor - std::f64::consts::FRAC_2_PI * (44.0f64 / M0_INTEGRAL_SWITCH).ln()
                + m0_plus_maxwell_tail(M0_INTEGRAL_SWITCH)
                - m0_plus_maxwell_tail(44.0)
        };
        assert!(((dd - cont) / dd).abs() < 1e-10, "{dd} vs {cont}");
    }
}
