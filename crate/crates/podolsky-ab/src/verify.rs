//! Runnable self-check suite behind `podolsky-ab verify`.
//!
//! Each check compares an implementation path against an independent
//! route (analytic identity, finite differences, quadrature, or the
//! BVP solver) and records the observed deviation next to its
//! tolerance. Fast level: identities and closed-form cross-checks.
//! Full level adds the boundary-value-problem studies with Richardson
//! extrapolation and grid-convergence orders.

use crate::electric::{self, BeamPairGeometry, FieldMethod, PhiGauge, PotentialMethod, TubeConfig};
use crate::magnetic::{self, PodolskyScale, RadialPoint, SolenoidConfig};
use crate::oracle::{
    self, integrate_field_to_potential, quadrature, richardson_extrapolate, solve_radial_bvp,
    FarBoundary, LeftBoundary, RadialGrid, Spacing,
};
use crate::specfun::{
    bessel_i, bessel_k, hyp_pfq, i0, i0_integral, i1, k0, k0_integral, k1, l0_integral,
    m0_integral, struve_l, struve_minus_bessel, Scaling, SeriesControl, STRUVE_TAIL_SWITCH,
};
use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

/// Suite depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Fast,
    Full,
}

impl VerifyLevel {
    pub fn label(&self) -> &'static str {
        match self {
            VerifyLevel::Fast => "fast",
            VerifyLevel::Full => "full",
        }
    }
}

/// One executed check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    /// Largest acceptable |observed|.
    pub tolerance: f64,
    /// The observed deviation (or deficit for one-sided checks).
    pub observed: f64,
    pub passed: bool,
}

/// Full report of a verify run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn new() -> Self {
        Suite { checks: Vec::new() }
    }

    /// |observed| must be <= tol.
    fn check(&mut self, name: &str, tol: f64, observed: f64) {
        self.checks.push(Check {
            name: name.to_string(),
            tolerance: tol,
            observed,
            passed: observed.abs() <= tol && observed.is_finite(),
        });
    }

    /// Pass/fail on a predicate, recording a measured value for context.
    fn check_that(&mut self, name: &str, tol: f64, observed: f64, passed: bool) {
        self.checks.push(Check {
            name: name.to_string(),
            tolerance: tol,
            observed,
            passed,
        });
    }
}

/// Run the suite. Deterministic: fixed grids, no threading, no clocks.
pub fn run(level: VerifyLevel) -> VerifyReport {
    let mut suite = Suite::new();
    specfun_checks(&mut suite);
    magnetic_checks(&mut suite);
    electric_checks(&mut suite);
    if level == VerifyLevel::Full {
        bvp_checks(&mut suite);
    }
    VerifyReport {
        level,
        checks: suite.checks,
    }
}

fn scale(a: f64) -> PodolskyScale {
    PodolskyScale::new(a).unwrap()
}

fn point(s: f64) -> RadialPoint {
    RadialPoint::new(s).unwrap()
}

fn specfun_checks(suite: &mut Suite) {
    let ctl = SeriesControl::default();

    // Wronskian zeta (I0 K1 + I1 K0) = 1, via scaled products, 200 log points
    let mut worst: f64 = 0.0;
    let (lo, hi) = (0.05f64, 500.0f64);
    for i in 0..200 {
        let z = lo * (hi / lo).powf(i as f64 / 199.0);
        let i0s = bessel_i(0, z, Scaling::Scaled).unwrap().value();
        let i1s = bessel_i(1, z, Scaling::Scaled).unwrap().value();
        let k0s = bessel_k(0, z, Scaling::Scaled).unwrap().value();
        let k1s = bessel_k(1, z, Scaling::Scaled).unwrap().value();
        worst = worst.max((z * (i0s * k1s + i1s * k0s) - 1.0).abs());
    }
    suite.check("wronskian_identity_max_dev", 1e-12, worst);

    // derivative identities by central differences with h-refinement
    let fd_order = |f: &dyn Fn(f64) -> f64, g: &dyn Fn(f64) -> f64, z: f64| -> (f64, f64) {
        let d = |h: f64| ((f(z + h) - f(z - h)) / (2.0 * h) - g(z)).abs();
        let (e1, e2) = (d(1e-3), d(5e-4));
        (e1 / g(z).abs().max(1e-12), (e1 / e2).log2())
    };
    let (dev, order) = fd_order(&|z| z * k1(z), &|z| -z * k0(z), 3.0);
    suite.check("ddz_zk1_equals_minus_zk0_fd_dev", 1e-5, dev);
    suite.check_that(
        "ddz_zk1_fd_order",
        0.4,
        order - 2.0,
        (order - 2.0).abs() < 0.4,
    );
    let (dev, order) = fd_order(&|z| z * i1(z), &|z| z * i0(z), 3.0);
    suite.check("ddz_zi1_equals_zi0_fd_dev", 1e-5, dev);
    suite.check_that(
        "ddz_zi1_fd_order",
        0.4,
        order - 2.0,
        (order - 2.0).abs() < 0.4,
    );
    let ctl2 = ctl;
    let l0f = move |z: f64| struve_l(0, z, &ctl2).unwrap().value();
    let dl0 = move |z: f64| struve_l(1, z, &ctl2).unwrap().value() + FRAC_2_PI;
    let (dev, order) = fd_order(&l0f, &dl0, 2.0);
    suite.check("ddz_l0_equals_l1_plus_2pi_fd_dev", 1e-5, dev);
    suite.check_that(
        "ddz_l0_fd_order",
        0.4,
        order - 2.0,
        (order - 2.0).abs() < 0.4,
    );

    // Struve tail: branch continuity around the series/asymptotic switch
    let mut worst: f64 = 0.0;
    let mut z = STRUVE_TAIL_SWITCH - 1.0;
    while z <= STRUVE_TAIL_SWITCH + 1.0 {
        for order in [0u8, 1] {
            let v = struve_minus_bessel(order, z).unwrap();
            let v_eps = struve_minus_bessel(order, z + 1e-9).unwrap();
            worst = worst.max(((v - v_eps) / v).abs());
        }
        z += 0.25;
    }
    suite.check("struve_tail_branch_continuity", 1e-9, worst);

    // Struve tail against its integral representation
    // M_0(z) = -(2/pi) int_0^{pi/2} exp(-z sin t) dt
    for &z in &[2.0, 10.0, 29.0, 31.0, 80.0] {
        let quad = quadrature(|t| (-z * t.sin()).exp(), 0.0, FRAC_PI_2, 1e-13).unwrap();
        let reference = -FRAC_2_PI * quad.value;
        let got = struve_minus_bessel(0, z).unwrap();
        suite.check(
            &format!("struve_tail_vs_integral_rep_z{z}"),
            1e-11,
            (got - reference) / reference,
        );
    }

    // antiderivative identities at zeta in {1, 2, 4} vs quadrature
    for &z in &[1.0f64, 2.0, 4.0] {
        let qi = quadrature(i0, 0.0, z, 1e-12).unwrap().value;
        let vi = i0_integral(z, &ctl).unwrap().value();
        suite.check(
            &format!("int_i0_hypergeometric_z{z}"),
            1e-10,
            (vi - qi) / qi,
        );

        let qk = quadrature(k0, 1e-14, z, 1e-12).unwrap().value;
        let vk = k0_integral(z, &ctl).unwrap();
        suite.check(
            &format!("int_k0_struve_product_z{z}"),
            1e-10,
            (vk - qk) / qk,
        );

        let ql = quadrature(|t| struve_l(0, t, &ctl).unwrap().value(), 0.0, z, 1e-12)
            .unwrap()
            .value;
        let vl = l0_integral(z, &ctl).unwrap().value();
        suite.check(
            &format!("int_l0_hypergeometric_z{z}"),
            1e-10,
            (vl - ql) / ql,
        );
    }

    // m0_integral against quadrature of the tail's integral representation
    for &z in &[5.0f64, 20.0, 60.0] {
        let q = quadrature(
            |t| -FRAC_2_PI * (1.0 - (-z * t.sin()).exp()) / t.sin(),
            1e-12,
            FRAC_PI_2,
            1e-12,
        )
        .unwrap()
        .value;
        let v = m0_integral(z).unwrap();
        suite.check(&format!("int_m0_vs_quadrature_z{z}"), 1e-9, (v - q) / q);
    }

    // hypergeometric sanity: pFq at 0 is 1
    let one = hyp_pfq(&[0.5], &[1.0, 1.5], 0.0, &ctl).unwrap().value();
    suite.check("hyp_pfq_empty_sum", 0.0, one - 1.0);
}

fn magnetic_checks(suite: &mut Suite) {
    // continuity of b_z and its derivative at the surface
    for &a in &[0.1, 0.2] {
        let sc = scale(a);
        let jump =
            magnetic::b_z_interior(1.0, sc).unwrap() - magnetic::b_z_exterior(1.0, sc).unwrap();
        suite.check(&format!("b_z_continuity_a{a}"), 1e-10, jump);
        let h = 1e-6;
        let din = (3.0 * magnetic::b_z_interior(1.0, sc).unwrap()
            - 4.0 * magnetic::b_z_interior(1.0 - h, sc).unwrap()
            + magnetic::b_z_interior(1.0 - 2.0 * h, sc).unwrap())
            / (2.0 * h);
        let dout = (-3.0 * magnetic::b_z_exterior(1.0, sc).unwrap()
            + 4.0 * magnetic::b_z_exterior(1.0 + h, sc).unwrap()
            - magnetic::b_z_exterior(1.0 + 2.0 * h, sc).unwrap())
            / (2.0 * h);
        suite.check(&format!("b_z_derivative_continuity_a{a}"), 1e-8, din - dout);

        let ajump =
            magnetic::a_phi_interior(1.0, sc).unwrap() - magnetic::a_phi_exterior(1.0, sc).unwrap();
        suite.check(&format!("a_phi_continuity_a{a}"), 1e-10, ajump);
    }

    // curl identity (1/S) d(S a_phi)/dS = b_z by central differences
    for &(a, s) in &[(0.1, 0.6), (0.1, 1.7), (0.2, 0.4)] {
        let sc = scale(a);
        let f = |x: f64| x * magnetic::a_phi(point(x), sc).unwrap();
        let h = 1e-4;
        let curl = (f(s + h) - f(s - h)) / (2.0 * h * s);
        let b = magnetic::b_z(point(s), sc).unwrap();
        suite.check(&format!("curl_a_phi_equals_b_z_a{a}_s{s}"), 1e-6, curl - b);
    }

    // Maxwell limits at A = 0.01
    let sc = scale(0.01);
    suite.check(
        "maxwell_limit_b_z_inside",
        1e-12,
        magnetic::b_z(point(0.5), sc).unwrap() - 1.0,
    );
    suite.check(
        "maxwell_limit_b_z_outside",
        1e-12,
        magnetic::b_z(point(2.0), sc).unwrap(),
    );
    suite.check(
        "maxwell_limit_a_phi_outside",
        1e-12,
        magnetic::a_phi(point(3.0), sc).unwrap() - 0.5 / 3.0,
    );

    // surface half-value
    suite.check(
        "surface_half_value",
        0.01,
        magnetic::b_z(point(1.0), sc).unwrap() - 0.5,
    );

    // approximate field agrees with exact away from the axis
    let sc = scale(0.02);
    suite.check(
        "b_z_approx_vs_exact",
        1e-9,
        magnetic::b_z_approx(point(0.5), sc) - magnetic::b_z(point(0.5), sc).unwrap(),
    );

    // delta g: maximum at the surface, strictly decreasing beyond
    let sc = scale(0.05);
    let (_, dg_surface) = magnetic::delta_g_ratio(point(1.0), sc).unwrap();
    suite.check("delta_g_max_equals_a", 0.0, dg_surface - 0.05);
    let mut monotone = true;
    let mut prev = dg_surface;
    for i in 1..=60 {
        let s = 1.0 + 3.0 * i as f64 / 60.0;
        let (_, dg) = magnetic::delta_g_ratio(point(s), sc).unwrap();
        if dg >= prev {
            monotone = false;
        }
        prev = dg;
    }
    suite.check_that("delta_g_strictly_decreasing", 0.0, 0.0, monotone);

    // loop-integral route vs formula route, within the asymptotic bound
    for &s in &[1.0, 1.2, 2.0] {
        let lp = oracle::loop_phase_numeric(|x| magnetic::a_phi(point(x), sc).unwrap(), s).unwrap();
        let ratio_loop = lp.shortcut / PI;
        let (ratio, _) = magnetic::delta_g_ratio(point(s), sc).unwrap();
        let bound = (-(s - 1.0) / 0.05).exp() * 10.0 * 0.05 * 0.05;
        suite.check_that(
            &format!("loop_phase_vs_formula_s{s}"),
            bound,
            ratio_loop - ratio,
            (ratio_loop - ratio).abs() <= bound,
        );
        suite.check(
            &format!("loop_azimuthal_sum_consistency_s{s}"),
            1e-12,
            (lp.azimuthal_sum - lp.shortcut) / lp.shortcut,
        );
    }

    // flyby forms
    let sc = scale(0.01);
    let fly = magnetic::delta_g_flyby(sc, 0.0).unwrap();
    suite.check("flyby_eps0_equals_a", 0.0, fly.first_order - 0.01);
    let mut worst: f64 = 0.0;
    for i in 0..=50 {
        let eps = i as f64 / 50.0;
        let f = magnetic::delta_g_flyby(sc, eps).unwrap();
        worst = worst.max((f.first_order - f.with_radius_term).abs());
    }
    suite.check("flyby_radius_term_negligible", 0.02 * 0.01, worst);

    // SI round trip: normalized path re-scaled equals direct formula
    let cfg = SolenoidConfig {
        radius: 1e-2,
        turns_per_metre: 1e4,
        current: 1.0,
        podolsky_length: 1e-3,
    };
    let q = -crate::constants::ELEMENTARY_CHARGE;
    let res = magnetic::delta_g_magnetic_si(&cfg, q, 1.5e-2).unwrap();
    let direct_maxwell =
        q * crate::constants::MU_0 * 1e4 * 1.0 * PI * 1e-4 / crate::constants::HBAR;
    suite.check(
        "si_maxwell_phase_round_trip",
        1e-12,
        res.maxwell_phase / direct_maxwell - 1.0,
    );
    let a = 1e-3 / 1e-2;
    let dg_direct = a * 1.5f64.sqrt() * (-(1.5 - 1.0) / a).exp();
    suite.check(
        "si_correction_round_trip",
        1e-12,
        (res.delta_g_correction - dg_direct) / dg_direct,
    );
}

fn electric_checks(suite: &mut Suite) {
    let ctl = SeriesControl::default();

    // boundary coefficients vs an independent 2x2 solve (numerical
    // determinant instead of the analytic Wronskian)
    for &a in &[0.05, 0.1, 0.2] {
        let sc = scale(a);
        let z = 1.0 / a;
        let c = electric::boundary_coeffs(sc).unwrap();
        let i0s = bessel_i(0, z, Scaling::Scaled).unwrap().value();
        let i1s = bessel_i(1, z, Scaling::Scaled).unwrap().value();
        let k0s = bessel_k(0, z, Scaling::Scaled).unwrap().value();
        let k1s = bessel_k(1, z, Scaling::Scaled).unwrap().value();
        let m0 = struve_minus_bessel(0, z).unwrap();
        let m1p = struve_minus_bessel(1, z).unwrap() + FRAC_2_PI;
        // [ i0s  -k0s e^{-2z} ] [b1 e^{+z}]   [ -(pi/2) z m0  ]
        // [ i1s   k1s e^{-2z} ] [b4 e^{-z}]   [ -(pi/2) z m1p ]
        // solved via Cramer with the numerically computed determinant
        let det = i0s * k1s + i1s * k0s; // = e^0 * (I0 K1 + I1 K0), ~ 1/z
        let r1 = -FRAC_PI_2 * z * m0;
        let r2 = -FRAC_PI_2 * z * m1p;
        let b1_solve = (r1 * k1s + r2 * k0s) / det; // times e^{-z} below
        let b4_solve = (i0s * r2 - i1s * r1) / det; // times e^{+z}
        let b1_rel = c.b1.mantissa() * (c.b1.exp_shift() + z).exp() / b1_solve - 1.0;
        let b4_rel = c.b4.mantissa() * (c.b4.exp_shift() - z).exp() / b4_solve - 1.0;
        suite.check(&format!("b1_vs_linear_solve_a{a}"), 1e-10, b1_rel);
        suite.check(&format!("b4_vs_linear_solve_a{a}"), 1e-10, b4_rel);
        suite.check_that(
            &format!("b1_positive_a{a}"),
            0.0,
            c.b1.value(),
            c.b1.value() > 0.0,
        );
    }

    // field and derivative continuity at the interface
    for &a in &[0.1, 0.2] {
        let sc = scale(a);
        let h = 1e-6;
        let ein = |s: f64| {
            let c = electric::boundary_coeffs(sc).unwrap();
            let zeta = s / a;
            (c.b1
                * bessel_i(0, zeta, Scaling::Scaled).unwrap()
                * crate::scaled::ScaledValue::new(1.0, zeta))
            .value()
        };
        let eout = |s: f64| electric::e_r(point(s.max(1.0)), sc, FieldMethod::Exact).unwrap();
        suite.check(&format!("e_r_continuity_a{a}"), 1e-8, ein(1.0) - eout(1.0));
        let din = (3.0 * ein(1.0) - 4.0 * ein(1.0 - h) + ein(1.0 - 2.0 * h)) / (2.0 * h);
        let dout = (-3.0 * eout(1.0) + 4.0 * eout(1.0 + h) - eout(1.0 + 2.0 * h)) / (2.0 * h);
        suite.check(&format!("e_r_derivative_continuity_a{a}"), 1e-8, din - dout);
    }

    // exact vs large-ratio organization of the same closed form
    let sc = scale(0.1);
    for &s in &[0.3, 0.7, 1.5, 3.0] {
        let exact = electric::e_r(point(s), sc, FieldMethod::Exact).unwrap();
        let lr = electric::e_r(point(s), sc, FieldMethod::LargeRatio).unwrap();
        suite.check(
            &format!("e_r_exact_vs_large_ratio_s{s}"),
            1e-8,
            (lr - exact) / exact,
        );
    }

    // Maxwell limits: interior exponentially damped, exterior 1/S with
    // an exp(-(S-1)/A) envelope (asymptotic branch)
    let a = 0.1;
    let sc = scale(a);
    let bound = (FRAC_PI_2 / a).sqrt() * (-1.0 / a).exp();
    let axis = electric::e_r(point(0.0), sc, FieldMethod::Exact).unwrap();
    suite.check_that(
        "interior_axis_damping_bound",
        bound,
        axis,
        axis > 0.0 && axis <= bound,
    );
    let mut fitted_c: f64 = 0.0;
    for &s in &[2.0, 2.5, 3.0, 3.5] {
        let v = electric::e_r(point(s), sc, FieldMethod::Asymptotic).unwrap();
        fitted_c = fitted_c.max((s * v - 1.0).abs() / (-(s - 1.0) / a).exp());
    }
    suite.check_that(
        "exterior_maxwell_envelope_c_below_1",
        1.0,
        fitted_c,
        fitted_c < 1.0,
    );

    // gradient consistency: -dphi/dS = e_r on both sides (exact branch)
    let gauge = PhiGauge::default();
    for &s in &[0.3, 0.6, 1.4, 2.2] {
        let h = 1e-4;
        let dphi = (electric::phi(point(s + h), sc, gauge).unwrap()
            - electric::phi(point(s - h), sc, gauge).unwrap())
            / (2.0 * h);
        let e = electric::e_r(point(s), sc, FieldMethod::Exact).unwrap();
        suite.check(&format!("minus_grad_phi_equals_e_r_s{s}"), 1e-6, -dphi - e);
    }

    // equal-offset null, antisymmetry, quadrature cross-check
    let same = BeamPairGeometry {
        s1: 0.4,
        s2: 0.4,
        transit_time: 1.0,
        charge: 1.0,
    };
    suite.check(
        "delta_phi_equal_offset_null",
        0.0,
        electric::delta_phi_podolsky(&same, sc, PotentialMethod::Exact).unwrap(),
    );
    let fwd = BeamPairGeometry {
        s1: 0.0,
        s2: 0.5,
        transit_time: 1.0,
        charge: 1.0,
    };
    let rev = BeamPairGeometry {
        s1: 0.5,
        s2: 0.0,
        transit_time: 1.0,
        charge: 1.0,
    };
    let f = electric::delta_phi_podolsky(&fwd, sc, PotentialMethod::Exact).unwrap();
    let r = electric::delta_phi_podolsky(&rev, sc, PotentialMethod::Exact).unwrap();
    suite.check(
        "delta_phi_antisymmetry",
        1e-15,
        (f + r) / f.abs().max(1e-300),
    );
    let quad_phi = quadrature(
        |s| electric::e_r(point(s), sc, FieldMethod::Exact).unwrap(),
        0.0,
        0.5,
        1e-14,
    )
    .unwrap();
    suite.check(
        "delta_phi_vs_quadrature",
        1e-6,
        (f - (-quad_phi.value)) / f.abs(),
    );

    // interior expansion reproduces the exact field at its anchor
    let c = electric::boundary_coeffs(sc).unwrap();
    let h = 1e-6;
    let s0 = a; // zeta = 1
    let dfd = -(electric::phi_interior_expansion(point(s0 + h), sc).unwrap()
        - electric::phi_interior_expansion(point(s0 - h), sc).unwrap())
        / (2.0 * h);
    let e_anchor = (c.b1 * crate::scaled::ScaledValue::from_f64(i0(1.0))).value();
    suite.check(
        "phi_expansion_gradient_at_anchor",
        1e-6,
        (dfd - e_anchor) / e_anchor,
    );

    // electric phase scaling: doubling t doubles the shift
    let tube = TubeConfig {
        radius: 0.1,
        sigma: 1e-6,
        podolsky_length: 0.01,
    };
    let geom = BeamPairGeometry {
        s1: 0.0,
        s2: 0.5,
        transit_time: 1e-8,
        charge: -crate::constants::ELEMENTARY_CHARGE,
    };
    let dphi_volts =
        electric::delta_phi_podolsky(&geom, tube.scale().unwrap(), PotentialMethod::Exact).unwrap()
            * tube.potential_unit();
    let g1 = electric::delta_g_electric(&geom, dphi_volts).unwrap();
    let geom2 = BeamPairGeometry {
        transit_time: 2e-8,
        ..geom
    };
    let g2 = electric::delta_g_electric(&geom2, dphi_volts).unwrap();
    suite.check("delta_g_linear_in_time", 1e-15, g2 / g1 - 2.0);

    let _ = ctl;
}

fn bvp_checks(suite: &mut Suite) {
    // magnetic: closed form vs BVP with Richardson extrapolation
    for &a in &[0.1, 0.2] {
        let sc = scale(a);
        let z = 1.0 / a;
        let z_far = (z + 20.0).max(5.0 * z);
        let grid = RadialGrid::with_interface(z, z_far, 4097, Spacing::Uniform).unwrap();
        let source = move |zeta: f64| if zeta <= z { 1.0 } else { 0.0 };
        let coarse = solve_radial_bvp(
            source,
            &grid,
            LeftBoundary::AxisRegular,
            FarBoundary::DirichletZero,
        )
        .unwrap();
        let fine = solve_radial_bvp(
            source,
            &grid.refined(),
            LeftBoundary::AxisRegular,
            FarBoundary::DirichletZero,
        )
        .unwrap();
        let best = richardson_extrapolate(&coarse, &fine).unwrap();
        let mut sup: f64 = 0.0;
        let mut sup_err: f64 = 0.0;
        let mut sup_err_coarse: f64 = 0.0;
        for (i, &zeta) in best.grid.nodes().iter().enumerate() {
            let s = zeta * a;
            let exact = magnetic::b_z(point(s), sc).unwrap();
            sup = sup.max(exact.abs());
            sup_err = sup_err.max((best.values[i] - exact).abs());
            sup_err_coarse = sup_err_coarse.max((coarse.values[i] - exact).abs());
        }
        suite.check(&format!("bvp_b_z_sup_error_a{a}"), 1e-6, sup_err / sup);
        let order = (sup_err_coarse
            / fine
                .grid
                .nodes()
                .iter()
                .enumerate()
                .map(|(i, &zeta)| {
                    (fine.values[i] - magnetic::b_z(point(zeta * a), sc).unwrap()).abs()
                })
                .fold(0.0f64, f64::max))
        .log2();
        suite.check_that(
            &format!("bvp_b_z_convergence_order_a{a}"),
            0.2,
            order - 2.0,
            (1.9..=2.1).contains(&order),
        );
    }

    // electric: inhomogeneous exterior source, Robin far boundary fed by
    // the particular solution's tail
    for &a in &[0.1, 0.2] {
        let sc = scale(a);
        let z = 1.0 / a;
        let z_far = (z + 20.0).max(5.0 * z);
        let grid = RadialGrid::with_interface(z, z_far, 4097, Spacing::Uniform).unwrap();
        let source = move |zeta: f64| if zeta > z { z / zeta } else { 0.0 };
        let m0_far = struve_minus_bessel(0, z_far).unwrap();
        let m1_far = struve_minus_bessel(1, z_far).unwrap();
        let p = -FRAC_PI_2 * z * m0_far;
        let dp = -FRAC_PI_2 * z * (m1_far + FRAC_2_PI);
        let far = FarBoundary::RobinDecay { rhs: p + dp };
        let coarse = solve_radial_bvp(source, &grid, LeftBoundary::AxisRegular, far).unwrap();
        let fine =
            solve_radial_bvp(source, &grid.refined(), LeftBoundary::AxisRegular, far).unwrap();
        let best = richardson_extrapolate(&coarse, &fine).unwrap();
        let mut sup: f64 = 0.0;
        let mut sup_err: f64 = 0.0;
        for (i, &zeta) in best.grid.nodes().iter().enumerate() {
            let s = zeta * a;
            let exact = electric::e_r(point(s), sc, FieldMethod::Exact).unwrap();
            sup = sup.max(exact.abs());
            sup_err = sup_err.max((best.values[i] - exact).abs());
        }
        suite.check(&format!("bvp_e_r_sup_error_a{a}"), 1e-6, sup_err / sup);
    }

    // potential reconstruction from the BVP field matches closed-form phi
    let a = 0.1;
    let sc = scale(a);
    let z = 10.0;
    let grid = RadialGrid::uniform(z, 3.0 * z, 2049).unwrap();
    let field: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&zeta| a * electric::e_r(point(zeta * a), sc, FieldMethod::Exact).unwrap())
        .collect();
    let anchor = electric::phi(point(1.0), sc, PhiGauge::default()).unwrap();
    let phi_num = integrate_field_to_potential(&grid, &field, z, anchor).unwrap();
    let mut worst: f64 = 0.0;
    for (i, &zeta) in grid.nodes().iter().enumerate() {
        let exact = electric::phi(point(zeta * a), sc, PhiGauge::default()).unwrap();
        worst = worst.max((phi_num[i] - exact).abs());
    }
    suite.check("potential_reconstruction_vs_phi", 1e-6, worst);

    // quadrature error estimates are conservative on the antiderivative identities
    let ctl = SeriesControl::default();
    for &zj in &[1.0f64, 2.0, 4.0] {
        let q = quadrature(i0, 0.0, zj, 1e-10).unwrap();
        let truth = i0_integral(zj, &ctl).unwrap().value();
        suite.check_that(
            &format!("quadrature_estimate_conservative_z{zj}"),
            q.error_estimate,
            (q.value - truth).abs(),
            (q.value - truth).abs() <= q.error_estimate.max(1e-15),
        );
    }
}
