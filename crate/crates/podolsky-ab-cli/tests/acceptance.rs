//! Acceptance suite: one pass/fail line per criterion, nonzero exit on
//! any failure. Each criterion pins its tolerance in code; nothing is
//! calibrated at run time.
//!
//! Run with `cargo test -p podolsky-ab-cli --test acceptance` (the
//! target uses its own harness so the lines below always print).

use podolsky_ab::electric::{self, BeamPairGeometry, FieldMethod, PhiGauge, PotentialMethod};
use podolsky_ab::magnetic::{self, PodolskyScale, RadialPoint};
use podolsky_ab::oracle::{
    loop_phase_numeric, quadrature, richardson_extrapolate, solve_radial_bvp, FarBoundary,
    LeftBoundary, RadialGrid, Spacing,
};
use podolsky_ab::specfun::{
    bessel_i, bessel_k, i0, i0_integral, k0, k0_integral, l0_integral, struve_l,
    struve_minus_bessel, Scaling, SeriesControl,
};
use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};
use std::process::Command;
use std::time::Instant;

struct Gate {
    failures: usize,
    index: usize,
}

impl Gate {
    fn new() -> Gate {
        Gate {
            failures: 0,
            index: 0,
        }
    }

    fn report(&mut self, name: &str, passed: bool, detail: String) {
        self.index += 1;
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!("criterion {:02} {verdict} {name}: {detail}", self.index);
        if !passed {
            self.failures += 1;
        }
    }
}

fn scale(a: f64) -> PodolskyScale {
    PodolskyScale::new(a).unwrap()
}

fn point(s: f64) -> RadialPoint {
    RadialPoint::new(s).unwrap()
}

fn main() {
    let mut gate = Gate::new();
    criterion_01_wronskian(&mut gate);
    criterion_02_bvp_magnetic(&mut gate);
    criterion_03_bvp_electric(&mut gate);
    criterion_04_interface_continuity(&mut gate);
    criterion_05_curl_gradient(&mut gate);
    criterion_06_maxwell_limits(&mut gate);
    criterion_07_surface_half_value(&mut gate);
    criterion_08_magnetic_phase(&mut gate);
    criterion_09_flyby(&mut gate);
    criterion_10_electric_phase_null(&mut gate);
    criterion_11_antiderivative_identities(&mut gate);
    criterion_12_figure_ordering(&mut gate);
    criterion_13_verify_runtime_determinism(&mut gate);

    if gate.failures == 0 {
        println!("acceptance: all {} criteria passed", gate.index);
    } else {
        println!(
            "acceptance: {} of {} criteria FAILED",
            gate.failures, gate.index
        );
        std::process::exit(1);
    }
}

fn criterion_01_wronskian(gate: &mut Gate) {
    let start = Instant::now();
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
    let dt = start.elapsed().as_secs_f64();
    gate.report(
        "wronskian identity on [0.05, 500]",
        worst < 1e-12 && dt < 1.0,
        format!("max |zeta(I0 K1 + I1 K0) - 1| = {worst:.3e} (tol 1e-12), {dt:.3} s (< 1 s)"),
    );
}

/// Shared driver: solve the screened radial equation on ~4096 nodes,
/// refine once, Richardson-extrapolate, and compare sup-norms.
fn bvp_sup_error(
    a: f64,
    source: &dyn Fn(f64) -> f64,
    far: FarBoundary,
    reference: &dyn Fn(f64) -> f64,
) -> f64 {
    let z = 1.0 / a;
    let z_far = (z + 20.0).max(5.0 * z);
    let grid = RadialGrid::with_interface(z, z_far, 4096, Spacing::Uniform).unwrap();
    let coarse = solve_radial_bvp(source, &grid, LeftBoundary::AxisRegular, far).unwrap();
    let fine = solve_radial_bvp(source, &grid.refined(), LeftBoundary::AxisRegular, far).unwrap();
    let best = richardson_extrapolate(&coarse, &fine).unwrap();
    let mut sup = 0.0f64;
    let mut err = 0.0f64;
    for (i, &zeta) in best.grid.nodes().iter().enumerate() {
        let exact = reference(zeta);
        sup = sup.max(exact.abs());
        err = err.max((best.values[i] - exact).abs());
    }
    err / sup
}

fn criterion_02_bvp_magnetic(gate: &mut Gate) {
    let start = Instant::now();
    let mut detail = String::new();
    let mut ok = true;
    for &a in &[0.1, 0.2] {
        let sc = scale(a);
        let z = 1.0 / a;
        let rel = bvp_sup_error(
            a,
            &move |zeta| if zeta <= z { 1.0 } else { 0.0 },
            FarBoundary::DirichletZero,
            &move |zeta| magnetic::b_z(point(zeta * a), sc).unwrap(),
        );
        ok &= rel <= 1e-6;
        detail.push_str(&format!("A={a}: sup rel err {rel:.3e}; "));
    }
    let dt = start.elapsed().as_secs_f64();
    ok &= dt < 30.0;
    gate.report(
        "closed-form b_z vs BVP oracle (4096 nodes + Richardson)",
        ok,
        format!("{detail}tol 1e-6, {dt:.2} s (< 30 s)"),
    );
}

fn criterion_03_bvp_electric(gate: &mut Gate) {
    let start = Instant::now();
    let mut detail = String::new();
    let mut ok = true;
    for &a in &[0.1, 0.2] {
        let sc = scale(a);
        let z = 1.0 / a;
        let z_far = (z + 20.0).max(5.0 * z);
        let m0_far = struve_minus_bessel(0, z_far).unwrap();
        let m1_far = struve_minus_bessel(1, z_far).unwrap();
        let p = -FRAC_PI_2 * z * m0_far;
        let dp = -FRAC_PI_2 * z * (m1_far + FRAC_2_PI);
        let rel = bvp_sup_error(
            a,
            &move |zeta| if zeta > z { z / zeta } else { 0.0 },
            FarBoundary::RobinDecay { rhs: p + dp },
            &move |zeta| electric::e_r(point(zeta * a), sc, FieldMethod::Exact).unwrap(),
        );
        ok &= rel <= 1e-6;
        detail.push_str(&format!("A={a}: sup rel err {rel:.3e}; "));
    }
    // exact vs large_ratio organization at A = 0.1
    let sc = scale(0.1);
    let mut branch_worst: f64 = 0.0;
    for &s in &[0.3, 0.7, 1.5, 3.0] {
        let exact = electric::e_r(point(s), sc, FieldMethod::Exact).unwrap();
        let lr = electric::e_r(point(s), sc, FieldMethod::LargeRatio).unwrap();
        branch_worst = branch_worst.max(((lr - exact) / exact).abs());
    }
    ok &= branch_worst <= 1e-8;
    let dt = start.elapsed().as_secs_f64();
    ok &= dt < 30.0;
    gate.report(
        "closed-form e_r vs BVP oracle + branch agreement",
        ok,
        format!("{detail}exact/large_ratio max rel dev {branch_worst:.3e} (tol 1e-8), {dt:.2} s"),
    );
}

fn criterion_04_interface_continuity(gate: &mut Gate) {
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for &a in &[0.1, 0.2] {
        let sc = scale(a);
        // value jumps
        let jb =
            magnetic::b_z_interior(1.0, sc).unwrap() - magnetic::b_z_exterior(1.0, sc).unwrap();
        let ja =
            magnetic::a_phi_interior(1.0, sc).unwrap() - magnetic::a_phi_exterior(1.0, sc).unwrap();
        // e_r interior extended to the surface vs exterior branch
        let coeffs = electric::boundary_coeffs(sc).unwrap();
        let e_in = |s: f64| {
            let zeta = s / a;
            (coeffs.b1
                * bessel_i(0, zeta, Scaling::Scaled).unwrap()
                * podolsky_ab::scaled::ScaledValue::new(1.0, zeta))
            .value()
        };
        let e_out = |s: f64| electric::e_r(point(s), sc, FieldMethod::Exact).unwrap();
        let je = e_in(1.0) - e_out(1.0);
        // one-sided first derivatives from each side
        let d_in = |f: &dyn Fn(f64) -> f64| {
            (3.0 * f(1.0) - 4.0 * f(1.0 - h) + f(1.0 - 2.0 * h)) / (2.0 * h)
        };
        let d_out = |f: &dyn Fn(f64) -> f64| {
            (-3.0 * f(1.0) + 4.0 * f(1.0 + h) - f(1.0 + 2.0 * h)) / (2.0 * h)
        };
        let db = d_in(&|s| magnetic::b_z_interior(s, sc).unwrap())
            - d_out(&|s| magnetic::b_z_exterior(s, sc).unwrap());
        let da = d_in(&|s| magnetic::a_phi_interior(s, sc).unwrap())
            - d_out(&|s| magnetic::a_phi_exterior(s, sc).unwrap());
        let de = d_in(&e_in) - d_out(&e_out);
        for v in [jb, ja, je, db, da, de] {
            worst = worst.max(v.abs());
        }
    }
    gate.report(
        "interface continuity of b_z, a_phi, e_r and first derivatives",
        worst < 1e-8,
        format!("max jump {worst:.3e} (tol 1e-8)"),
    );
}

fn criterion_05_curl_gradient(gate: &mut Gate) {
    let mut ok = true;
    let mut detail = String::new();
    // curl of a_phi reproduces b_z at second order
    for &(a, s) in &[(0.1, 0.55), (0.1, 1.8)] {
        let sc = scale(a);
        let f = move |x: f64| x * magnetic::a_phi(point(x), sc).unwrap();
        let b = magnetic::b_z(point(s), sc).unwrap();
        let err = |h: f64| ((f(s + h) - f(s - h)) / (2.0 * h * s) - b).abs();
        let ratio = err(2e-3) / err(1e-3);
        ok &= (3.6..=4.4).contains(&ratio);
        detail.push_str(&format!("curl A={a} S={s}: ratio {ratio:.2}; "));
    }
    // -d phi/dS reproduces e_r at second order
    for &(a, s) in &[(0.15, 0.35), (0.1, 1.5)] {
        let sc = scale(a);
        let gauge = PhiGauge::default();
        let e = electric::e_r(point(s), sc, FieldMethod::Exact).unwrap();
        let err = |h: f64| {
            let d = (electric::phi(point(s + h), sc, gauge).unwrap()
                - electric::phi(point(s - h), sc, gauge).unwrap())
                / (2.0 * h);
            (-d - e).abs()
        };
        let ratio = err(2e-3) / err(1e-3);
        ok &= (3.6..=4.4).contains(&ratio);
        detail.push_str(&format!("grad A={a} S={s}: ratio {ratio:.2}; "));
    }
    gate.report(
        "curl/gradient consistency with observed 2nd-order convergence",
        ok,
        format!("{detail}required ratio in [3.6, 4.4]"),
    );
}

fn criterion_06_maxwell_limits(gate: &mut Gate) {
    let sc = scale(0.01);
    let b_in = (magnetic::b_z(point(0.5), sc).unwrap() - 1.0).abs();
    let b_out = magnetic::b_z(point(2.0), sc).unwrap().abs();
    // e_r carries an algebraic (A/S)^2 tail in the exact branch; the
    // Maxwell-limit statement concerns the asymptotic branch
    let e_dev = (3.0 * electric::e_r(point(3.0), sc, FieldMethod::Asymptotic).unwrap() - 1.0).abs();
    let a_dev = (magnetic::a_phi(point(3.0), sc).unwrap() - 0.5 / 3.0).abs();
    let ok = b_in < 1e-12 && b_out < 1e-12 && e_dev < 1e-12 && a_dev < 1e-12;
    gate.report(
        "Maxwell limits at A = 0.01",
        ok,
        format!(
            "|b_z(0.5)-1| = {b_in:.2e}, |b_z(2)| = {b_out:.2e}, \
             |S e_r(3)-1| = {e_dev:.2e}, |a_phi(3)-1/6| = {a_dev:.2e} (tol 1e-12)"
        ),
    );
}

fn criterion_07_surface_half_value(gate: &mut Gate) {
    let b = magnetic::b_z(point(1.0), scale(0.01)).unwrap();
    gate.report(
        "surface half-value b_z(1, A=0.01)",
        (b - 0.5).abs() <= 0.01,
        format!("b_z = {b:.6} (0.5 +- 0.01)"),
    );
}

fn criterion_08_magnetic_phase(gate: &mut Gate) {
    let a = 0.05;
    let sc = scale(a);
    let (_, dg1) = magnetic::delta_g_ratio(point(1.0), sc).unwrap();
    let exact_at_surface = dg1 == a;

    let mut monotone = true;
    let mut prev = dg1;
    for i in 1..=60 {
        let s = 1.0 + 3.0 * i as f64 / 60.0;
        let (_, dg) = magnetic::delta_g_ratio(point(s), sc).unwrap();
        monotone &= dg < prev;
        prev = dg;
    }

    let mut loop_ok = true;
    let mut worst_margin: f64 = 0.0;
    for &s in &[1.0, 1.2, 2.0] {
        let lp = loop_phase_numeric(|x| magnetic::a_phi(point(x), sc).unwrap(), s).unwrap();
        let (ratio, _) = magnetic::delta_g_ratio(point(s), sc).unwrap();
        let dev = (lp.shortcut / std::f64::consts::PI - ratio).abs();
        let bound = (-(s - 1.0) / a).exp() * 10.0 * a * a;
        loop_ok &= dev <= bound;
        worst_margin = worst_margin.max(dev / bound);
    }
    gate.report(
        "magnetic phase: delta_g(1) = A, strict decrease, loop-integral route",
        exact_at_surface && monotone && loop_ok,
        format!(
            "delta_g(1) - A = {:.1e}, monotone on (1,4] = {monotone}, \
             loop/formula dev <= {:.2} of bound exp(-(S-1)/A) 10 A^2",
            dg1 - a,
            worst_margin
        ),
    );
}

fn criterion_09_flyby(gate: &mut Gate) {
    // the two first-order-in-eps forms (with and without the A/2 radius
    // term) stay within 0.02 A of each other across eps in [0, 1]; the
    // fully unexpanded form differs at O(eps^2) A and is checked against
    // that remainder estimate
    let a = 0.01;
    let sc = scale(a);
    let mut worst_trunc: f64 = 0.0;
    let mut remainder_ok = true;
    for i in 0..=100 {
        let eps = i as f64 / 100.0;
        let f = magnetic::delta_g_flyby(sc, eps).unwrap();
        worst_trunc = worst_trunc.max((f.first_order - f.with_radius_term).abs());
        remainder_ok &= (f.first_order - f.unexpanded).abs() <= a * (0.5 * eps * eps + a);
    }
    gate.report(
        "flyby first-order displacement",
        worst_trunc < 0.02 * a && remainder_ok,
        format!(
            "max |A(1-eps) - A(1+eps A/2)(1-eps)| = {worst_trunc:.3e} (tol 0.02 A = {:.1e}); \
             unexpanded-form gap within A(eps^2/2 + A) everywhere = {remainder_ok}",
            0.02 * a
        ),
    );
}

fn criterion_10_electric_phase_null(gate: &mut Gate) {
    let sc = scale(0.1);
    let same = BeamPairGeometry {
        s1: 0.37,
        s2: 0.37,
        transit_time: 1.0,
        charge: 1.0,
    };
    let null = electric::delta_phi_podolsky(&same, sc, PotentialMethod::Exact).unwrap();

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
    let antisym = ((f + r) / f).abs();

    let integral = -quadrature(
        |s| electric::e_r(point(s), sc, FieldMethod::Exact).unwrap(),
        0.0,
        0.5,
        1e-14,
    )
    .unwrap()
    .value;
    let quad_dev = ((f - integral) / f).abs();

    gate.report(
        "electric phase: equal-offset null, antisymmetry, quadrature oracle",
        null == 0.0 && antisym < 1e-15 && quad_dev < 1e-6,
        format!(
            "null = {null:.1e} (exact 0), antisymmetry {antisym:.1e} (tol 1e-15), \
             quadrature dev {quad_dev:.3e} (tol 1e-6)"
        ),
    );
}

fn criterion_11_antiderivative_identities(gate: &mut Gate) {
    let ctl = SeriesControl::default();
    let mut worst: f64 = 0.0;
    for &z in &[1.0f64, 2.0, 4.0] {
        let vi = i0_integral(z, &ctl).unwrap().value();
        let qi = quadrature(i0, 0.0, z, 1e-12).unwrap().value;
        worst = worst.max(((vi - qi) / qi).abs());
        let vk = k0_integral(z, &ctl).unwrap();
        let qk = quadrature(k0, 1e-14, z, 1e-12).unwrap().value;
        worst = worst.max(((vk - qk) / qk).abs());
        let vl = l0_integral(z, &ctl).unwrap().value();
        let ql = quadrature(|t| struve_l(0, t, &ctl).unwrap().value(), 0.0, z, 1e-12)
            .unwrap()
            .value;
        worst = worst.max(((vl - ql) / ql).abs());
    }
    gate.report(
        "hypergeometric antiderivative identities at zeta in {1, 2, 4}",
        worst < 1e-10,
        format!("max rel dev {worst:.3e} (tol 1e-10)"),
    );
}

// ---------------------------------------------------------------------
// criteria 12-13 exercise the installed binary
// ---------------------------------------------------------------------

fn run_cli(args: &[&str]) -> (String, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_podolsky-ab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        out.status.success(),
    )
}

fn profile_values(scenario: &str, quantity: &str, a: f64) -> Vec<(f64, f64)> {
    let (stdout, ok) = run_cli(&[
        "profile",
        "--scenario",
        scenario,
        "--A",
        &format!("{a}"),
        "--s-min",
        "0",
        "--s-max",
        "3",
        "--s-count",
        "301",
        "--quantity",
        quantity,
    ]);
    assert!(ok, "profile run failed");
    stdout
        .lines()
        .skip(1)
        .map(|line| {
            let mut parts = line.split(',');
            let s: f64 = parts.next().unwrap().parse().unwrap();
            let v: f64 = parts.next().unwrap().parse().unwrap();
            (s, v)
        })
        .collect()
}

fn criterion_12_figure_ordering(gate: &mut Gate) {
    // Maxwell references for the three profiled quantities
    let maxwell_b = |s: f64| if s <= 1.0 { 1.0 } else { 0.0 };
    let maxwell_a = |s: f64| if s <= 1.0 { 0.5 * s } else { 0.5 / s };
    let maxwell_e = |s: f64| if s < 1.0 { 0.0 } else { 1.0 / s };

    let mut ok = true;
    let mut detail = String::new();

    // monotone-decreasing field profile (solenoid)
    let rows = profile_values("solenoid", "field", 0.1);
    let monotone = rows.windows(2).all(|w| w[1].1 <= w[0].1);
    ok &= monotone;
    detail.push_str(&format!("b_z monotone decreasing = {monotone}; "));

    // Smaller A => pointwise smaller |deviation| from Maxwell. The
    // electric exterior deviation changes sign where GE crosses the
    // Maxwell curve, so the pointwise comparison is made away from the
    // sign-change neighborhoods (detected from the data itself); the
    // sup-norm ordering must hold unconditionally. Ties are allowed
    // only where both curves sit exactly on the reference.
    for (scenario, quantity, reference) in [
        ("solenoid", "field", &maxwell_b as &dyn Fn(f64) -> f64),
        ("solenoid", "potential", &maxwell_a),
        ("tube", "field", &maxwell_e),
    ] {
        let small = profile_values(scenario, quantity, 0.05);
        let large = profile_values(scenario, quantity, 0.2);
        let dev_small: Vec<f64> = small.iter().map(|&(s, v)| v - reference(s)).collect();
        let dev_large: Vec<f64> = large.iter().map(|&(s, v)| v - reference(s)).collect();
        let near_crossing = |dev: &[f64], i: usize| -> bool {
            let lo = i.saturating_sub(2);
            let hi = (i + 2).min(dev.len() - 1);
            (lo..hi).any(|j| dev[j].signum() != dev[j + 1].signum())
        };
        let mut ordered = true;
        let mut excluded = 0usize;
        for i in 0..dev_small.len() {
            if dev_small[i] == 0.0 && dev_large[i] == 0.0 {
                continue;
            }
            if near_crossing(&dev_small, i) || near_crossing(&dev_large, i) {
                excluded += 1;
                continue;
            }
            if dev_small[i].abs() >= dev_large[i].abs() {
                ordered = false;
            }
        }
        let sup_small = dev_small.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        let sup_large = dev_large.iter().fold(0.0f64, |m, d| m.max(d.abs()));
        let sup_ordered = sup_small < sup_large;
        ok &= ordered && sup_ordered;
        detail.push_str(&format!(
            "{scenario}/{quantity} ordered = {ordered} ({excluded} crossing pts excluded), \
             sup {sup_small:.2e} < {sup_large:.2e} = {sup_ordered}; "
        ));
    }
    gate.report(
        "figure reproduction: profile ordering vs Maxwell",
        ok,
        detail,
    );
}

fn criterion_13_verify_runtime_determinism(gate: &mut Gate) {
    let mut ok = true;
    let mut detail = String::new();
    for (level, budget) in [("fast", 10.0), ("full", 120.0)] {
        let start = Instant::now();
        let (first, ok1) = run_cli(&["verify", "--level", level, "--format", "json"]);
        let dt = start.elapsed().as_secs_f64();
        let (second, ok2) = run_cli(&["verify", "--level", level, "--format", "json"]);
        let identical = first == second;
        let checks = first.matches("\"name\"").count();
        ok &= ok1 && ok2 && identical && dt < budget && checks >= 25;
        detail.push_str(&format!(
            "{level}: {dt:.2} s (< {budget} s), {checks} checks, exit ok = {ok1}, \
             byte-identical reruns = {identical}; "
        ));
    }
    gate.report("verify runtime and determinism", ok, detail);
}
