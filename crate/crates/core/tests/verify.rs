use nehari::cones::{kernel_direction, normalize, ConeSpec};
use nehari::funcspace::{Grid, GridFunction};
use nehari::operators::{Annulus, Nonlinearity, OperatorKind, ProblemSpec};
use nehari::verify::{
    alpha_moments, certify_kernel_intervals, check_H1, check_H2, check_H3, check_compression, check_h1, check_h2,
    check_scaling, compute_Phi, cubic_analysis, estimate_cp, CompressionMode, H2Input, H2Mode, ScalingMode, Verdict,
};
use proptest::prelude::*;
use std::f64::consts::PI;

/// `((p-1) π_p^p)^{-1/p}` with `π_p = 2π / (p sin(π/p))`, from the first
/// eigenvalue of the one-dimensional p-Laplacian on the unit interval.
fn cp_closed_form(p: f64) -> f64 {
    let pi_p = 2.0 * PI / (p * (PI / p).sin());
    ((p - 1.0) * pi_p.powf(p)).powf(-1.0 / p)
}

#[test]
fn cp_matches_eigenvalue_closed_form() {
    assert!((cp_closed_form(2.0) - 1.0 / PI).abs() < 1e-15);
    let two = estimate_cp(2.0, 1025).unwrap();
    assert!((two.value - 1.0 / PI).abs() < 1e-3);
    assert!((two.value - 1.0 / PI).abs() < 1e-6);
    for p in [1.5, 3.0, 4.0] {
        let est = estimate_cp(p, 1025).unwrap();
        let exact = cp_closed_form(p);
        assert!(
            (est.value - exact).abs() < 1e-5 * exact,
            "p = {p}: {} vs {exact}",
            est.value
        );
        assert!(est.converged_starts >= 1);
    }
    // Conjugate exponents share the constant.
    assert!((cp_closed_form(1.5) - cp_closed_form(3.0)).abs() < 1e-14);
}

#[test]
fn phi_integral_of_model_problem() {
    assert!((compute_Phi(0.25, 2.0).unwrap() - 11.0 / 192.0).abs() < 1e-15);
}

fn model_h2_input() -> H2Input {
    H2Input {
        p: 2.0,
        r: 0.1,
        big_r: 300.0,
        beta: 0.25,
        mode: H2Mode::Standard,
        n: 1025,
    }
}

#[test]
fn growth_condition_on_model_problem() {
    let f = Nonlinearity::model_plaplacian(2.0);
    let rep = check_H2(&f, &model_h2_input()).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass, "{}", rep.detail);
    let w = &rep.witnesses;
    assert!((w["small_side_value"] - 0.02).abs() < 1e-15);
    assert!((w["small_side_bound"] - 0.1 * PI).abs() < 1e-6);
    assert!((w["large_side_value"] - 56.25f64.powi(2)).abs() < 1e-9);
    assert!((w["large_side_bound"] - 300.0 / (2.0 * 11.0 / 192.0)).abs() < 1e-9);
    assert!((w["Phi"] - 11.0 / 192.0).abs() < 1e-15);
    assert!((w["phi_beta"] - 3.0 / 16.0).abs() < 1e-15);

    // The small-radius inequality breaks once r is large.
    let big_r = H2Input {
        r: 2.0,
        ..model_h2_input()
    };
    assert_eq!(check_H2(&f, &big_r).unwrap().verdict, Verdict::Fail);
    // A linear f cannot satisfy both ends.
    assert!(!check_H2(&Nonlinearity::power(1.0, 1.0), &model_h2_input())
        .unwrap()
        .holds());
    let bad = H2Input {
        r: 400.0,
        ..model_h2_input()
    };
    assert!(check_H2(&f, &bad).is_err());
}

#[test]
fn reversed_growth_condition_on_sublinear_problem() {
    // f(x) = √x: f(x)/x = x^{-1/2} is large near 0 and small at infinity.
    let f = Nonlinearity::power(1.0, 0.5);
    let input = H2Input {
        mode: H2Mode::Reversed,
        r: 1e-4,
        ..model_h2_input()
    };
    assert!(check_H2(&f, &input).unwrap().holds());
    let too_wide = H2Input { r: 0.1, ..input };
    assert!(!check_H2(&f, &too_wide).unwrap().holds());
    assert!(!check_H2(&Nonlinearity::model_plaplacian(2.0), &input).unwrap().holds());
}

#[test]
fn structural_conditions_on_model_nonlinearity() {
    let f = Nonlinearity::model_plaplacian(2.0);
    assert_eq!(check_H1(&f, 300.0, 1e3, 500, 7).verdict, Verdict::SampledPass);
    assert_eq!(check_H3(&f, 2.0, 300.0, 200, 7).verdict, Verdict::SampledPass);
    let increasing_in_y = Nonlinearity::custom("x + |y|", |x, y| x + y.abs());
    assert_eq!(check_H1(&increasing_in_y, 10.0, 10.0, 100, 1).verdict, Verdict::Fail);
}

#[test]
fn kernel_intervals_certified() {
    let cert = certify_kernel_intervals([1e-2, 2.5e-3, 1.0], 50, 2024, 1025).unwrap();
    assert_eq!(cert.report.verdict, Verdict::SampledPass, "{}", cert.report.detail);
    assert_eq!(cert.directions.len(), 50);
    for c in &cert.directions {
        assert!(c.slack >= 0.0);
        assert!(c.cubic.discriminant > 4e-4);
        let tp = c.cubic.t_plus.unwrap();
        assert!(tp > 10.0 && tp < 1e7);
        assert!(c.l2_squared >= 1.0 / 32.0);
    }
    let again = certify_kernel_intervals([1e-2, 2.5e-3, 1.0], 50, 2024, 1025).unwrap();
    assert_eq!(cert, again);
    // A much larger quadratic coefficient pushes b₂ out of its interval.
    let off = certify_kernel_intervals([1.0, 2.5e-3, 1.0], 5, 2024, 257).unwrap();
    assert_eq!(off.report.verdict, Verdict::Fail);
}

#[test]
fn manifold_conditions_on_kernel_problem() {
    let prob = ProblemSpec::kernel_example(513).unwrap();
    let h1 = check_h1(&prob, 0.0, prob.radius_cap, 20, 1);
    assert_eq!(h1.verdict, Verdict::SampledPass, "{}", h1.detail);
    assert_eq!(h1.witnesses["min_critical_points"], 2.0);
    assert_eq!(h1.witnesses["max_critical_points"], 2.0);
    assert_eq!(h1.witnesses["max_local_maxima"], 1.0);
    assert!(h1.witnesses["r0"] > 10.0 && h1.witnesses["R0"] < 1e7);
    assert!(check_h2(&prob, 10, 1).holds());
    for mode in [ScalingMode::H3, ScalingMode::H4, ScalingMode::H5] {
        assert!(check_scaling(&prob, mode, 20, 1).holds());
    }
}

#[test]
fn manifold_conditions_on_plaplacian_problem() {
    let prob = ProblemSpec::plaplacian_example(513).unwrap();
    let h1 = check_h1(&prob, 0.1, 300.0, 10, 1);
    assert!(h1.holds(), "{}", h1.detail);
    assert_eq!(h1.witnesses["max_critical_points"], 1.0);
    assert!(check_h2(&prob, 10, 1).holds());
    assert!(check_compression(&prob, CompressionMode::H7, 10, 1).holds());
    assert!(!check_compression(&prob, CompressionMode::H6, 10, 1).holds());
}

#[test]
fn linear_nonlinearity_fails_h1_at_the_boundary() {
    let prob = ProblemSpec::new(
        OperatorKind::PlaplacianBvp { p: 2.0, beta: 0.25 },
        Nonlinearity::power(1.0, 1.0),
        Annulus::new(0.1, 300.0).unwrap(),
        Grid::new(257).unwrap(),
    )
    .unwrap();
    let rep = check_h1(&prob, 0.1, 300.0, 5, 1);
    assert_eq!(rep.verdict, Verdict::Fail);
    assert!(rep.detail.contains("boundary"), "{}", rep.detail);
    assert_eq!(rep.witnesses["failures"], 5.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cubic_roots_are_critical_points(
        b2 in 4.88e-6..8.34e-4f64,
        b1 in 3e-2..1.0f64,
        b0 in 7.81e-3..8.34e-2f64,
    ) {
        let c = cubic_analysis(b2, b1, b0).unwrap();
        prop_assert!(c.two_roots && c.discriminant > 4e-4);
        let (tm, tp) = (c.t_minus.unwrap(), c.t_plus.unwrap());
        prop_assert!(0.0 < tm && tm < tp);
        prop_assert!(tp > 10.0 && tp < 1e7);
        for t in [tm, tp] {
            let scale = (b2 * t * t).max(b1 * t).max(b0);
            prop_assert!(c.g_prime(t).abs() <= 1e-10 * scale);
        }
        prop_assert!(c.g_minus.unwrap() < 0.0 && c.g_plus.unwrap() > 0.0 && c.plus_is_global_max);
    }

    #[test]
    fn alpha_moments_are_monotone(seed in 0u64..5000, index in 0usize..30, lift in 0.0..2.0f64, k in 0u32..3) {
        let g = Grid::new(129).unwrap();
        let v = normalize(&kernel_direction(g, seed, index), &ConeSpec::kernel()).unwrap();
        let bump = GridFunction::from_fn(g, |t| lift * t * (1.0 - t)).unwrap();
        let w = v.combine(1.0, &bump, 1.0).unwrap();
        let (a, b) = (alpha_moments(&v, k), alpha_moments(&w, k));
        prop_assert!(a <= b * (1.0 + 1e-14));
        prop_assert!(a > 0.0);
    }
}
