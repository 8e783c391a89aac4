use nehari::cones::{admissible_rhs, check_membership, sample_directions, ConeSpec};
use nehari::funcspace::{integrate, norm, Grid, GridFunction, NormKind};
use nehari::operators::{
    apply_T, green_kernel, hammerstein, nemytskii, phi_weight, plaplace_inverse, signed_power, Nonlinearity,
    ProblemSpec,
};
use proptest::prelude::*;

fn grid(n: usize) -> Grid {
    Grid::new(n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integrate_is_linear(a in -5.0..5.0f64, b in -5.0..5.0f64, k in 1.0..6.0f64) {
        let g = grid(129);
        let f = GridFunction::from_fn(g, |t| (k * t).sin() + t * t).unwrap();
        let h = GridFunction::from_fn(g, |t| 1.0 / (1.0 + k * t)).unwrap();
        let lhs = integrate(&f.combine(a, &h, b).unwrap());
        let rhs = a * integrate(&f) + b * integrate(&h);
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + lhs.abs()));
    }

    #[test]
    fn w1p_norm_is_absolutely_homogeneous(c in -50.0..50.0f64, p in 1.2..6.0f64) {
        let g = grid(257);
        let f = GridFunction::from_fn(g, |t| t * (1.0 - t) * (1.0 + t)).unwrap();
        let lhs = norm(&f.scale(c), NormKind::W1p(p)).unwrap();
        let rhs = c.abs() * norm(&f, NormKind::W1p(p)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + rhs));
    }

    #[test]
    fn nemytskii_is_even_in_derivative(p in 1.2..5.0f64, scale in 0.1..100.0f64) {
        let g = grid(65);
        let f = Nonlinearity::model_plaplacian(p);
        let u = GridFunction::from_fn(g, |t| scale * t * (1.0 - t)).unwrap();
        let du = GridFunction::from_fn(g, |t| scale * (1.0 - 2.0 * t)).unwrap();
        let a = nemytskii(&f, &u, &du).unwrap();
        let b = nemytskii(&f, &u, &du.scale(-1.0)).unwrap();
        prop_assert_eq!(a.values(), b.values());
    }

    #[test]
    fn hammerstein_dominated_by_diagonal_weight(seed in 0u64..1000, index in 1usize..50, s in 0.1..500.0f64) {
        let g = grid(257);
        let prob = ProblemSpec::kernel_example(257).unwrap();
        let v = &sample_directions(&ConeSpec::kernel(), g, index + 1, seed).unwrap()[index];
        let u = v.scale(s);
        let tu = hammerstein(&prob.nonlinearity, &u).unwrap();
        let weight = GridFunction::from_fn(g, |t| t * (1.0 - t)).unwrap();
        let fu = u.map(|x| prob.nonlinearity.f_zero(x));
        let bound = integrate(&weight.mul(&fu).unwrap());
        prop_assert!(tu.sup() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn plaplace_inverse_is_two_sided(p in 1.3..5.0f64, seed in 0u64..500, index in 0usize..20) {
        let n = 513;
        let g = grid(n);
        let h = admissible_rhs(g, seed, index);
        let u = plaplace_inverse(&h, p, 1e-8).unwrap();
        let du = u.stored_derivative().unwrap();
        let flux: Vec<f64> = du.iter().map(|d| signed_power(*d, p - 1.0)).collect();
        let dx = g.spacing();
        let scale = h.sup();
        for i in 1..n - 1 {
            let recovered = -(flux[i + 1] - flux[i - 1]) / (2.0 * dx);
            prop_assert!((recovered - h.values()[i]).abs() <= 1e-3 * scale, "node {}", i);
        }
    }
}

#[test]
fn two_sided_inverse_error_is_second_order() {
    // Recovering h from the computed flux converges like the grid spacing squared.
    let err = |n: usize| {
        let g = grid(n);
        let h = GridFunction::from_fn(g, |t| 1.0 + (std::f64::consts::PI * t).sin()).unwrap();
        let u = plaplace_inverse(&h, 3.0, 1e-8).unwrap();
        let flux: Vec<f64> = u
            .stored_derivative()
            .unwrap()
            .iter()
            .map(|d| signed_power(*d, 2.0))
            .collect();
        let dx = g.spacing();
        (1..n - 1)
            .map(|i| (-(flux[i + 1] - flux[i - 1]) / (2.0 * dx) - h.values()[i]).abs())
            .fold(0.0, f64::max)
    };
    let ratio = err(257) / err(513);
    assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
}

#[test]
fn exact_solutions_at_production_resolution() {
    let g = grid(1025);
    let one = GridFunction::constant(g, 1.0).unwrap();
    let u2 = plaplace_inverse(&one, 2.0, 1e-8).unwrap();
    let e2 = g
        .nodes()
        .iter()
        .zip(u2.values())
        .map(|(t, v)| (v - t * (1.0 - t) / 2.0).abs())
        .fold(0.0, f64::max);
    assert!(e2 <= 1e-10);
    let u3 = plaplace_inverse(&one, 3.0, 1e-8).unwrap();
    let exact = |t: f64| {
        let s = t.min(1.0 - t);
        2.0 / 3.0 * (0.5f64.powf(1.5) - (0.5 - s).powf(1.5))
    };
    let e3 = g
        .nodes()
        .iter()
        .zip(u3.values())
        .map(|(t, v)| (v - exact(*t)).abs())
        .fold(0.0, f64::max);
    assert!(e3 <= 1e-8);
}

#[test]
fn harnack_suite_on_admissible_data() {
    let g = grid(1025);
    let ps = [1.5, 2.0, 3.0, 4.0];
    for i in 0..100 {
        let p = ps[i % ps.len()];
        let h = admissible_rhs(g, 2024, i);
        let u = plaplace_inverse(&h, p, 1e-8).unwrap();
        let w = norm(&u, NormKind::W1p(p)).unwrap();
        for k in 0..=g.mid() {
            let margin = u.values()[k] - phi_weight(g.node(k), p).unwrap() * w;
            assert!(margin >= -1e-10, "sample {i}, p = {p}, node {k}: {margin}");
        }
        let rep = check_membership(&u, &ConeSpec::plaplacian(p));
        assert!(rep.member, "sample {i}: {rep:?}");
    }
}

#[test]
fn operator_preserves_plaplacian_cone() {
    let g = grid(513);
    for &p in &[1.5, 2.0, 3.0] {
        let mut prob = ProblemSpec::plaplacian_example(513).unwrap();
        prob.operator = nehari::OperatorKind::PlaplacianBvp { p, beta: 0.25 };
        prob.nonlinearity = Nonlinearity::model_plaplacian(p);
        let cone = ConeSpec::plaplacian(p);
        for (i, v) in sample_directions(&cone, g, 20, 9).unwrap().iter().enumerate() {
            for s in [0.1, 1.0, 30.0] {
                let tu = apply_T(&prob, &v.scale(s)).unwrap();
                let rep = check_membership(&tu, &cone);
                assert!(rep.member, "p = {p}, direction {i}, scale {s}: {rep:?}");
            }
        }
    }
}

#[test]
fn operator_preserves_kernel_cone() {
    let g = grid(513);
    let prob = ProblemSpec::kernel_example(513).unwrap();
    for v in sample_directions(&ConeSpec::kernel(), g, 20, 4).unwrap() {
        let tu = apply_T(&prob, &v.scale(100.0)).unwrap();
        assert!(check_membership(&tu, &ConeSpec::kernel()).member);
    }
}

#[test]
fn green_kernel_is_bounded_by_diagonal_weight() {
    for i in 0..=40 {
        for j in 0..=40 {
            let (t, s) = (i as f64 / 40.0, j as f64 / 40.0);
            assert!(green_kernel(t, s) <= s * (1.0 - s) + 1e-16);
            if (0.25..=0.75).contains(&t) {
                assert!(green_kernel(t, s) >= 0.25 * s * (1.0 - s) - 1e-16);
            }
        }
    }
}

#[test]
fn hammerstein_of_unit_source_has_sup_one_eighth() {
    let g = grid(1025);
    let out = hammerstein(&Nonlinearity::constant(1.0), &GridFunction::zeros(g)).unwrap();
    assert!((out.sup() - 0.125).abs() < 1e-15);
    assert_eq!(out.values()[0], 0.0);
    assert_eq!(out.values()[1024], 0.0);
}
