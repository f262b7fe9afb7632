use amvp_core::asymptotics::{extrapolate, ExtrapolationModel};
use amvp_core::measure::{unit_ball_rule, unit_sphere_rule, QuadratureRule};
use amvp_core::oracles::{ball_ratio, sphere_ratio};
use amvp_core::plaplace::{elliptic_coefficient, normalized_p_laplacian, Geometry, QuadraticProbe};
use amvp_core::pmean::{p_mean, p_mean_ball, Exponent, WeightedSamples};
use proptest::prelude::*;

fn exponents() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        Just(Exponent::One),
        Just(Exponent::Two),
        Just(Exponent::Infinity),
        (1.05f64..12.0).prop_map(Exponent::Finite),
    ]
}

fn samples() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..30).prop_flat_map(|n| (prop::collection::vec(-50.0f64..50.0, n), prop::collection::vec(0.01f64..1.0, n)))
}

fn mean(u: &[f64], w: &[f64], p: Exponent) -> f64 {
    p_mean(&WeightedSamples::new(u.to_vec(), w.to_vec()).unwrap(), p).unwrap().mean
}

fn tol(u: &[f64]) -> f64 {
    1e-10 * (1.0 + u.iter().fold(0.0f64, |a, v| a.max(v.abs())))
}

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |e| {
        (0..n).map(|i| (0..n).map(|j| if i <= j { e[i * n + j] } else { e[j * n + i] }).collect()).collect()
    })
}

fn rotate(a: &[Vec<f64>], xi: &[f64], angle: f64) -> (Vec<Vec<f64>>, Vec<f64>) {
    let (s, c) = angle.sin_cos();
    let q = [[c, -s], [s, c]];
    let qa: Vec<Vec<f64>> = (0..2).map(|i| (0..2).map(|j| (0..2).map(|k| q[i][k] * a[k][j]).sum()).collect()).collect();
    let qaqt = (0..2).map(|i| (0..2).map(|j| (0..2).map(|k| qa[i][k] * q[j][k]).sum()).collect()).collect();
    let qxi = (0..2).map(|i| q[i][0] * xi[0] + q[i][1] * xi[1]).collect();
    (qaqt, qxi)
}

fn gradient2() -> impl Strategy<Value = Vec<f64>> {
    (0.0f64..std::f64::consts::TAU, 0.3f64..2.0).prop_map(|(t, r)| vec![r * t.cos(), r * t.sin()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn shift_equivariance((u, w) in samples(), p in exponents(), c in -20.0f64..20.0) {
        let shifted: Vec<f64> = u.iter().map(|v| v + c).collect();
        prop_assert!((mean(&shifted, &w, p) - mean(&u, &w, p) - c).abs() <= tol(&shifted) + tol(&u));
    }

    #[test]
    fn homogeneity((u, w) in samples(), p in exponents(), lambda in -5.0f64..5.0) {
        let scaled: Vec<f64> = u.iter().map(|v| lambda * v).collect();
        prop_assert!((mean(&scaled, &w, p) - lambda * mean(&u, &w, p)).abs() <= tol(&scaled) + lambda.abs() * tol(&u));
    }

    #[test]
    fn range_containment((u, w) in samples(), p in exponents()) {
        let m = mean(&u, &w, p);
        let lo = u.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(lo <= m && m <= hi);
    }

    #[test]
    fn monotone((u, w) in samples(), p in exponents(), bumps in prop::collection::vec(0.0f64..5.0, 30)) {
        let v: Vec<f64> = u.iter().zip(&bumps).map(|(a, b)| a + b).collect();
        prop_assert!(mean(&u, &w, p) <= mean(&v, &w, p) + tol(&v));
    }

    #[test]
    fn sup_nonexpansive((u, w) in samples(), p in exponents(), noise in prop::collection::vec(-3.0f64..3.0, 30)) {
        let v: Vec<f64> = u.iter().zip(&noise).map(|(a, b)| a + b).collect();
        let sup = noise.iter().take(u.len()).fold(0.0f64, |a, b| a.max(b.abs()));
        prop_assert!((mean(&u, &w, p) - mean(&v, &w, p)).abs() <= sup + tol(&v) + tol(&u));
    }

    #[test]
    fn linear_fields_mean_to_their_center(p in exponents(), xi in gradient2(), x in prop::collection::vec(-3.0f64..3.0, 2), eps in 0.01f64..2.0) {
        let ball = unit_ball_rule(2, 8).unwrap();
        let sphere = unit_sphere_rule(2, 8).unwrap();
        let u = |y: &[f64]| 1.5 + xi[0] * (y[0] - x[0]) + xi[1] * (y[1] - x[1]);
        let m = p_mean_ball(&u, &x, eps, p, &ball, Some(&sphere)).unwrap().mean;
        prop_assert!((m - 1.5).abs() <= 1e-9, "{m}");
    }

    #[test]
    fn p_laplacian_is_rotation_invariant(a in symmetric(2), xi in gradient2(), angle in 0.0f64..6.3, p in exponents()) {
        let (ra, rxi) = rotate(&a, &xi, angle);
        let before = normalized_p_laplacian(&a, &xi, p).unwrap();
        let after = normalized_p_laplacian(&ra, &rxi, p).unwrap();
        prop_assert!((before - after).abs() <= 1e-12);
    }

    #[test]
    fn p_laplacian_ignores_gradient_length(a in symmetric(3), xi in prop::collection::vec(-1.0f64..1.0, 3), s in 0.01f64..100.0, p in exponents()) {
        prop_assume!(xi.iter().map(|v| v * v).sum::<f64>() > 1e-2);
        let scaled: Vec<f64> = xi.iter().map(|v| s * v).collect();
        let a1 = normalized_p_laplacian(&a, &xi, p).unwrap();
        let a2 = normalized_p_laplacian(&a, &scaled, p).unwrap();
        prop_assert!((a1 - a2).abs() <= 1e-12 * (1.0 + a1.abs()));
    }

    #[test]
    fn elliptic_coefficients_differ_by_geometry_factor(a in symmetric(2), xi in gradient2(), p in 1.05f64..20.0) {
        let q = QuadraticProbe::new(0.0, xi, a, 0.0).unwrap();
        let e = Exponent::Finite(p);
        let ball = elliptic_coefficient(&q, e, 2, Geometry::Ball).unwrap();
        let sphere = elliptic_coefficient(&q, e, 2, Geometry::Sphere).unwrap();
        prop_assert!((ball * (2.0 + p) - sphere * p).abs() <= 1e-12 * (1.0 + ball.abs() * (2.0 + p)));
    }

    #[test]
    fn moment_ratios_are_rotation_invariant(a in symmetric(2), xi in gradient2(), angle in 0.0f64..6.3, p in 1.2f64..6.0) {
        let (ra, rxi) = rotate(&a, &xi, angle);
        for f in [sphere_ratio, ball_ratio] {
            let (r1, r2) = (f(&a, &xi, p, 2).unwrap(), f(&ra, &rxi, p, 2).unwrap());
            prop_assert!((r1 - r2).abs() <= 1e-12 * (1.0 + r1.abs()));
        }
    }

    #[test]
    fn quadratic_extrapolation_recovers_polynomials(c0 in -5.0f64..5.0, c1 in -5.0f64..5.0, c2 in -5.0f64..5.0) {
        let eps = [0.2, 0.1, 0.05, 0.025];
        let d: Vec<f64> = eps.iter().map(|e| c0 + c1 * e + c2 * e * e).collect();
        let fit = extrapolate(&eps, &d, ExtrapolationModel::Quadratic).unwrap();
        prop_assert!((fit.limit - c0).abs() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rules_round_trip_through_json(n in 1usize..4, order in 2usize..10) {
        let rule = unit_ball_rule(n, order).unwrap();
        let back = QuadratureRule::from_json(&rule.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, rule);
    }
}
