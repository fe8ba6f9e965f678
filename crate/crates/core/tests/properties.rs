use approx::assert_relative_eq;
use proptest::prelude::*;

use dipole2d::mathieu;
use dipole2d::multipole::{exact_potential, reduce, ChargeCluster, PointCharge};
use dipole2d::special::{hyp1f1_series, hyp1f1_terminating};
use dipole2d::spectrum::{self, critical_dipole, Method};
use dipole2d::Error;

fn charges() -> impl Strategy<Value = Vec<PointCharge>> {
    prop::collection::vec((-3.0..3.0f64, -1.0..1.0f64, -1.0..1.0f64), 1..6).prop_map(|v| {
        v.into_iter()
            .map(|(q, x, y)| PointCharge::new(q, [x, y]))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mathieu_functions_are_even_and_pi_periodic(m in 0u32..5, p in -40.0..40.0f64, z in -3.0..3.0f64) {
        let sol = mathieu::char_value_matrix(m, p, 1e-12).unwrap();
        let scale = sol.weighted_norm().max(1.0);
        prop_assert!((sol.eval(z) - sol.eval(-z)).abs() <= 1e-12 * scale);
        prop_assert!((sol.eval(z) - sol.eval(z + std::f64::consts::PI)).abs() <= 1e-12 * scale);
    }

    #[test]
    fn characteristic_values_are_ordered(p in 0.0..200.0f64) {
        let a: Vec<f64> = (0..6).map(|m| mathieu::char_value(m, p, 1e-12).unwrap()).collect();
        prop_assert!(a.windows(2).all(|w| w[0] < w[1]), "{a:?}");
    }

    #[test]
    fn characteristic_values_are_even_in_p_up_to_parity(m in 0u32..5, p in 0.1..30.0f64) {
        let plus = mathieu::char_value(m, p, 1e-13).unwrap();
        let minus = mathieu::char_value(m, -p, 1e-13).unwrap();
        prop_assert!((plus - minus).abs() <= 1e-10 * plus.abs().max(1.0));
    }

    #[test]
    fn reduction_is_origin_covariant(list in charges(), sx in -5.0..5.0f64, sy in -5.0..5.0f64) {
        let cluster = ChargeCluster::new(list, [0.0, 0.0]).unwrap();
        let before = reduce(&cluster);
        let after = reduce(&cluster.translated([sx, sy]));
        prop_assert!((before.total_charge - after.total_charge).abs() < 1e-12);
        for k in 0..2 {
            prop_assert!((before.dipole_vector[k] - after.dipole_vector[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn potential_is_linear_in_clusters(a in charges(), b in charges(), angle in 0.0..std::f64::consts::TAU) {
        let ca = ChargeCluster::new(a, [0.0, 0.0]).unwrap();
        let cb = ChargeCluster::new(b, [0.0, 0.0]).unwrap();
        let point = [5.0 * angle.cos(), 5.0 * angle.sin()];
        let sum = exact_potential(&ca, point).unwrap() + exact_potential(&cb, point).unwrap();
        let joint = exact_potential(&ca.union(&cb), point).unwrap();
        prop_assert!((sum - joint).abs() <= 1e-12 * (1.0 + sum.abs()));
    }

    #[test]
    fn terminating_kummer_matches_series(n in 0u32..8, b in 1.0..12.0f64, x in 0.0..15.0f64) {
        let closed = hyp1f1_terminating(n, b, x);
        let series = hyp1f1_series(-f64::from(n), b, x);
        prop_assert!((closed - series).abs() <= 1e-10 * series.abs().max(1.0));
    }

    #[test]
    fn reality_gate_matches_critical_dipole(m in 1u32..5, frac in 0.05..1.5f64) {
        let dc = critical_dipole(m, 1e-12).unwrap();
        let d = frac * dc;
        prop_assume!((frac - 1.0).abs() > 1e-6);
        let result = spectrum::energy(m, m as i32, d, Method::Matrix);
        if frac < 1.0 {
            prop_assert!(result.is_ok());
        } else {
            let is_no_bound = matches!(result, Err(Error::NoBoundState { .. }));
            prop_assert!(is_no_bound);
        }
    }
}

#[test]
fn critical_dipoles_increase_with_m() {
    let dc: Vec<f64> = (0..=7)
        .map(|m| critical_dipole(m, 1e-12).unwrap())
        .collect();
    assert!(dc.windows(2).all(|w| w[0] < w[1]), "{dc:?}");
}

#[test]
fn energy_curves_change_direction_once() {
    for m in 1..=3u32 {
        let dc = critical_dipole(m, 1e-12).unwrap();
        for n in m..=m + 2 {
            let curve: Vec<f64> = (0..200)
                .map(|i| {
                    let d = dc * f64::from(i) / 200.0;
                    spectrum::energy(n, m as i32, d, Method::Auto)
                        .unwrap()
                        .energy
                })
                .collect();
            let signs: Vec<bool> = curve.windows(2).map(|w| w[1] > w[0]).collect();
            let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
            assert_eq!(changes, 1, "n={n} m={m}");
        }
    }
}

#[test]
fn series_and_matrix_agree_near_zero() {
    for m in 0..=3 {
        let p = 0.05;
        assert_relative_eq!(
            mathieu::char_value_series(m, p),
            mathieu::char_value(m, p, 1e-15).unwrap(),
            epsilon = 1e-10
        );
    }
}

#[test]
fn shooting_step_halving_is_stable() {
    use dipole2d::oracle::{radial_eigenvalue_shoot, ShootingConfig};
    let cfg = ShootingConfig::default();
    for (m, d) in [(1u32, 3.0), (2, 10.0)] {
        let e_theta = spectrum::angular_eigenvalue(m, d, Method::Matrix)
            .unwrap()
            .e_theta;
        let coarse = radial_eigenvalue_shoot(e_theta, 1, &cfg).unwrap();
        let fine = radial_eigenvalue_shoot(e_theta, 1, &cfg.refined()).unwrap();
        assert!(((coarse - fine) / fine).abs() < 10.0 * cfg.match_tol);
    }
}
