use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, TAU};

use duality_core::decompose::{factorize_unitary, recompose, recomposition_residual, FactoredUnitary};
use duality_core::interferometer::{
    detection_probability, detection_probability_closed_form, detection_probability_oracle, predictability,
    visibility_closed_form, visibility_scan, InterferometerConfig,
};
use duality_core::landscape::{duality_sum, f_cartesian, f_pure, f_rotated, f_spherical};
use duality_core::qubit::{
    bloch_to_density, conjugate_state, density_to_bloch, rotate_bloch, rotation_unitary, BlochVector, Matrix2, UnitAxis,
};
use num_complex::Complex;
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn axis() -> impl Strategy<Value = UnitAxis<f64>> {
    (-1.0f64..=1.0, 0.0f64..TAU).prop_map(|(z, phi)| {
        let r = (1.0 - z * z).max(0.0).sqrt();
        UnitAxis::normalized(r * phi.cos(), r * phi.sin(), z).unwrap()
    })
}

fn state() -> impl Strategy<Value = BlochVector<f64>> {
    (axis(), 0.0f64..=1.0).prop_map(|(dir, r)| BlochVector::from_vec(dir.vector().scale(r)).unwrap())
}

fn balanced() -> impl Strategy<Value = InterferometerConfig<f64>> {
    (axis(), state()).prop_map(|(a, s)| InterferometerConfig::balanced(a, s))
}

fn general() -> impl Strategy<Value = InterferometerConfig<f64>> {
    (0.0f64..=PI, axis(), state()).prop_map(|(w, a, s)| InterferometerConfig::new(w, a, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn rotation_is_an_isometry(a in axis(), angle in -10.0f64..10.0, s in state()) {
        prop_assert!((rotate_bloch(&a, angle, &s).norm() - s.norm()).abs() <= TOL);
    }

    #[test]
    fn bloch_and_matrix_rotations_agree(a in axis(), angle in -10.0f64..10.0, s in state()) {
        let via_matrix = density_to_bloch(&conjugate_state(&rotation_unitary(&a, angle), &bloch_to_density(&s)));
        prop_assert!(rotate_bloch(&a, angle, &s).vector().max_abs_diff(&via_matrix.vector()) <= TOL);
    }

    #[test]
    fn rotations_compose(a in axis(), x in -4.0f64..4.0, y in -4.0f64..4.0, s in state()) {
        let twice = rotate_bloch(&a, y, &rotate_bloch(&a, x, &s));
        prop_assert!(twice.vector().max_abs_diff(&rotate_bloch(&a, x + y, &s).vector()) <= TOL);
        let product = rotation_unitary(&a, y).then_after(&rotation_unitary(&a, x));
        prop_assert!(product.matrix().max_abs_diff(rotation_unitary(&a, x + y).matrix()) <= TOL);
    }

    #[test]
    fn full_turn_is_minus_identity(a in axis(), s in state()) {
        let u = rotation_unitary(&a, TAU);
        prop_assert!(u.matrix().max_abs_diff(&Matrix2::identity().scale(Complex::new(-1.0, 0.0))) <= TOL);
        let back = density_to_bloch(&conjugate_state(&u, &bloch_to_density(&s)));
        prop_assert!(back.vector().max_abs_diff(&s.vector()) <= TOL);
    }

    #[test]
    fn probability_is_bounded_and_periodic(config in general(), phi in -10.0f64..10.0) {
        let p = detection_probability(&config, phi);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!((p - detection_probability(&config, phi + TAU)).abs() <= TOL);
    }

    #[test]
    fn closed_form_probability_matches_oracle(config in balanced(), phi in 0.0f64..TAU) {
        let closed = detection_probability_closed_form(&config, phi).unwrap();
        prop_assert!((closed - detection_probability_oracle(&config, phi)).abs() <= TOL);
    }

    #[test]
    fn closed_form_visibility_matches_scan(config in balanced()) {
        let closed = visibility_closed_form(&config).unwrap();
        prop_assert!((closed - visibility_scan(&config, 256).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn predictability_and_visibility_are_bounded(config in general()) {
        let r = duality_sum(&config);
        prop_assert!(r.predictability >= 0.0 && r.predictability <= config.input.norm() + TOL);
        prop_assert!(r.visibility >= 0.0 && r.visibility <= 1.0);
        prop_assert!((r.sum - (r.predictability.powi(2) + r.visibility.powi(2))).abs() <= TOL);
        prop_assert!(r.sum <= 2.0 + 1e-9);
        prop_assert!((predictability(&config) - r.predictability).abs() == 0.0);
    }

    #[test]
    fn englert_identity_for_phase_shifter(s in state()) {
        let r = duality_sum(&InterferometerConfig::balanced(UnitAxis::e_z(), s));
        prop_assert!((r.sum - s.norm().powi(2)).abs() <= 1e-9);
    }

    #[test]
    fn landscape_consistency_web(theta in 0.0f64..=PI, xi in 0.0f64..TAU, m in 0.0f64..=FRAC_1_SQRT_2) {
        prop_assert!((f_spherical(1.0, theta, xi) - f_pure(theta, xi)).abs() <= TOL);
        let a = UnitAxis::from_spherical(theta, xi);
        prop_assert!((f_pure(theta, xi) - f_cartesian(a.x(), a.z()).unwrap()).abs() <= TOL);
        let diagonal = f_cartesian(m, m).unwrap();
        prop_assert!((diagonal - f_rotated(1.0, 2.0f64.sqrt() * m)).abs() <= TOL);
    }

    #[test]
    fn spherical_landscape_matches_first_principles(s_x in -1.0f64..=1.0, theta in 0.0f64..=PI, xi in 0.0f64..TAU) {
        let config = InterferometerConfig::balanced(UnitAxis::from_spherical(theta, xi), BlochVector::along_x(s_x).unwrap());
        prop_assert!((f_spherical(s_x, theta, xi) - duality_sum(&config).sum).abs() <= 1e-9);
    }

    #[test]
    fn spherical_landscape_bounds_and_symmetries(s_x in -1.0f64..=1.0, theta in 0.0f64..=PI, xi in -TAU..TAU) {
        let f = f_spherical(s_x, theta, xi);
        prop_assert!((0.0..=2.0 + TOL).contains(&f));
        prop_assert!(1.0 + s_x * theta.sin() * theta.cos() * xi.cos() >= 0.5);
        prop_assert!((f - f_spherical(s_x, theta, -xi)).abs() <= TOL);
        prop_assert!((f - f_spherical(s_x, PI - theta, PI - xi)).abs() <= TOL);
    }

    #[test]
    fn anti_diagonal_is_constant(m_x in -FRAC_1_SQRT_2 + 1e-9..FRAC_1_SQRT_2 - 1e-9) {
        prop_assert!((f_cartesian(m_x, -m_x).unwrap() - 2.0).abs() <= TOL);
    }

    #[test]
    fn diagonal_profile_decreases(a in 0.0f64..FRAC_1_SQRT_2, b in 0.0f64..FRAC_1_SQRT_2) {
        prop_assume!((a - b).abs() > 1e-6);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(f_cartesian(lo, lo).unwrap() > f_cartesian(hi, hi).unwrap());
    }

    #[test]
    fn factorization_round_trips(a in axis(), angle in -TAU..TAU, phase in -PI..PI) {
        let u = rotation_unitary(&a, angle).matrix().scale(Complex::from_polar(1.0, phase));
        let f = factorize_unitary(&u).unwrap();
        prop_assert!(recomposition_residual(&u, &f) <= TOL);
        prop_assert!((0.0..=FRAC_PI_2).contains(&f.chi));
        for angle in [f.psi, f.delta, f.varphi] {
            prop_assert!(angle > -PI - TOL && angle <= PI + TOL);
        }
    }

    #[test]
    fn determinant_is_twice_the_global_phase(varphi in -PI..PI, psi in -PI..PI, chi in 0.0f64..FRAC_PI_2, delta in -PI..PI) {
        let det = recompose(&FactoredUnitary { varphi, psi, chi, delta }).det();
        prop_assert!((det - Complex::from_polar(1.0, 2.0 * varphi)).norm() <= TOL);
    }

    #[test]
    fn global_phase_isolates_into_varphi(a in axis(), angle in 0.1f64..3.0, theta in -0.5f64..0.5) {
        // Small angles keep arg(det)/2 away from its branch cut.
        let u = *rotation_unitary(&a, angle).matrix();
        prop_assume!(u.get(0, 0).norm() > 1e-6 && u.get(0, 1).norm() > 1e-6);
        let f = factorize_unitary(&u).unwrap();
        let g = factorize_unitary(&u.scale(Complex::from_polar(1.0, theta))).unwrap();
        prop_assert!((f.psi - g.psi).abs() <= TOL);
        prop_assert!((f.chi - g.chi).abs() <= TOL);
        prop_assert!((f.delta - g.delta).abs() <= TOL);
        prop_assert!((g.varphi - f.varphi - theta).abs() <= TOL);
    }
}

#[test]
fn middle_factor_is_sigma_y_exponential() {
    for chi in [0.0, 0.3, 1.0, FRAC_PI_2] {
        let printed = Matrix2::from_real(chi.cos(), chi.sin(), -chi.sin(), chi.cos());
        // e^{iχσ_y} is a rotation by -2χ about ê_y.
        let exponential = rotation_unitary(&UnitAxis::e_y(), -2.0 * chi);
        assert!(exponential.matrix().max_abs_diff(&printed) <= TOL);
    }
}
