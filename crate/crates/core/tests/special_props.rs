use bosebound::{bessel_k1, gamma, scaled_exp_k1};
use proptest::prelude::*;

proptest! {
    #[test]
    fn k1_is_decreasing(z in 0.01f64..60.0, dz in 1e-3f64..1.0) {
        prop_assert!(bessel_k1(z + dz).unwrap() < bessel_k1(z).unwrap());
    }

    #[test]
    fn z_k1_rises_toward_one(z in 0.01f64..40.0, dz in 1e-3f64..1.0) {
        let a = z * bessel_k1(z).unwrap();
        let b = (z + dz) * bessel_k1(z + dz).unwrap();
        prop_assert!(a <= 1.0 && b < a);
    }

    #[test]
    fn scaled_k1_matches_unscaled(z in 0.01f64..600.0) {
        let direct = z.exp() * bessel_k1(z).unwrap();
        let scaled = scaled_exp_k1(z).unwrap();
        prop_assert!((direct - scaled).abs() <= 1e-12 * scaled.abs().max(1.0) * (1.0 + z));
    }

    #[test]
    fn gamma_recursion(x in 0.05f64..150.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * rhs.abs());
    }

    #[test]
    fn gamma_reflection(x in 0.05f64..0.95) {
        let product = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
        let expected = std::f64::consts::PI / (std::f64::consts::PI * x).sin();
        prop_assert!((product - expected).abs() <= 1e-13 * expected);
    }
}

#[test]
fn domain_errors() {
    assert!(bessel_k1(0.0_f64).is_err());
    assert!(bessel_k1(-1.0_f64).is_err());
    assert!(scaled_exp_k1(f64::NAN).is_err());
    assert!(gamma(0.0_f64).is_err());
    assert!(gamma(-2.0_f64).is_err());
}

#[test]
fn half_integer_gamma() {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    assert!((gamma(0.5_f64).unwrap() - sqrt_pi).abs() < 1e-15);
    assert!((gamma(2.5_f64).unwrap() - 0.75 * sqrt_pi).abs() < 1e-14);
    assert!((gamma(3.5_f64).unwrap() - 1.875 * sqrt_pi).abs() < 1e-14);
}
