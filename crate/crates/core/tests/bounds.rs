mod common;

use bosebound::bounds::{envelope_objective, variational_objective};
use bosebound::*;
use common::{kernel, rel, scan};
use proptest::prelude::*;

const TOL: f64 = DEFAULT_OPT_TOL;
const Z0: f64 = 2.338_107_410_459_767;

fn power(c: f64, q: f64) -> Potential {
    Potential::power_law(c, q).unwrap()
}

fn pair(n: usize, m: f64, c: f64, q: f64) -> Bounds {
    bounds_for(&System::new(n, m).unwrap(), &power(c, q), kernel(), TOL).unwrap()
}

#[test]
fn scaling_law_identities() {
    let k = kernel();
    for &m in &[0.0, 0.3, 1.0, 17.0] {
        assert_eq!(scaled_one_body(m, 1.0, 1.0, k).unwrap(), k.eval(m));
    }
    assert!(rel(scaled_one_body(0.0, 1.0, 8.0, k).unwrap(), 2.0 * Z0) < 1e-8);
    assert!(rel(scaled_one_body(1.0, 2.0, 2.0, k).unwrap(), 2.0 * k.eval(1.0)) < 1e-14);
    assert!(scaled_one_body(1.0, 0.0, 1.0, k).is_err());
    assert!(scaled_one_body(1.0, 1.0, -1.0, k).is_err());
}

#[test]
fn golden_pair_reproduced_by_independent_evaluation() {
    // Oracle values from a separate Gaussian-basis diagonalization of the
    // one-body kernel and direct quadrature of the trial expectation.
    let b = pair(8, 1.0, 1.0, 2.0);
    assert!(rel(b.lower.unwrap().value, 35.849_808_7) < 1e-8);
    assert!(rel(b.upper.unwrap().value, 35.921_150_0) < 1e-8);
    assert!((b.upper.unwrap().optimizer.unwrap() - 0.5467).abs() < 1e-3);
}

#[test]
fn ultra_closed_forms() {
    let u2 = ultra_bounds(2, 1.0, 2.0).unwrap();
    assert!(rel(u2.lower, 3.711_514_162_978_476_7) < 1e-14);
    assert!(rel(u2.upper, 3.722_102_945_396_400_3) < 1e-14);

    let u3 = ultra_bounds(2, 1.0, 3.0).unwrap();
    let c = 1.5f64.powf(0.25) * (4.0 / 3.0) * 2f64.powf(5.0 / 8.0) * 2f64.powf(9.0 / 8.0);
    assert!(rel(u3.prefactor, c) < 1e-14);
    assert!(rel(u3.lower, c * (Z0 / 3.0).powf(9.0 / 8.0)) < 1e-14);
    assert!(rel(u3.lower, 3.749_515_453_633_809_3) < 1e-14);
    assert!(rel(u3.upper, 3.960_081_329_523_686) < 1e-14);

    for n in 2..=8 {
        for (q, ceiling) in [(2.0, 0.0030), (2.5, 0.0286), (3.0, 0.072)] {
            let u = ultra_bounds(n, 1.0, q).unwrap();
            assert!(u.lower < u.upper);
            assert!(u.relative_spread() < ceiling, "N = {n}, q = {q}");
        }
    }
    assert!(matches!(ultra_bounds(2, 1.0, 1.5), Err(BoundsError::Domain(_))));
    assert!(ultra_bounds(1, 1.0, 2.0).is_err());
}

#[test]
fn oscillator_matches_ultra_at_zero_mass() {
    for n in [2, 3, 8] {
        let p = System::new(n, 0.0).unwrap();
        let lo = lower_bound_oscillator(&p, 1.0, kernel()).unwrap().value;
        assert!(rel(lo, ultra_bounds(n, 1.0, 2.0).unwrap().lower) < 1e-9);
    }
}

#[test]
fn envelope_contains_oscillator() {
    let spec = power(1.0, 2.0);
    for n in [2, 5, 8] {
        for m in [0.0, 1.0, 10.0] {
            let p = System::new(n, m).unwrap();
            let osc = lower_bound_oscillator(&p, 1.0, kernel()).unwrap().value;
            let env = lower_bound_envelope(&p, &spec, kernel(), TOL).unwrap();
            assert!(rel(env.value, osc) < 1e-9, "N = {n}, m = {m}");
            assert!(env.diagnostics.unwrap().flat);
        }
    }
}

#[test]
fn zero_mass_limits() {
    for q in [2.5, 3.0] {
        let ultra = ultra_bounds(3, 1.0, q).unwrap();
        let near = System::new(3, 1e-6).unwrap();
        let lo = lower_bound_envelope(&near, &power(1.0, q), kernel(), TOL).unwrap().value;
        assert!(rel(lo, ultra.lower) < 1e-3, "q = {q}");
        let small = System::new(3, 1e-3).unwrap();
        let up = upper_bound_variational(&small, 1.0, q, TOL).unwrap().value;
        assert!(rel(up, ultra.upper) < 1e-2, "q = {q}");
    }
    let env = lower_bound_envelope(&System::new(2, 0.0).unwrap(), &power(1.0, 3.0), kernel(), TOL).unwrap();
    assert!(rel(env.value, ultra_bounds(2, 1.0, 3.0).unwrap().lower) < 1e-8);
}

#[test]
fn dispatch() {
    let at_rest = pair(2, 0.0, 1.0, 2.0);
    let u = ultra_bounds(2, 1.0, 2.0).unwrap();
    assert_eq!(at_rest.lower.unwrap().value, u.lower);
    assert_eq!(at_rest.upper.unwrap().value, u.upper);
    assert_eq!(at_rest.lower.unwrap().method, BoundMethod::UltraRelativistic);

    assert_eq!(pair(3, 1.0, 1.0, 2.0).lower.unwrap().method, BoundMethod::Oscillator);
    let quartic = pair(3, 1.0, 1.0, 4.0);
    assert_eq!(quartic.lower.unwrap().method, BoundMethod::Envelope);
    assert_eq!(quartic.upper.unwrap().method, BoundMethod::Variational);

    let linear = pair(3, 1.0, 1.0, 1.0);
    assert!(linear.lower.is_none() && linear.upper.is_some());

    let custom = Potential::custom("t+t^2", |t| t + t * t, |t| 1.0 + 2.0 * t);
    let p = bounds_for(&System::new(3, 1.0).unwrap(), &custom, kernel(), TOL).unwrap();
    assert!(p.lower.is_some() && !p.has_upper() && p.relative_gap().is_none());

    let gap = pair(5, 2.0, 1.0, 2.5).relative_gap().unwrap();
    assert!(gap <= 2.0 * 0.0143, "{gap}");

    let zero_mass_linear = bounds_for(&System::new(3, 0.0).unwrap(), &power(1.0, 1.0), kernel(), TOL);
    assert!(matches!(zero_mass_linear.unwrap_err().root(), BoundsError::Domain(_)));
}

#[test]
fn custom_power_matches_builtin() {
    let custom = Potential::custom("cube", |t: f64| 1.3 * t.powf(1.5), |t: f64| 1.95 * t.sqrt());
    for m in [0.5, 4.0] {
        let p = System::new(4, m).unwrap();
        let a = lower_bound_envelope(&p, &custom, kernel(), TOL).unwrap().value;
        let b = lower_bound_envelope(&p, &power(1.3, 3.0), kernel(), TOL).unwrap().value;
        assert!(rel(a, b) < 1e-12);
    }
}

#[test]
fn non_convex_custom_is_rejected() {
    let concave = Potential::custom("sqrt", |t: f64| t.sqrt(), |t: f64| 0.5 / t.sqrt());
    let err = lower_bound_envelope(&System::new(3, 1.0).unwrap(), &concave, kernel(), TOL).unwrap_err();
    assert!(matches!(err, BoundsError::Potential(PotentialError::NotConvex { .. })), "{err:?}");
}

#[test]
fn coulomb_validity() {
    let two = System::new(2, 1.0).unwrap();
    let v = check_coulomb_validity(&two, 1.0);
    assert!(v.valid && (v.margin - 0.5).abs() < 1e-15);
    let edge = check_coulomb_validity(&two, 2.0);
    assert!(!edge.valid && edge.margin == 0.0);
    let ten = check_coulomb_validity(&System::new(10, 1.0).unwrap(), 0.1);
    assert!(ten.valid && (1.0 - ten.margin - 0.05 * 45f64.sqrt()).abs() < 1e-15);

    for c in [0.1, 0.5] {
        let upper = upper_bound_variational(&two, c, -1.0, TOL).unwrap();
        let f = variational_objective(&two, c, -1.0).unwrap();
        let (mu, value) = scan(&f, 1e-2, 1e4, 20_000, false);
        assert!(rel(upper.value, value) < 1e-9, "c = {c}");
        assert!(rel(upper.optimizer.unwrap(), mu) < 1e-3, "c = {c}");
    }

    let over = upper_bound_variational(&two, 2.5, -1.0, TOL).unwrap_err();
    assert!(matches!(over, BoundsError::Optim(OptimError::BracketFailure { .. })), "{over:?}");
    let via_dispatch = bounds_for(&two, &power(2.5, -1.0), kernel(), TOL).unwrap_err();
    assert!(matches!(via_dispatch.root(), BoundsError::CouplingTooStrong { .. }));
    assert!(matches!(
        upper_bound_variational(&two, 1.0, -1.5, TOL),
        Err(BoundsError::Domain(_))
    ));
}

#[test]
fn envelope_matches_dense_scan() {
    let p = System::new(4, 1.0).unwrap();
    let spec = power(1.0, 2.5);
    let b = lower_bound_envelope(&p, &spec, kernel(), TOL).unwrap();
    let f = envelope_objective(&p, &spec, kernel());
    let (t, value) = scan(&f, 1e-3, 1e3, 100_000, true);
    assert!(rel(b.value, value) < 1e-10);
    assert!(rel(b.optimizer.unwrap(), t) < 1e-3);
}

#[test]
fn stationary_at_optimum() {
    let h = 1e-4;
    for (n, m, c, q) in [(3, 0.7, 1.0, 2.5), (6, 4.0, 0.8, 3.0), (2, 12.0, 1.5, 4.0)] {
        let p = System::new(n, m).unwrap();
        let spec = power(c, q);
        let lo = lower_bound_envelope(&p, &spec, kernel(), TOL).unwrap();
        let f = envelope_objective(&p, &spec, kernel());
        let t = lo.optimizer.unwrap();
        let d = (f(t * f64::exp(h)) - f(t * f64::exp(-h))) / (2.0 * h);
        assert!(d.abs() < 1e-6 * lo.value, "lower: {d}");

        let up = upper_bound_variational(&p, c, q, TOL).unwrap();
        let g = variational_objective(&p, c, q).unwrap();
        let mu = up.optimizer.unwrap();
        let d = (g(mu * f64::exp(h)) - g(mu * f64::exp(-h))) / (2.0 * h);
        assert!(d.abs() < 1e-6 * up.value, "upper: {d}");
    }
}

#[test]
fn coalescence_at_large_mass() {
    let gap = |m: f64| pair(3, m, 1.0, 2.0).relative_gap().unwrap();
    assert!(gap(1e3) < 5e-4);
    assert!(gap(1e3) < gap(1.0));
    assert!(pair(8, 1e4, 1.0, 2.0).relative_gap().unwrap() < 1.5e-3);
}

#[test]
fn sweep_rows_match_point_queries() {
    let spec = power(1.0, 2.5);
    let grid = [0.0, 0.1, 1.0, 10.0, 100.0];
    let curve = sweep_curve(3, &spec, kernel(), &grid, TOL).unwrap();
    assert!(curve.is_complete());
    assert_eq!(curve.rows.len(), grid.len());
    for row in &curve.rows {
        let direct = pair(3, row.m, 1.0, 2.5);
        assert_eq!(row.result.as_ref().unwrap(), &direct);
    }
    let at_rest = curve.relative_gaps()[0].unwrap();
    assert_eq!(at_rest, ultra_bounds(3, 1.0, 2.5).unwrap().relative_spread());
    assert!(curve.gap_monotone());

    let again = sweep_curve(3, &spec, kernel(), &grid, TOL).unwrap();
    assert_eq!(again, curve);
}

#[test]
fn sweep_keeps_failed_rows() {
    let curve = sweep_curve(2, &power(2.5, -1.0), kernel(), &[0.5, 1.0], TOL).unwrap();
    assert_eq!(curve.failures().count(), 2);
    assert!(sweep_curve(2, &power(1.0, 2.0), kernel(), &[1.0, 1.0], TOL).is_err());
    assert!(sweep_curve(1, &power(1.0, 2.0), kernel(), &[1.0], TOL).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lower_never_exceeds_upper(n in 2usize..=16, log_m in -2.0f64..2.0, q in 2.0f64..3.0, c in 0.5f64..2.0) {
        let b = pair(n, 10f64.powf(log_m), c, q);
        let (lo, up) = (b.lower.unwrap(), b.upper.unwrap());
        prop_assert!(lo.value - lo.uncertainty <= up.value + up.uncertainty);
    }

    #[test]
    fn bounds_grow_with_n(n in 2usize..12, log_m in -2.0f64..2.0, q in 2.0f64..3.0) {
        let m = 10f64.powf(log_m);
        let a = pair(n, m, 1.0, q);
        let b = pair(n + 1, m, 1.0, q);
        prop_assert!(b.lower.unwrap().value > a.lower.unwrap().value);
        prop_assert!(b.upper.unwrap().value > a.upper.unwrap().value);
    }
}
