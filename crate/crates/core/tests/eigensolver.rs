mod common;

use bosebound::radial::nonrelativistic_energy;
use bosebound::{solve_e, solve_state, EigensolveConfig, Mass};

fn e(m: f64, cfg: &EigensolveConfig<f64>) -> f64 {
    solve_e(Mass::new(m).unwrap(), cfg).unwrap()
}

/// Lowest eigenvalue of the second-order finite-difference operator on
/// `[0, r_max]` with `n` interior points, by Sturm-sequence bisection.
fn fd_eigenvalue(m: f64, r_max: f64, n: usize) -> f64 {
    let h = r_max / (n + 1) as f64;
    let off = -1.0 / (h * h);
    let diag: Vec<f64> = (1..=n)
        .map(|i| {
            let r = i as f64 * h;
            2.0 / (h * h) + (m * m + r * r).sqrt()
        })
        .collect();
    let count_below = |x: f64| {
        let mut count = 0;
        let mut q = 1.0;
        for (i, &d) in diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - off * off / q };
            if q == 0.0 {
                q = 1e-300;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let (mut lo, mut hi) = (m, m + 10.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if count_below(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn agrees_with_finite_difference_oracle() {
    let cfg = EigensolveConfig::default();
    for &m in &[0.0, 1.0, 10.0] {
        let r_max = 12.0 + 4.0 * f64::cbrt(m);
        let coarse = fd_eigenvalue(m, r_max, 20_000);
        let fine = fd_eigenvalue(m, r_max, 40_001);
        let oracle = fine + (fine - coarse) / 3.0;
        assert!((e(m, &cfg) - oracle).abs() < 1e-7, "m = {m}: {} vs {oracle}", e(m, &cfg));
    }
}

#[test]
fn frozen_values() {
    let cfg = EigensolveConfig::default();
    assert!((e(1.0, &cfg) - 2.664_012_612_615).abs() < 1e-8);
    assert!((e(0.5, &cfg) - 2.432_334_3).abs() < 2e-7);
    assert!((e(10.0, &cfg) - 10.661_857_4).abs() < 2e-7);
    assert!((e(100.0, &cfg) - 100.212_038_4).abs() < 2e-7);
}

#[test]
fn grid_and_domain_convergence() {
    let base = EigensolveConfig::default();
    for &m in &[0.0, 1.0, 10.0] {
        let reference = e(m, &base);
        let doubled = EigensolveConfig { grid_points: 2 * base.grid_points, ..base };
        let wider = EigensolveConfig { r_max: Some(1.5 * base.r_max_for(m)), ..base };
        assert!((e(m, &doubled) - reference).abs() < 1e-7, "grid, m = {m}");
        assert!((e(m, &wider) - reference).abs() < 1e-7, "r_max, m = {m}");
    }
}

#[test]
fn between_rest_mass_and_asymptote() {
    let cfg = EigensolveConfig::default();
    for &m in &[0.01, 0.3, 2.0, 7.0, 40.0, 300.0, 2000.0] {
        let s = solve_state(Mass::new(m).unwrap(), &cfg).unwrap();
        assert!(s.energy > m);
        assert!(s.energy <= nonrelativistic_energy(m), "m = {m}");
        assert!(s.slope > 0.0 && s.slope <= 1.0);
        assert_eq!(s.nodes, 0);
    }
}

#[test]
fn asymptote_is_approached() {
    let cfg = EigensolveConfig::default();
    let deviation = |m: f64| {
        let v = e(m, &cfg);
        (v - nonrelativistic_energy(m)).abs() / (v - m)
    };
    assert!(deviation(100.0) < 1e-2);
    assert!(deviation(200.0) < deviation(50.0));
}
