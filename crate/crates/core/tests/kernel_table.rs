mod common;

use bosebound::{read_kernel, solve_e, write_kernel, EigensolveConfig, Kernel, Mass};
use common::kernel;
use proptest::prelude::*;

#[test]
fn default_table_tracks_direct_solves() {
    let k = kernel();
    let cfg = EigensolveConfig::default();
    for &m in &[0.013, 0.42, 1.7, 6.1, 33.0, 250.0, 4321.0, 2.5e4] {
        let exact = solve_e(Mass::new(m).unwrap(), &cfg).unwrap();
        let err = (k.eval(m) - exact).abs();
        assert!(err < 1e-7, "m = {m}: {err}");
        assert!(err <= k.error_bound(m) + 1e-8, "m = {m}");
    }
}

#[test]
fn cache_round_trip_is_exact() {
    let k = kernel();
    let mut buf = Vec::new();
    write_kernel(k, &mut buf).unwrap();
    let back: Kernel = read_kernel(buf.as_slice()).unwrap();
    assert_eq!(back.nodes(), k.nodes());
    for &m in &[0.0, 0.37, 12.5, 9999.0, 5e4] {
        assert_eq!(back.eval(m).to_bits(), k.eval(m).to_bits());
    }
}

proptest! {
    #[test]
    fn energy_rises_binding_falls(a in 0.0f64..2e4, frac in 1e-6f64..1.0) {
        let k = kernel();
        let b = a + frac * (1.0 + a);
        prop_assert!(k.eval(b) > k.eval(a));
        prop_assert!(k.binding(b) < k.binding(a));
    }
}
