#![allow(dead_code)]

use std::sync::OnceLock;

use bosebound::{default_mass_grid, EigensolveConfig, Kernel};

pub fn kernel() -> &'static Kernel {
    static KERNEL: OnceLock<Kernel> = OnceLock::new();
    KERNEL.get_or_init(|| Kernel::build(&default_mass_grid(), &EigensolveConfig::default()).unwrap())
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Brute-force extremum of `f` on `points_per_decade` log-spaced samples of
/// `[lo, hi]`, refined by a parabola through the best sample and its
/// neighbours. Returns `(x, f(x))`; panics if the extremum sits on the edge.
pub fn scan(f: impl Fn(f64) -> f64, lo: f64, hi: f64, points_per_decade: usize, maximize: bool) -> (f64, f64) {
    let decades = (hi / lo).log10();
    let n = (decades * points_per_decade as f64).ceil() as usize;
    let step = (hi / lo).ln() / n as f64;
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut best = (0, f64::NEG_INFINITY);
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let v = sign * f(lo * (step * i as f64).exp());
        values.push(v);
        if v > best.1 {
            best = (i, v);
        }
    }
    let i = best.0;
    assert!(i > 0 && i < n, "scan extremum at the edge of [{lo}, {hi}]");
    let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
    let denom = a - 2.0 * b + c;
    let shift = if denom < 0.0 { 0.5 * (a - c) / denom } else { 0.0 };
    let u = (lo.ln() + step * (i as f64 + shift)).exp();
    let fu = sign * f(u);
    if fu > b {
        (u, sign * fu)
    } else {
        (lo * (step * i as f64).exp(), sign * b)
    }
}
