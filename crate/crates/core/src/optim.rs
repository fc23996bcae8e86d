//! Bracketed one-dimensional extremum search over `x > 0`.
//!
//! Both bound optimizations run over positive scale-like variables (a contact
//! point `t` and a Gaussian width parameter `μ`), so the search works in
//! `u = ln x`: geometric bracketing from the starting point, then golden
//! section refinement until the bracket is narrower than `rel_tol` in `u`.

use thiserror::Error;

use crate::scalar::Real;

/// Bracketing gives up once it has moved this many decades from `x_init`.
pub const MAX_DECADES: f64 = 100.0;
const MAX_GOLDEN_ITERATIONS: usize = 400;
const AUDIT_SAMPLES: usize = 64;

const GOLDEN: f64 = 1.618_033_988_749_895;
/// `2 - φ`, the interior fraction of a golden section step.
const GOLDEN_FRACTION: f64 = 0.381_966_011_250_105_1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimError {
    #[error("no interior extremum within {decades} decades of x = {x_init} (objective monotone towards x = {last_x:e})")]
    BracketFailure { x_init: f64, last_x: f64, decades: f64 },
    #[error("objective is not finite at x = {x:e}")]
    NonFinite { x: f64 },
    #[error("starting point must be finite and > 0, got {0}")]
    InvalidStart(f64),
    #[error("rel_tol must be finite and > 0, got {0}")]
    InvalidTolerance(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimResult<T> {
    pub x_star: T,
    pub f_star: T,
    pub evaluations: usize,
    pub converged: bool,
    pub bracket: (T, T),
    /// False when the post-hoc scan of the decade around `x_star` found more
    /// than one local extremum.
    pub unimodal: bool,
    /// The objective was constant at the starting point; any `x` is optimal.
    pub flat: bool,
}

/// Maximizes `f` over `x > 0`.
pub fn maximize<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    x_init: T,
    rel_tol: T,
) -> Result<OptimResult<T>, OptimError> {
    let result = minimize(|x| -f(x), x_init, rel_tol)?;
    Ok(OptimResult {
        f_star: -result.f_star,
        ..result
    })
}

/// Minimizes `f` over `x > 0`.
pub fn minimize<T: Real, F: FnMut(T) -> T>(
    f: F,
    x_init: T,
    rel_tol: T,
) -> Result<OptimResult<T>, OptimError> {
    if !(x_init.is_finite() && x_init > T::zero()) {
        return Err(OptimError::InvalidStart(x_init.to_f64_lossy()));
    }
    if !(rel_tol.is_finite() && rel_tol > T::zero()) {
        return Err(OptimError::InvalidTolerance(rel_tol.to_f64_lossy()));
    }
    let mut objective = LogObjective { f, evaluations: 0 };
    let u0 = x_init.ln();

    let bracket = match find_bracket(&mut objective, u0)? {
        Bracket::Flat(value) => {
            let two = T::lit(2.0);
            return Ok(OptimResult {
                x_star: x_init,
                f_star: value,
                evaluations: objective.evaluations,
                converged: true,
                bracket: (x_init / two, x_init * two),
                unimodal: true,
                flat: true,
            });
        }
        Bracket::Found(b) => b,
    };

    let (u_star, f_star, lo, hi, converged) = golden_section(&mut objective, bracket, rel_tol)?;
    let unimodal = audit_unimodal(&mut objective, u_star)?;
    Ok(OptimResult {
        x_star: u_star.exp(),
        f_star,
        evaluations: objective.evaluations,
        converged,
        bracket: (lo.exp(), hi.exp()),
        unimodal,
        flat: false,
    })
}

struct LogObjective<F> {
    f: F,
    evaluations: usize,
}

impl<F> LogObjective<F> {
    fn at<T: Real>(&mut self, u: T) -> Result<T, OptimError>
    where
        F: FnMut(T) -> T,
    {
        self.evaluations += 1;
        let x = u.exp();
        let value = (self.f)(x);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(OptimError::NonFinite { x: x.to_f64_lossy() })
        }
    }
}

/// Three abscissae `a < b < c` (in `u`) with `f(b) <= min(f(a), f(c))`.
#[derive(Clone, Copy)]
struct Triple<T> {
    a: T,
    b: T,
    c: T,
    fb: T,
}

enum Bracket<T> {
    Flat(T),
    Found(Triple<T>),
}

fn find_bracket<T: Real, F: FnMut(T) -> T>(
    obj: &mut LogObjective<F>,
    u0: T,
) -> Result<Bracket<T>, OptimError> {
    let step = T::LN_2();
    let f0 = obj.at(u0)?;
    let f_right = obj.at(u0 + step)?;
    let f_left = obj.at(u0 - step)?;
    if f_right == f0 && f_left == f0 {
        return Ok(Bracket::Flat(f0));
    }
    if f0 < f_right && f0 < f_left {
        return Ok(Bracket::Found(Triple { a: u0 - step, b: u0, c: u0 + step, fb: f0 }));
    }

    // Walk downhill with geometrically growing steps.
    let direction = if f_right < f_left { T::one() } else { -T::one() };
    let limit = T::lit(MAX_DECADES) * T::LN_10();
    let golden = T::lit(GOLDEN);
    let (mut prev, mut cur) = (u0, u0 + direction * step);
    let mut f_cur = if direction > T::zero() { f_right } else { f_left };
    let mut width = step;
    loop {
        width = width * golden;
        let next = cur + direction * width;
        if (next - u0).abs() > limit {
            return Err(OptimError::BracketFailure {
                x_init: u0.exp().to_f64_lossy(),
                last_x: cur.exp().to_f64_lossy(),
                decades: MAX_DECADES,
            });
        }
        let f_next = obj.at(next)?;
        if f_next > f_cur {
            let (a, c) = if direction > T::zero() { (prev, next) } else { (next, prev) };
            return Ok(Bracket::Found(Triple { a, b: cur, c, fb: f_cur }));
        }
        prev = cur;
        cur = next;
        f_cur = f_next;
    }
}

fn golden_section<T: Real, F: FnMut(T) -> T>(
    obj: &mut LogObjective<F>,
    t: Triple<T>,
    rel_tol: T,
) -> Result<(T, T, T, T, bool), OptimError> {
    let frac = T::lit(GOLDEN_FRACTION);
    let (mut a, mut c) = (t.a, t.c);
    let (mut x, mut fx) = (t.b, t.fb);
    for _ in 0..MAX_GOLDEN_ITERATIONS {
        if c - a <= rel_tol {
            return Ok((x, fx, a, c, true));
        }
        // Probe inside the larger of the two sub-intervals.
        let probe = if x - a > c - x { x - frac * (x - a) } else { x + frac * (c - x) };
        let fp = obj.at(probe)?;
        if fp < fx {
            if probe < x {
                c = x;
            } else {
                a = x;
            }
            x = probe;
            fx = fp;
        } else if probe < x {
            a = probe;
        } else {
            c = probe;
        }
    }
    Ok((x, fx, a, c, c - a <= rel_tol))
}

/// Counts local minima of the objective on a log grid across the decade
/// centred on `u_star`; more than one means the unimodality assumption failed.
fn audit_unimodal<T: Real, F: FnMut(T) -> T>(
    obj: &mut LogObjective<F>,
    u_star: T,
) -> Result<bool, OptimError> {
    let half_decade = T::LN_10() * T::lit(0.5);
    let values = (0..AUDIT_SAMPLES)
        .map(|i| {
            let s = T::from_count(i) / T::from_count(AUDIT_SAMPLES - 1);
            obj.at(u_star - half_decade + s * (half_decade + half_decade))
        })
        .collect::<Result<Vec<T>, _>>()?;
    let scale = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let noise = scale * T::epsilon() * T::lit(64.0);
    let mut minima = 0;
    let mut descending = true;
    for pair in values.windows(2) {
        let delta = pair[1] - pair[0];
        if delta > noise && descending {
            minima += 1;
            descending = false;
        } else if delta < -noise {
            descending = true;
        }
    }
    Ok(minima <= 1)
}
