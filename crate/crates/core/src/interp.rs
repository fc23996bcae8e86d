//! Shape-preserving piecewise cubic Hermite interpolation.
//!
//! Node slopes are either supplied (e.g. exact derivatives) or estimated with
//! the Fritsch–Butland weighted harmonic mean. Monotonicity is enforced per
//! interval with the Fritsch–Carlson limiter applied locally, so changing one
//! interval never alters the interpolant on another.

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterpError {
    #[error("need at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("abscissae must be finite and strictly increasing (violated at index {0})")]
    NotIncreasing(usize),
    #[error("length mismatch: {xs} abscissae, {other} values")]
    LengthMismatch { xs: usize, other: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    slopes: Vec<T>,
}

impl<T: Real> MonotoneCubic<T> {
    /// Builds the interpolant; `slopes` defaults to Fritsch–Butland estimates.
    pub fn new(xs: Vec<T>, ys: Vec<T>, slopes: Option<Vec<T>>) -> Result<Self, InterpError> {
        if xs.len() < 2 {
            return Err(InterpError::TooFewNodes(xs.len()));
        }
        if ys.len() != xs.len() {
            return Err(InterpError::LengthMismatch { xs: xs.len(), other: ys.len() });
        }
        for i in 0..xs.len() {
            let finite = xs[i].is_finite() && ys[i].is_finite();
            if !finite || (i > 0 && xs[i] <= xs[i - 1]) {
                return Err(InterpError::NotIncreasing(i));
            }
        }
        let slopes = match slopes {
            Some(s) if s.len() != xs.len() => {
                return Err(InterpError::LengthMismatch { xs: xs.len(), other: s.len() })
            }
            Some(s) => s,
            None => butland_slopes(&xs, &ys),
        };
        Ok(Self { xs, ys, slopes })
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn ys(&self) -> &[T] {
        &self.ys
    }

    pub fn slopes(&self) -> &[T] {
        &self.slopes
    }

    pub fn x_min(&self) -> T {
        self.xs[0]
    }

    pub fn x_max(&self) -> T {
        self.xs[self.xs.len() - 1]
    }

    /// Index `i` with `xs[i] <= x <= xs[i+1]`, clamped to the table.
    pub fn interval(&self, x: T) -> usize {
        let last = self.xs.len() - 2;
        match self.xs.binary_search_by(|probe| probe.partial_cmp(&x).expect("finite abscissa")) {
            Ok(i) => i.min(last),
            Err(0) => 0,
            Err(i) => (i - 1).min(last),
        }
    }

    /// Evaluates the interpolant; `x` is clamped to `[x_min, x_max]`.
    pub fn eval(&self, x: T) -> T {
        let x = x.max(self.x_min()).min(self.x_max());
        let i = self.interval(x);
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        if x == x0 {
            return y0;
        }
        if x == x1 {
            return y1;
        }
        let h = x1 - x0;
        let (d0, d1) = limited_slopes(y0, y1, h, self.slopes[i], self.slopes[i + 1]);
        let s = (x - x0) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let h00 = two * s3 - three * s2 + T::one();
        let h10 = s3 - two * s2 + s;
        let h01 = -two * s3 + three * s2;
        let h11 = s3 - s2;
        h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
    }
}

/// Fritsch–Carlson limiter restricted to one interval.
fn limited_slopes<T: Real>(y0: T, y1: T, h: T, d0: T, d1: T) -> (T, T) {
    let secant = (y1 - y0) / h;
    if secant == T::zero() {
        return (T::zero(), T::zero());
    }
    let mut alpha = d0 / secant;
    let mut beta = d1 / secant;
    if alpha < T::zero() {
        alpha = T::zero();
    }
    if beta < T::zero() {
        beta = T::zero();
    }
    let radius2 = alpha * alpha + beta * beta;
    let nine = T::lit(9.0);
    if radius2 > nine {
        let tau = T::lit(3.0) / radius2.sqrt();
        alpha = alpha * tau;
        beta = beta * tau;
    }
    (alpha * secant, beta * secant)
}

fn butland_slopes<T: Real>(xs: &[T], ys: &[T]) -> Vec<T> {
    let n = xs.len();
    let secants: Vec<T> = (0..n - 1)
        .map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
        .collect();
    let mut d = vec![T::zero(); n];
    d[0] = secants[0];
    d[n - 1] = secants[n - 2];
    for i in 1..n - 1 {
        let (a, b) = (secants[i - 1], secants[i]);
        if a * b > T::zero() {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            let w1 = T::lit(2.0) * h1 + h0;
            let w2 = h1 + T::lit(2.0) * h0;
            d[i] = (w1 + w2) / (w1 / a + w2 / b);
        }
    }
    d
}
