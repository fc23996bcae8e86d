//! Pair potentials `V(r) = g(r²)` and their tangential oscillators.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("coupling c must be finite and > 0, got {0}")]
    InvalidCoupling(f64),
    #[error("exponent q must be finite, got {0}")]
    InvalidExponent(f64),
    #[error("contact point t must be finite and > 0, got {0}")]
    InvalidContact(f64),
    #[error("g'(t) must be > 0; found g'({t}) = {value}")]
    NotIncreasing { t: f64, value: f64 },
    #[error("g is not convex: g' decreases between t = {t0} and t = {t1}")]
    NotConvex { t0: f64, t1: f64 },
    #[error("lower bounds need g'' >= 0 (power laws with q >= 2), got q = {0}")]
    ExponentBelowTwo(f64),
    #[error("cannot parse potential `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Structured tag describing where a [`PotentialSpec`] came from.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialDescriptor<T> {
    /// `V(r) = c sgn(q) r^q`.
    PowerLaw { c: T, q: T },
    Custom { name: String },
}

impl<T: Real> fmt::Display for PotentialDescriptor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PowerLaw { c, q } => write!(f, "power:c={c},q={q}"),
            Self::Custom { name } => write!(f, "custom:{name}"),
        }
    }
}

#[derive(Clone)]
enum Shape<T> {
    PowerLaw { c: T, q: T },
    Custom { name: String, g: ScalarFn<T>, g_prime: ScalarFn<T> },
}

/// A transformation `g` with its derivative, defining `V(r) = g(r²)`.
#[derive(Clone)]
pub struct PotentialSpec<T> {
    shape: Shape<T>,
}

impl<T: Real> fmt::Debug for PotentialSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("PotentialSpec").field(&self.descriptor()).finish()
    }
}

/// Tangential oscillator `a + b r²` touching `g(r²)` at `r² = t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentLine<T> {
    pub t: T,
    /// `g(t) - t g'(t)`
    pub a: T,
    /// `g'(t)`
    pub b: T,
}

impl<T: Real> TangentLine<T> {
    /// Value of the tangent at `s = r²`.
    pub fn at(&self, s: T) -> T {
        self.a + self.b * s
    }
}

fn sign<T: Real>(q: T) -> T {
    if q > T::zero() {
        T::one()
    } else if q < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

impl<T: Real> PotentialSpec<T> {
    /// `g(t) = c sgn(q) t^{q/2}`.
    pub fn power_law(c: T, q: T) -> Result<Self, PotentialError> {
        if !(c.is_finite() && c > T::zero()) {
            return Err(PotentialError::InvalidCoupling(c.to_f64_lossy()));
        }
        if !q.is_finite() {
            return Err(PotentialError::InvalidExponent(q.to_f64_lossy()));
        }
        Ok(Self { shape: Shape::PowerLaw { c, q } })
    }

    /// A user-supplied `g` with its exact derivative.
    pub fn custom<G, D>(name: impl Into<String>, g: G, g_prime: D) -> Self
    where
        G: Fn(T) -> T + Send + Sync + 'static,
        D: Fn(T) -> T + Send + Sync + 'static,
    {
        Self {
            shape: Shape::Custom {
                name: name.into(),
                g: Arc::new(g),
                g_prime: Arc::new(g_prime),
            },
        }
    }

    pub fn descriptor(&self) -> PotentialDescriptor<T> {
        match &self.shape {
            Shape::PowerLaw { c, q } => PotentialDescriptor::PowerLaw { c: *c, q: *q },
            Shape::Custom { name, .. } => PotentialDescriptor::Custom { name: name.clone() },
        }
    }

    /// `(c, q)` for power laws.
    pub fn power_params(&self) -> Option<(T, T)> {
        match self.shape {
            Shape::PowerLaw { c, q } => Some((c, q)),
            Shape::Custom { .. } => None,
        }
    }

    /// True when `g(t) = c t`, i.e. the pure oscillator.
    pub fn is_oscillator(&self) -> bool {
        matches!(self.shape, Shape::PowerLaw { q, .. } if q == T::lit(2.0))
    }

    pub fn g(&self, t: T) -> T {
        match &self.shape {
            Shape::PowerLaw { c, q } if *q == T::lit(2.0) => *c * t,
            Shape::PowerLaw { c, q } => *c * sign(*q) * t.powf(*q * T::lit(0.5)),
            Shape::Custom { g, .. } => g(t),
        }
    }

    pub fn g_prime(&self, t: T) -> T {
        match &self.shape {
            Shape::PowerLaw { c, q } if *q == T::lit(2.0) => *c,
            Shape::PowerLaw { c, q } => {
                let half_q = *q * T::lit(0.5);
                *c * sign(*q) * half_q * t.powf(half_q - T::one())
            }
            Shape::Custom { g_prime, .. } => g_prime(t),
        }
    }

    /// `V(r) = g(r²)`.
    pub fn potential(&self, r: T) -> T {
        self.g(r * r)
    }

    pub fn tangent_at(&self, t: T) -> Result<TangentLine<T>, PotentialError> {
        if !(t.is_finite() && t > T::zero()) {
            return Err(PotentialError::InvalidContact(t.to_f64_lossy()));
        }
        let b = self.g_prime(t);
        Ok(TangentLine { t, a: self.g(t) - t * b, b })
    }

    /// Checks the lower-bound hypotheses `g' > 0`, `g'' >= 0`.
    ///
    /// Power laws are decided analytically (`q >= 2`). Custom specs are
    /// sampled on `samples` log-spaced points of `[t_lo, t_hi]`; any sampled
    /// violation rejects the spec.
    pub fn audit_convexity(&self, t_lo: T, t_hi: T, samples: usize) -> Result<(), PotentialError> {
        if let Shape::PowerLaw { q, .. } = self.shape {
            return if q >= T::lit(2.0) {
                Ok(())
            } else {
                Err(PotentialError::ExponentBelowTwo(q.to_f64_lossy()))
            };
        }
        let samples = samples.max(2);
        let ratio = (t_hi / t_lo).ln() / T::from_count(samples - 1);
        let mut prev: Option<(T, T)> = None;
        for i in 0..samples {
            let t = t_lo * (ratio * T::from_count(i)).exp();
            let d = self.g_prime(t);
            if !(d.is_finite() && d > T::zero()) {
                return Err(PotentialError::NotIncreasing {
                    t: t.to_f64_lossy(),
                    value: d.to_f64_lossy(),
                });
            }
            if let Some((t0, d0)) = prev {
                if d < d0 - T::lit(1e-12) * d0.abs() {
                    return Err(PotentialError::NotConvex {
                        t0: t0.to_f64_lossy(),
                        t1: t.to_f64_lossy(),
                    });
                }
            }
            prev = Some((t, d));
        }
        Ok(())
    }
}

impl<T: Real> FromStr for PotentialSpec<T> {
    type Err = PotentialError;

    /// Parses `power:c=<real>,q=<real>`; `q` also accepts a fraction `a/b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| PotentialError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body = s
            .trim()
            .strip_prefix("power:")
            .ok_or_else(|| fail("expected `power:c=<real>,q=<real>`"))?;
        let (mut c, mut q) = (None, None);
        for part in body.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| fail("expected key=value pairs"))?;
            let value = parse_real::<T>(value.trim()).ok_or_else(|| fail("bad number"))?;
            match key.trim() {
                "c" if c.is_none() => c = Some(value),
                "q" if q.is_none() => q = Some(value),
                _ => return Err(fail("unknown or repeated key")),
            }
        }
        match (c, q) {
            (Some(c), Some(q)) => Self::power_law(c, q),
            _ => Err(fail("both c and q are required")),
        }
    }
}

fn parse_real<T: Real>(s: &str) -> Option<T> {
    match s.split_once('/') {
        Some((num, den)) => {
            let num: T = num.trim().parse().ok()?;
            let den: T = den.trim().parse().ok()?;
            (den != T::zero()).then(|| num / den)
        }
        None => s.parse().ok(),
    }
}
