//! Ground-state energy bounds for N identical bosons with kinetic energy
//! `√(m² + p²)` per particle and pair potential `V(r) = g(r²)`.
//!
//! Permutation symmetry reduces both bounds to one-body expressions with the
//! constants `β = N`, `λ = (N-1)/N` and `γ = N(N-1)`:
//!
//! * lower bounds scale the one-body oscillator kernel e(m) and, for convex
//!   `g`, maximize over tangential oscillators (`lower`),
//! * upper bounds minimize a Gaussian trial expectation over its width
//!   (`upper`), available for the power family `c sgn(q) r^q`,
//! * at `m = 0` and `q >= 2` both collapse to closed forms (`ultra`).

mod curve;
mod lower;
mod ultra;
mod upper;

use thiserror::Error;

use crate::optim::{OptimError, OptimResult};
use crate::potential::PotentialError;
use crate::radial::RadialError;
use crate::scalar::Real;
use crate::special::SpecialFunctionError;

pub use curve::{bounds_for, sweep_curve, BoundPair, CurveRow, EnergyCurve};
pub use lower::{envelope_objective, lower_bound_envelope, lower_bound_oscillator, scaled_one_body};
pub use ultra::{ultra_bounds, UltraBounds};
pub use upper::{check_coulomb_validity, upper_bound_variational, variational_objective, CoulombValidity};

/// Default relative tolerance on optimizer locations (in `ln x`).
pub const DEFAULT_OPT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("particle count N must be >= 2, got {0}")]
    InvalidParticleCount(usize),
    #[error("mass must be finite and >= 0, got {0}")]
    InvalidMass(f64),
    #[error("coupling c must be finite and > 0, got {0}")]
    InvalidCoupling(f64),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Optim(#[from] OptimError),
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
    #[error("coupling too strong for a variational minimum (margin {margin})")]
    CouplingTooStrong { margin: f64 },
    #[error("bounds out of order: lower {lower} > upper {upper}")]
    OrderingViolation { lower: f64, upper: f64 },
    #[error("{side} bound failed: {source}")]
    Side {
        side: BoundKind,
        #[source]
        source: Box<BoundsError>,
    },
}

impl BoundsError {
    /// The underlying error with any [`BoundsError::Side`] wrappers removed.
    pub fn root(&self) -> &BoundsError {
        match self {
            BoundsError::Side { source, .. } => source.root(),
            other => other,
        }
    }
}

/// Particle count and mass; the reduction constants are derived on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams<T> {
    n: usize,
    m: T,
}

impl<T: Real> SystemParams<T> {
    pub fn new(n: usize, m: T) -> Result<Self, BoundsError> {
        if n < 2 {
            return Err(BoundsError::InvalidParticleCount(n));
        }
        if !(m.is_finite() && m >= T::zero()) {
            return Err(BoundsError::InvalidMass(m.to_f64_lossy()));
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mass(&self) -> T {
        self.m
    }

    pub fn with_mass(&self, m: T) -> Result<Self, BoundsError> {
        Self::new(self.n, m)
    }

    /// β = N
    pub fn beta(&self) -> T {
        T::from_count(self.n)
    }

    /// λ = (N-1)/N
    pub fn lambda(&self) -> T {
        T::from_count(self.n - 1) / T::from_count(self.n)
    }

    /// γ = N(N-1)
    pub fn gamma(&self) -> T {
        T::from_count(self.n * (self.n - 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Lower,
    Upper,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
        })
    }
}

/// Which formula produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMethod {
    /// Scaled one-body oscillator kernel (`g` linear).
    Oscillator,
    /// Envelope of tangential oscillators, maximized over the contact point.
    Envelope,
    /// Gaussian trial function, minimized over its width.
    Variational,
    /// Massless closed form.
    UltraRelativistic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult<T> {
    pub kind: BoundKind,
    pub method: BoundMethod,
    pub value: T,
    /// Contact point `t*` (envelope) or width parameter `μ*` (variational).
    pub optimizer: Option<T>,
    pub diagnostics: Option<OptimResult<T>>,
    /// Absolute numerical uncertainty of `value` (kernel interpolation error
    /// propagated through the scaling law; zero for closed forms).
    pub uncertainty: T,
}

impl<T: Real> BoundResult<T> {
    fn closed_form(kind: BoundKind, value: T) -> Self {
        Self {
            kind,
            method: BoundMethod::UltraRelativistic,
            value,
            optimizer: None,
            diagnostics: None,
            uncertainty: T::zero(),
        }
    }
}

fn check_coupling<T: Real>(c: T) -> Result<(), BoundsError> {
    if c.is_finite() && c > T::zero() {
        Ok(())
    } else {
        Err(BoundsError::InvalidCoupling(c.to_f64_lossy()))
    }
}
