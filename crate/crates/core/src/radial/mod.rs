//! The one-body kernel e(m): lowest eigenvalue of `-Δ + √(m² + r²)` in three
//! dimensions, its tabulation, and the on-disk table format.

mod cache;
mod kernel;
mod shoot;

use thiserror::Error;

use crate::interp::InterpError;
use crate::scalar::Real;

pub use cache::{config_hash, read_kernel, write_kernel, CACHE_MAGIC};
pub use kernel::{default_mass_grid, KernelFunction, KernelNode, KernelRegion};
pub use shoot::{solve_e, solve_state, Eigenstate};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadialError {
    #[error("mass must be finite and >= 0, got {0}")]
    InvalidMass(f64),
    #[error("invalid eigensolver configuration: {0}")]
    Config(String),
    #[error("bisection did not converge for m = {mass} after {bisections} steps (bracket width {width:e})")]
    NonConvergence { mass: f64, bisections: usize, width: f64 },
    #[error("r_max = {r_max} too small for m = {mass}: ground-state tail amplitude {amplitude:e} at the boundary")]
    DomainTooSmall { mass: f64, r_max: f64, amplitude: f64 },
    #[error("mass grid: {0}")]
    Grid(String),
    #[error("kernel interpolation: {0}")]
    Interp(#[from] InterpError),
    #[error("kernel cache: {0}")]
    Cache(String),
}

/// Particle mass in natural units, `m >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Mass<T>(T);

impl<T: Real> Mass<T> {
    pub fn new(m: T) -> Result<Self, RadialError> {
        if m.is_finite() && m >= T::zero() {
            Ok(Self(m))
        } else {
            Err(RadialError::InvalidMass(m.to_f64_lossy()))
        }
    }

    pub fn value(self) -> T {
        self.0
    }
}

/// Discretization controls for [`solve_e`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigensolveConfig<T> {
    /// Truncation radius; `None` selects `12 + 4 m^{1/3}`.
    pub r_max: Option<T>,
    /// Intervals on the coarse grid; the Richardson partner uses twice as many.
    pub grid_points: usize,
    /// Absolute tolerance on e(m).
    pub tol_energy: T,
    pub max_bisections: usize,
}

impl<T: Real> Default for EigensolveConfig<T> {
    fn default() -> Self {
        // Numerov needs h²/12 well above machine epsilon.
        let grid_points = if T::epsilon() > T::lit(1e-10) { 1_000 } else { 20_000 };
        Self {
            r_max: None,
            grid_points,
            tol_energy: T::lit(1e-8).max(T::epsilon() * T::lit(1e3)),
            max_bisections: 200,
        }
    }
}

impl<T: Real> EigensolveConfig<T> {
    pub const MIN_GRID_POINTS: usize = 1000;

    pub fn validate(&self) -> Result<(), RadialError> {
        if self.grid_points < Self::MIN_GRID_POINTS {
            return Err(RadialError::Config(format!(
                "grid_points = {} (need >= {})",
                self.grid_points,
                Self::MIN_GRID_POINTS
            )));
        }
        if !(self.tol_energy.is_finite() && self.tol_energy > T::zero()) {
            return Err(RadialError::Config(format!("tol_energy = {}", self.tol_energy)));
        }
        if let Some(r) = self.r_max {
            if !(r.is_finite() && r > T::zero()) {
                return Err(RadialError::Config(format!("r_max = {r}")));
            }
        }
        if self.max_bisections == 0 {
            return Err(RadialError::Config("max_bisections = 0".into()));
        }
        Ok(())
    }

    /// Truncation radius used for mass `m`.
    pub fn r_max_for(&self, m: T) -> T {
        self.r_max
            .unwrap_or_else(|| T::lit(12.0) + T::lit(4.0) * m.cbrt())
    }

    /// Canonical one-line description, hashed into the cache header.
    pub fn describe(&self) -> String {
        let r_max = match self.r_max {
            Some(r) => r.to_string(),
            None => "auto".to_string(),
        };
        format!(
            "r_max={} grid_points={} tol_energy={} max_bisections={}",
            r_max, self.grid_points, self.tol_energy, self.max_bisections
        )
    }
}

/// Nonrelativistic asymptote `m + 3/√(2m)`.
pub fn nonrelativistic_energy<T: Real>(m: T) -> T {
    m + nonrelativistic_binding(m)
}

/// `3/√(2m)`, the large-m limit of `e(m) - m`.
pub fn nonrelativistic_binding<T: Real>(m: T) -> T {
    T::lit(3.0) / (T::lit(2.0) * m).sqrt()
}
