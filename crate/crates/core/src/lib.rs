//! Lower and upper bounds on the ground-state energy of N identical bosons
//! with semirelativistic kinetic energy `Σ √(m² + p_i²)` and a pair potential
//! `V(r) = g(r²)`.
//!
//! The pieces, bottom up:
//!
//! * [`special`]: `K₁`, `Γ` and the first Airy zero,
//! * [`radial`]: the one-body oscillator kernel `e(m)` and its cached table,
//! * [`potential`]: pair potentials and their tangent lines,
//! * [`optim`]: one-dimensional log-space optimizer,
//! * [`bounds`]: the bound formulas themselves.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! `f64`.
//!
//! ```no_run
//! use bosebound::{bounds_for, Kernel, Potential, System, EigensolveConfig, default_mass_grid};
//!
//! let kernel = Kernel::build(&default_mass_grid(), &EigensolveConfig::default()).unwrap();
//! let system = System::new(8, 1.0).unwrap();
//! let potential: Potential = "power:c=1,q=2".parse().unwrap();
//! let pair = bounds_for(&system, &potential, &kernel, 1e-10).unwrap();
//! println!("{:?} {:?}", pair.lower.map(|b| b.value), pair.upper.map(|b| b.value));
//! ```

pub mod bounds;
pub mod interp;
pub mod optim;
pub mod potential;
pub mod radial;
pub mod scalar;
pub mod special;

pub use bounds::{
    bounds_for, check_coulomb_validity, lower_bound_envelope, lower_bound_oscillator,
    scaled_one_body, sweep_curve, ultra_bounds, upper_bound_variational, BoundKind, BoundMethod,
    BoundPair, BoundResult, BoundsError, CoulombValidity, CurveRow, EnergyCurve, SystemParams,
    UltraBounds, DEFAULT_OPT_TOL,
};
pub use optim::{maximize, minimize, OptimError, OptimResult};
pub use potential::{PotentialDescriptor, PotentialError, PotentialSpec};
pub use radial::{
    default_mass_grid, read_kernel, solve_e, solve_state, write_kernel, EigensolveConfig,
    Eigenstate, KernelFunction, Mass, RadialError,
};
pub use scalar::Real;
pub use special::{airy_first_zero, bessel_k1, gamma, scaled_exp_k1, SpecialFunctionError};

pub type Kernel = KernelFunction<f64>;
pub type Potential = PotentialSpec<f64>;
pub type System = SystemParams<f64>;
pub type Bound = BoundResult<f64>;
pub type Bounds = BoundPair<f64>;
pub type Curve = EnergyCurve<f64>;
pub type SolverConfig = EigensolveConfig<f64>;

pub type Kernel32 = KernelFunction<f32>;
pub type Potential32 = PotentialSpec<f32>;
pub type System32 = SystemParams<f32>;
