use rayon::prelude::*;

use super::{nonrelativistic_binding, solve_state, EigensolveConfig, Eigenstate, Mass, RadialError};
use crate::interp::MonotoneCubic;
use crate::scalar::Real;

/// Interpolation error allowed between nodes, in units of `tol_energy`.
const INTERP_TOLERANCE_FACTOR: f64 = 10.0;
/// Maximum number of midpoint-refinement rounds during construction.
const MAX_REFINEMENT_ROUNDS: usize = 24;

/// One tabulated solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelNode<T> {
    pub mass: T,
    pub energy: T,
    /// Error bound attached to this node (solver tolerance, or the largest
    /// midpoint interpolation deviation of an adjacent interval).
    pub error: T,
    /// de/dm at the node.
    pub slope: T,
}

impl<T: Real> KernelNode<T> {
    fn from_state(s: &Eigenstate<T>, tol: T) -> Self {
        Self {
            mass: s.mass,
            energy: s.energy,
            error: tol,
            slope: s.slope,
        }
    }
}

/// Where a kernel evaluation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelRegion {
    Table,
    /// Above the largest node: nonrelativistic tail.
    Tail,
}

/// Tabulated e(m), immutable once built.
///
/// The table interpolates the binding `e(m) - m` as a function of
/// `x = ln(1 + m)` with cubic Hermite segments through exact
/// (Feynman–Hellmann) node slopes, limited to stay monotone.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelFunction<T> {
    nodes: Vec<KernelNode<T>>,
    interp: MonotoneCubic<T>,
    config: EigensolveConfig<T>,
}

/// Default table: `m = 0` plus 160 nodes uniform in `ln(1 + m)` up to `m = 10⁴`.
pub fn default_mass_grid<T: Real>() -> Vec<T> {
    let count = 161;
    let top = T::lit(1e4).ln_1p();
    (0..count)
        .map(|i| {
            if i == 0 {
                T::zero()
            } else {
                (top * T::from_count(i) / T::from_count(count - 1)).exp_m1()
            }
        })
        .collect()
}

impl<T: Real> KernelFunction<T> {
    /// Solves e(m) on `m_grid`, then checks every interval at its midpoint
    /// and splits intervals whose interpolation error exceeds
    /// `10 × tol_energy`.
    pub fn build(m_grid: &[T], config: &EigensolveConfig<T>) -> Result<Self, RadialError> {
        config.validate()?;
        if m_grid.len() < 2 {
            return Err(RadialError::Grid(format!(
                "need at least 2 nodes, got {}",
                m_grid.len()
            )));
        }
        for (i, &m) in m_grid.iter().enumerate() {
            Mass::new(m)?;
            if i > 0 && m <= m_grid[i - 1] {
                return Err(RadialError::Grid(format!(
                    "grid not strictly increasing at index {i}"
                )));
            }
        }

        let tol = config.tol_energy;
        let mut nodes = solve_all(m_grid, config)?
            .iter()
            .map(|s| KernelNode::from_state(s, tol))
            .collect::<Vec<_>>();
        let allowed = T::lit(INTERP_TOLERANCE_FACTOR) * tol;

        // Intervals still to be verified, by left-node mass.
        let mut pending: Vec<(T, T)> = nodes.windows(2).map(|p| (p[0].mass, p[1].mass)).collect();
        for _ in 0..MAX_REFINEMENT_ROUNDS {
            if pending.is_empty() {
                break;
            }
            let current = Self::assemble(nodes.clone(), *config)?;
            let midpoints: Vec<T> = pending
                .iter()
                .map(|&(a, b)| midpoint_mass(a, b))
                .collect();
            let states = solve_all(&midpoints, config)?;

            let mut next = Vec::new();
            for (&(a, b), state) in pending.iter().zip(&states) {
                let deviation = (current.eval(state.mass) - state.energy).abs();
                if deviation > allowed {
                    nodes.push(KernelNode::from_state(state, tol));
                    next.push((a, state.mass));
                    next.push((state.mass, b));
                } else {
                    for node in nodes.iter_mut().filter(|n| n.mass == a || n.mass == b) {
                        node.error = node.error.max(deviation);
                    }
                }
            }
            nodes.sort_by(|p, q| p.mass.partial_cmp(&q.mass).expect("finite masses"));
            pending = next;
        }
        if !pending.is_empty() {
            return Err(RadialError::Grid(format!(
                "interpolation error still above {} after {} refinement rounds",
                allowed, MAX_REFINEMENT_ROUNDS
            )));
        }
        Self::assemble(nodes, *config)
    }

    /// Rebuilds a kernel from stored nodes (no solves).
    pub fn from_nodes(
        nodes: Vec<KernelNode<T>>,
        config: EigensolveConfig<T>,
    ) -> Result<Self, RadialError> {
        if nodes.len() < 2 {
            return Err(RadialError::Grid(format!(
                "need at least 2 nodes, got {}",
                nodes.len()
            )));
        }
        Self::assemble(nodes, config)
    }

    fn assemble(nodes: Vec<KernelNode<T>>, config: EigensolveConfig<T>) -> Result<Self, RadialError> {
        let xs = nodes.iter().map(|n| n.mass.ln_1p()).collect();
        let ys = nodes.iter().map(|n| n.energy - n.mass).collect();
        // d(e - m)/dx = (de/dm - 1)(1 + m)
        let slopes = nodes
            .iter()
            .map(|n| (n.slope - T::one()) * (T::one() + n.mass))
            .collect();
        let interp = MonotoneCubic::new(xs, ys, Some(slopes))?;
        Ok(Self { nodes, interp, config })
    }

    pub fn nodes(&self) -> &[KernelNode<T>] {
        &self.nodes
    }

    pub fn config(&self) -> &EigensolveConfig<T> {
        &self.config
    }

    pub fn m_min(&self) -> T {
        self.nodes[0].mass
    }

    pub fn m_max(&self) -> T {
        self.nodes[self.nodes.len() - 1].mass
    }

    /// e(m) for any `m >= 0`.
    pub fn eval(&self, m: T) -> T {
        self.eval_with_region(m).0
    }

    /// e(m) - m, without the cancellation of `eval(m) - m` at large `m`.
    pub fn binding(&self, m: T) -> T {
        let m = m.max(T::zero());
        if m > self.m_max() {
            self.tail_binding(m)
        } else {
            self.interp.eval(m.ln_1p())
        }
    }

    pub fn eval_with_region(&self, m: T) -> (T, KernelRegion) {
        debug_assert!(m >= T::zero(), "kernel evaluated at negative mass");
        let m = m.max(T::zero());
        if m > self.m_max() {
            return (m + self.tail_binding(m), KernelRegion::Tail);
        }
        if let Ok(i) = self
            .nodes
            .binary_search_by(|n| n.mass.partial_cmp(&m).expect("finite mass"))
        {
            return (self.nodes[i].energy, KernelRegion::Table);
        }
        (m + self.interp.eval(m.ln_1p()), KernelRegion::Table)
    }

    /// Absolute error bound on `eval(m)`.
    pub fn error_bound(&self, m: T) -> T {
        let base = T::lit(INTERP_TOLERANCE_FACTOR) * self.config.tol_energy;
        if m > self.m_max() {
            base + self.tail_correction(m).abs()
        } else {
            base
        }
    }

    /// Beyond the table: `3/√(2m)` plus the mismatch at the last node,
    /// decaying like `m⁻²` (the order of the first relativistic correction).
    fn tail_binding(&self, m: T) -> T {
        nonrelativistic_binding(m) + self.tail_correction(m)
    }

    fn tail_correction(&self, m: T) -> T {
        let top = self.nodes[self.nodes.len() - 1];
        let mismatch = (top.energy - top.mass) - nonrelativistic_binding(top.mass);
        let ratio = top.mass / m;
        mismatch * ratio * ratio
    }
}

fn midpoint_mass<T: Real>(a: T, b: T) -> T {
    ((a.ln_1p() + b.ln_1p()) * T::lit(0.5)).exp_m1()
}

fn solve_all<T: Real>(
    masses: &[T],
    config: &EigensolveConfig<T>,
) -> Result<Vec<Eigenstate<T>>, RadialError> {
    masses
        .par_iter()
        .map(|&m| solve_state(Mass::new(m)?, config))
        .collect()
}
