//! Outward Numerov shooting with node counting.
//!
//! The reduced radial equation `-u'' + √(m² + r²) u = e u`, `u(0) = 0`, is
//! written for the binding energy `ε = e - m` with the shifted potential
//! `w(r) = √(m² + r²) - m = r² / (√(m² + r²) + m)`, which keeps full
//! precision when `m` is large. For a trial ε the outward solution has a zero
//! in `(0, r_max]` exactly when ε lies above the lowest Dirichlet eigenvalue
//! on `[0, r_max]`, so bisection on ε converges to that eigenvalue. Two grids
//! (`n` and `2n` intervals) are combined by Richardson extrapolation of the
//! O(h⁴) Numerov error.

use super::{EigensolveConfig, Mass, RadialError};
use crate::scalar::Real;

/// Tail amplitude (WKB estimate at `r_max`) above which the domain is
/// considered truncated.
const MAX_TAIL_AMPLITUDE: f64 = 1e-6;
const RENORM_LIMIT: f64 = 1e30;

/// Ground state of the one-body problem at a given mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenstate<T> {
    pub mass: T,
    /// e(m).
    pub energy: T,
    /// e(m) - m.
    pub binding: T,
    /// de/dm by Feynman–Hellmann, `⟨m / √(m² + r²)⟩`.
    pub slope: T,
    /// Sign changes of the eigenfunction inside `(0, r_max)`.
    pub nodes: usize,
    pub r_max: T,
    /// WKB estimate of `|u(r_max)| / max |u|`.
    pub tail_amplitude: T,
    pub bisections: usize,
}

/// Lowest eigenvalue e(m).
pub fn solve_e<T: Real>(m: Mass<T>, cfg: &EigensolveConfig<T>) -> Result<T, RadialError> {
    solve_state(m, cfg).map(|s| s.energy)
}

/// Lowest eigenvalue together with its eigenfunction diagnostics.
pub fn solve_state<T: Real>(
    m: Mass<T>,
    cfg: &EigensolveConfig<T>,
) -> Result<Eigenstate<T>, RadialError> {
    cfg.validate()?;
    let mass = m.value();
    let r_max = cfg.r_max_for(mass);

    let coarse = Discretization::new(mass, r_max, cfg.grid_points);
    let fine = Discretization::new(mass, r_max, 2 * cfg.grid_points);
    let (coarse_eps, coarse_steps) = coarse.bisect(cfg, mass)?;
    let (fine_eps, fine_steps) = fine.bisect(cfg, mass)?;
    let binding = fine_eps + (fine_eps - coarse_eps) / T::lit(15.0);

    let tail_amplitude = fine.tail_amplitude(fine_eps);
    if tail_amplitude > T::lit(MAX_TAIL_AMPLITUDE) {
        return Err(RadialError::DomainTooSmall {
            mass: mass.to_f64_lossy(),
            r_max: r_max.to_f64_lossy(),
            amplitude: tail_amplitude.to_f64_lossy(),
        });
    }
    let u = fine.eigenfunction(fine_eps);
    let nodes = u
        .windows(2)
        .skip(1)
        .take(u.len().saturating_sub(3))
        .filter(|p| p[0] * p[1] < T::zero())
        .count();
    let slope = fine.mass_slope(&u);

    Ok(Eigenstate {
        mass,
        energy: mass + binding,
        binding,
        slope,
        nodes,
        r_max,
        tail_amplitude,
        bisections: coarse_steps + fine_steps,
    })
}

struct Discretization<T> {
    mass: T,
    h: T,
    /// `√(m² + r²) - m` at `r_i = i h`, `i = 0..=n`.
    w: Vec<T>,
}

impl<T: Real> Discretization<T> {
    fn new(mass: T, r_max: T, intervals: usize) -> Self {
        let h = r_max / T::from_count(intervals);
        let w = (0..=intervals)
            .map(|i| {
                let r = h * T::from_count(i);
                if mass == T::zero() {
                    r
                } else {
                    r * r / ((mass * mass + r * r).sqrt() + mass)
                }
            })
            .collect();
        Self { mass, h, w }
    }

    fn intervals(&self) -> usize {
        self.w.len() - 1
    }

    #[inline]
    fn factor(&self, eps: T, i: usize) -> T {
        T::one() + self.h * self.h / T::lit(12.0) * (eps - self.w[i])
    }

    /// Whether the outward solution at `eps` vanishes somewhere in `(0, r_max]`.
    fn has_node(&self, eps: T) -> bool {
        let n = self.intervals();
        let twelve = T::lit(12.0);
        let ten = T::lit(10.0);
        let limit = T::lit(RENORM_LIMIT);
        let mut u_prev = T::zero();
        let mut u = self.h;
        let mut f_prev = self.factor(eps, 0);
        let mut f = self.factor(eps, 1);
        for i in 1..n {
            let f_next = self.factor(eps, i + 1);
            let u_next = ((twelve - ten * f) * u - f_prev * u_prev) / f_next;
            if u_next <= T::zero() {
                return true;
            }
            u_prev = u;
            u = u_next;
            if u > limit {
                u_prev = u_prev / u;
                u = T::one();
            }
            f_prev = f;
            f = f_next;
        }
        false
    }

    /// Returns the bisection midpoint and the number of halvings.
    fn bisect(&self, cfg: &EigensolveConfig<T>, mass: T) -> Result<(T, usize), RadialError> {
        let mut lo = T::zero();
        let mut hi = T::one();
        let mut expansions = 0;
        while !self.has_node(hi) {
            lo = hi;
            hi = hi + hi;
            expansions += 1;
            if expansions > 64 {
                return Err(RadialError::NonConvergence {
                    mass: mass.to_f64_lossy(),
                    bisections: 0,
                    width: f64::INFINITY,
                });
            }
        }
        let mut steps = 0;
        loop {
            let target = (cfg.tol_energy * T::lit(1e-3)).max(T::lit(4.0) * T::epsilon() * hi);
            if hi - lo <= target {
                break;
            }
            if steps >= cfg.max_bisections {
                if hi - lo > cfg.tol_energy {
                    return Err(RadialError::NonConvergence {
                        mass: mass.to_f64_lossy(),
                        bisections: steps,
                        width: (hi - lo).to_f64_lossy(),
                    });
                }
                break;
            }
            let mid = (lo + hi) * T::lit(0.5);
            if self.has_node(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
        }
        Ok(((lo + hi) * T::lit(0.5), steps))
    }

    /// First grid index beyond the classical turning point `w(r) = eps`.
    fn turning_index(&self, eps: T) -> Option<usize> {
        self.w.iter().position(|&w| w > eps)
    }

    fn tail_amplitude(&self, eps: T) -> T {
        let Some(start) = self.turning_index(eps) else {
            return T::one();
        };
        let action: T = self.w[start..]
            .iter()
            .map(|&w| (w - eps).max(T::zero()).sqrt())
            .sum::<T>()
            * self.h;
        (-action).exp()
    }

    /// Eigenfunction at `eps`: outward integration up to the turning point,
    /// inward from `u(r_max) = 0`, scaled to agree at the matching point.
    fn eigenfunction(&self, eps: T) -> Vec<T> {
        let n = self.intervals();
        let twelve = T::lit(12.0);
        let ten = T::lit(10.0);
        let limit = T::lit(RENORM_LIMIT);
        let matching = self.turning_index(eps).unwrap_or(n).clamp(2, n - 2);
        let f: Vec<T> = (0..=n).map(|i| self.factor(eps, i)).collect();

        let mut u = vec![T::zero(); n + 1];
        u[1] = self.h;
        for i in 1..matching {
            u[i + 1] = ((twelve - ten * f[i]) * u[i] - f[i - 1] * u[i - 1]) / f[i + 1];
        }
        let outward_at_match = u[matching];

        let mut inward = vec![T::zero(); n + 1];
        inward[n - 1] = T::min_positive_value().sqrt();
        for i in (matching + 1..n).rev() {
            inward[i - 1] =
                ((twelve - ten * f[i]) * inward[i] - f[i + 1] * inward[i + 1]) / f[i - 1];
            if inward[i - 1].abs() > limit {
                let scale = inward[i - 1].abs();
                inward[i - 1..].iter_mut().for_each(|v| *v = *v / scale);
            }
        }
        let scale = outward_at_match / inward[matching];
        for i in matching + 1..=n {
            u[i] = inward[i] * scale;
        }
        u
    }

    /// `⟨m / √(m² + r²)⟩` over the eigenfunction.
    fn mass_slope(&self, u: &[T]) -> T {
        let mut norm = T::zero();
        let mut weighted = T::zero();
        for (i, &ui) in u.iter().enumerate() {
            let p = ui * ui;
            let full = self.w[i] + self.mass;
            norm = norm + p;
            if full > T::zero() {
                weighted = weighted + p * (self.w[i] / full);
            }
        }
        T::one() - weighted / norm
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::AIRY_FIRST_ZERO;

    fn cfg() -> EigensolveConfig<f64> {
        EigensolveConfig::default()
    }

    #[test]
    fn massless_ground_state_is_airy_zero() {
        let e = solve_e(Mass::new(0.0).unwrap(), &cfg()).unwrap();
        assert!((e - AIRY_FIRST_ZERO).abs() < 1e-8, "{e}");
    }

    #[test]
    fn ground_state_has_no_interior_nodes() {
        for &m in &[0.0, 1.0, 10.0, 1000.0] {
            let s = solve_state(Mass::new(m).unwrap(), &cfg()).unwrap();
            assert_eq!(s.nodes, 0, "m = {m}");
            assert!(s.tail_amplitude < 1e-6);
        }
    }

    #[test]
    fn slope_matches_finite_difference() {
        let c = cfg();
        for &m in &[0.3, 2.0, 40.0] {
            let h = 1e-3 * m;
            let up = solve_e(Mass::new(m + h).unwrap(), &c).unwrap();
            let down = solve_e(Mass::new(m - h).unwrap(), &c).unwrap();
            let s = solve_state(Mass::new(m).unwrap(), &c).unwrap();
            assert!((s.slope - (up - down) / (2.0 * h)).abs() < 1e-6, "m = {m}");
        }
        let s0 = solve_state(Mass::new(0.0).unwrap(), &c).unwrap();
        assert_eq!(s0.slope, 0.0);
    }

    #[test]
    fn short_domain_is_rejected() {
        let c = EigensolveConfig { r_max: Some(4.0), ..cfg() };
        match solve_e(Mass::new(0.0).unwrap(), &c) {
            Err(RadialError::DomainTooSmall { .. }) => {}
            other => panic!("expected DomainTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn bisection_budget_is_enforced() {
        let c = EigensolveConfig { max_bisections: 5, ..cfg() };
        assert!(matches!(
            solve_e(Mass::new(1.0).unwrap(), &c),
            Err(RadialError::NonConvergence { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let bad = [
            EigensolveConfig { grid_points: 10, ..cfg() },
            EigensolveConfig { tol_energy: 0.0, ..cfg() },
            EigensolveConfig { r_max: Some(-1.0), ..cfg() },
        ];
        for c in bad {
            assert!(matches!(
                solve_e(Mass::new(1.0).unwrap(), &c),
                Err(RadialError::Config(_))
            ));
        }
        assert!(Mass::new(-1.0).is_err());
        assert!(Mass::new(f64::NAN).is_err());
    }

    #[test]
    fn single_precision_smoke() {
        let e = solve_e(Mass::new(0.0f32).unwrap(), &EigensolveConfig::default()).unwrap();
        assert!((e - AIRY_FIRST_ZERO as f32).abs() < 2e-3, "{e}");
    }
}
