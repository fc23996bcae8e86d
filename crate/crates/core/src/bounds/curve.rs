use rayon::prelude::*;

use super::{
    check_coulomb_validity, lower_bound_envelope, lower_bound_oscillator, ultra_bounds,
    upper_bound_variational, BoundKind, BoundResult, BoundsError, SystemParams,
};
use crate::potential::{PotentialDescriptor, PotentialSpec};
use crate::radial::KernelFunction;
use crate::scalar::Real;

/// Matched bounds for one `(N, m)` point. A side is `None` when no formula
/// covers it: custom potentials have no upper bound, power laws with
/// `q < 2` have no lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair<T> {
    pub lower: Option<BoundResult<T>>,
    pub upper: Option<BoundResult<T>>,
}

impl<T: Real> BoundPair<T> {
    pub fn midpoint(&self) -> Option<T> {
        Some((self.lower?.value + self.upper?.value) * T::lit(0.5))
    }

    pub fn gap(&self) -> Option<T> {
        Some(self.upper?.value - self.lower?.value)
    }

    /// `(upper - lower) / midpoint`.
    pub fn relative_gap(&self) -> Option<T> {
        Some(self.gap()? / self.midpoint()?)
    }

    /// Combined numerical uncertainty of [`Self::relative_gap`].
    pub fn relative_gap_uncertainty(&self) -> Option<T> {
        Some((self.lower?.uncertainty + self.upper?.uncertainty) / self.midpoint()?)
    }

    pub fn has_upper(&self) -> bool {
        self.upper.is_some()
    }
}

fn side<T>(kind: BoundKind, r: Result<T, BoundsError>) -> Result<T, BoundsError> {
    r.map_err(|e| BoundsError::Side {
        side: kind,
        source: Box::new(e),
    })
}

/// Dispatches to the applicable bound formulas.
///
/// * `m = 0`, power law with `q >= 2`: closed forms on both sides.
/// * power law with `q = 2`: oscillator lower bound.
/// * power law with `q > 2`, or a custom potential: envelope lower bound.
/// * power law with `m > 0`: variational upper bound (for `q = -1` only when
///   the coupling passes [`check_coulomb_validity`]).
pub fn bounds_for<T: Real>(
    p: &SystemParams<T>,
    spec: &PotentialSpec<T>,
    kernel: &KernelFunction<T>,
    opt_tol: T,
) -> Result<BoundPair<T>, BoundsError> {
    let m = p.mass();
    let two = T::lit(2.0);
    let pair = match spec.power_params() {
        Some((c, q)) if m == T::zero() && q >= two => {
            let u = ultra_bounds(p.n(), c, q)?;
            BoundPair {
                lower: Some(BoundResult::closed_form(BoundKind::Lower, u.lower)),
                upper: Some(BoundResult::closed_form(BoundKind::Upper, u.upper)),
            }
        }
        Some((c, q)) => {
            let lower = if q == two {
                Some(side(BoundKind::Lower, lower_bound_oscillator(p, c, kernel))?)
            } else if q > two {
                Some(side(BoundKind::Lower, lower_bound_envelope(p, spec, kernel, opt_tol))?)
            } else {
                None
            };
            if q == -T::one() {
                let validity = check_coulomb_validity(p, c);
                if !validity.valid {
                    return Err(BoundsError::Side {
                        side: BoundKind::Upper,
                        source: Box::new(BoundsError::CouplingTooStrong {
                            margin: validity.margin.to_f64_lossy(),
                        }),
                    });
                }
            }
            let upper = side(BoundKind::Upper, upper_bound_variational(p, c, q, opt_tol))?;
            BoundPair {
                lower,
                upper: Some(upper),
            }
        }
        None => BoundPair {
            lower: Some(side(BoundKind::Lower, lower_bound_envelope(p, spec, kernel, opt_tol))?),
            upper: None,
        },
    };
    if let (Some(lo), Some(up)) = (pair.lower, pair.upper) {
        if lo.value - lo.uncertainty > up.value + up.uncertainty {
            return Err(BoundsError::OrderingViolation {
                lower: lo.value.to_f64_lossy(),
                upper: up.value.to_f64_lossy(),
            });
        }
    }
    Ok(pair)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow<T> {
    pub m: T,
    pub result: Result<BoundPair<T>, BoundsError>,
}

/// Bounds for fixed `N` and potential over an increasing mass grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyCurve<T> {
    pub n: usize,
    pub potential: PotentialDescriptor<T>,
    pub rows: Vec<CurveRow<T>>,
    /// Rows (by index) where the relative gap grew beyond numerical noise.
    pub gap_increases: Vec<usize>,
}

impl<T: Real> EnergyCurve<T> {
    pub fn failures(&self) -> impl Iterator<Item = (usize, &BoundsError)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.result.as_ref().err().map(|e| (i, e)))
    }

    pub fn is_complete(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn relative_gaps(&self) -> Vec<Option<T>> {
        self.rows
            .iter()
            .map(|r| r.result.as_ref().ok().and_then(|p| p.relative_gap()))
            .collect()
    }

    pub fn gap_monotone(&self) -> bool {
        self.gap_increases.is_empty()
    }
}

/// Evaluates [`bounds_for`] at each grid mass. Rows are computed in
/// parallel; failures stay in their row and do not abort the sweep.
pub fn sweep_curve<T: Real>(
    n: usize,
    spec: &PotentialSpec<T>,
    kernel: &KernelFunction<T>,
    m_grid: &[T],
    opt_tol: T,
) -> Result<EnergyCurve<T>, BoundsError> {
    SystemParams::new(n, T::zero())?;
    if m_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(BoundsError::Domain("mass grid must be strictly increasing".into()));
    }
    let rows: Vec<CurveRow<T>> = m_grid
        .par_iter()
        .map(|&m| CurveRow {
            m,
            result: SystemParams::new(n, m).and_then(|p| bounds_for(&p, spec, kernel, opt_tol)),
        })
        .collect();

    let mut gap_increases = Vec::new();
    if spec.power_params().is_some() {
        let mut prev: Option<(T, T)> = None;
        for (i, row) in rows.iter().enumerate() {
            let Some(pair) = row.result.as_ref().ok() else {
                continue;
            };
            let (Some(gap), Some(noise)) = (pair.relative_gap(), pair.relative_gap_uncertainty())
            else {
                continue;
            };
            if let Some((prev_gap, prev_noise)) = prev {
                if gap > prev_gap + noise + prev_noise {
                    gap_increases.push(i);
                }
            }
            prev = Some((gap, noise));
        }
    }

    Ok(EnergyCurve {
        n,
        potential: spec.descriptor(),
        rows,
        gap_increases,
    })
}
