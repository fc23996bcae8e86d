use super::{check_coupling, BoundKind, BoundMethod, BoundResult, BoundsError, SystemParams};
use crate::optim::minimize;
use crate::scalar::Real;
use crate::special::{gamma, scaled_exp_k1};

/// The Gaussian trial expectation as a function of the width parameter `μ`:
///
/// `β m μ/√(2π) e^{μ²/4} K₁(μ²/4) + c sgn(q) γ/√π Γ((3+q)/2) (μ √λ / m)^q`.
///
/// Requires `m > 0` and `q >= -1`; at `q = -1` a minimum exists only below
/// the critical coupling (see [`check_coulomb_validity`]). Non-finite values signal evaluation
/// outside the representable range.
pub fn variational_objective<T: Real>(
    p: &SystemParams<T>,
    c: T,
    q: T,
) -> Result<impl Fn(T) -> T, BoundsError> {
    check_coupling(c)?;
    if !(q.is_finite() && q >= -T::one()) {
        return Err(BoundsError::Domain(format!(
            "variational bound needs q >= -1, got q = {q}"
        )));
    }
    let m = p.mass();
    if !(m > T::zero()) {
        return Err(BoundsError::Domain(
            "variational bound needs m > 0 (use the closed form at m = 0)".into(),
        ));
    }
    let sign = if q > T::zero() {
        T::one()
    } else if q < T::zero() {
        -T::one()
    } else {
        T::zero()
    };
    let kinetic_scale = p.beta() * m / T::TAU().sqrt();
    let potential_scale =
        c * sign * p.gamma() / T::PI().sqrt() * gamma((T::lit(3.0) + q) * T::lit(0.5))?;
    let sqrt_lambda_over_m = p.lambda().sqrt() / m;
    Ok(move |mu: T| {
        let z = mu * mu * T::lit(0.25);
        let kinetic = match scaled_exp_k1(z) {
            Ok(s) => kinetic_scale * mu * s,
            Err(_) => T::nan(),
        };
        kinetic + potential_scale * (mu * sqrt_lambda_over_m).powf(q)
    })
}

/// Upper bound for `V(r) = c sgn(q) r^q`, `q >= -1`, `m > 0`.
pub fn upper_bound_variational<T: Real>(
    p: &SystemParams<T>,
    c: T,
    q: T,
    opt_tol: T,
) -> Result<BoundResult<T>, BoundsError> {
    let objective = variational_objective(p, c, q)?;
    let result = minimize(&objective, T::one(), opt_tol)?;
    Ok(BoundResult {
        kind: BoundKind::Upper,
        method: BoundMethod::Variational,
        value: result.f_star,
        optimizer: Some(result.x_star),
        diagnostics: Some(result),
        uncertainty: T::zero(),
    })
}

/// Outcome of the coupling check for the `q = -1` (gravitational) case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombValidity<T> {
    /// `(c/2) √(N(N-1)/2) < 1`
    pub valid: bool,
    /// `1 - (c/2) √(N(N-1)/2)`
    pub margin: T,
}

pub fn check_coulomb_validity<T: Real>(p: &SystemParams<T>, c: T) -> CoulombValidity<T> {
    let strength = c * T::lit(0.5) * (p.gamma() * T::lit(0.5)).sqrt();
    let margin = T::one() - strength;
    CoulombValidity {
        valid: margin > T::zero(),
        margin,
    }
}
