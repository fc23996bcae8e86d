use super::{check_coupling, BoundKind, BoundMethod, BoundResult, BoundsError, SystemParams};
use crate::optim::maximize;
use crate::potential::PotentialSpec;
use crate::radial::KernelFunction;
use crate::scalar::Real;

/// Sampling window for the convexity audit of custom potentials.
const AUDIT_RANGE: (f64, f64) = (1e-6, 1e6);
const AUDIT_SAMPLES: usize = 241;

/// Lowest eigenvalue of `β √(m² + λ p²) + γ c r²`, written with the product
/// `coupling = γ λ c`: `(β² coupling)^{1/3} e(m (β / coupling)^{1/3})`.
///
/// This form stays regular at `m = 0`, where it reduces to
/// `(β² coupling)^{1/3} e(0)`.
pub fn scaled_one_body<T: Real>(
    m: T,
    beta: T,
    coupling: T,
    kernel: &KernelFunction<T>,
) -> Result<T, BoundsError> {
    if !(beta.is_finite() && beta > T::zero() && coupling.is_finite() && coupling > T::zero()) {
        return Err(BoundsError::Domain(format!(
            "scale factors must be positive: beta = {beta}, coupling = {coupling}"
        )));
    }
    if !(m.is_finite() && m >= T::zero()) {
        return Err(BoundsError::InvalidMass(m.to_f64_lossy()));
    }
    Ok(raw_scaled(m, beta, coupling, kernel).0)
}

/// Returns the value and its absolute kernel uncertainty.
fn raw_scaled<T: Real>(m: T, beta: T, coupling: T, kernel: &KernelFunction<T>) -> (T, T) {
    let energy_scale = (beta * beta * coupling).cbrt();
    let nu = m * (beta / coupling).cbrt();
    (energy_scale * kernel.eval(nu), energy_scale * kernel.error_bound(nu))
}

/// Lower bound for the pure oscillator `V(r) = c r²`.
pub fn lower_bound_oscillator<T: Real>(
    p: &SystemParams<T>,
    c: T,
    kernel: &KernelFunction<T>,
) -> Result<BoundResult<T>, BoundsError> {
    check_coupling(c)?;
    let coupling = p.gamma() * c * p.lambda();
    let (value, uncertainty) = raw_scaled(p.mass(), p.beta(), coupling, kernel);
    Ok(BoundResult {
        kind: BoundKind::Lower,
        method: BoundMethod::Oscillator,
        value,
        optimizer: None,
        diagnostics: None,
        uncertainty,
    })
}

/// The function of the contact point `t` maximized by [`lower_bound_envelope`]:
/// the oscillator bound at coupling `g'(t)` plus `γ/2 (g(t) - t g'(t))`.
pub fn envelope_objective<'a, T: Real>(
    p: &'a SystemParams<T>,
    spec: &'a PotentialSpec<T>,
    kernel: &'a KernelFunction<T>,
) -> impl Fn(T) -> T + 'a {
    let half_gamma = p.gamma() * T::lit(0.5);
    let gamma_lambda = p.gamma() * p.lambda();
    move |t| {
        let b = spec.g_prime(t);
        if !(b > T::zero()) {
            return T::nan();
        }
        let a = spec.g(t) - t * b;
        raw_scaled(p.mass(), p.beta(), gamma_lambda * b, kernel).0 + half_gamma * a
    }
}

/// Lower bound for convex `g` with `g' > 0`, maximized over tangential
/// oscillators.
pub fn lower_bound_envelope<T: Real>(
    p: &SystemParams<T>,
    spec: &PotentialSpec<T>,
    kernel: &KernelFunction<T>,
    opt_tol: T,
) -> Result<BoundResult<T>, BoundsError> {
    spec.audit_convexity(T::lit(AUDIT_RANGE.0), T::lit(AUDIT_RANGE.1), AUDIT_SAMPLES)?;
    let objective = envelope_objective(p, spec, kernel);
    let result = maximize(&objective, T::one(), opt_tol)?;
    let t_star = result.x_star;
    let coupling = p.gamma() * p.lambda() * spec.g_prime(t_star);
    let (_, uncertainty) = raw_scaled(p.mass(), p.beta(), coupling, kernel);
    Ok(BoundResult {
        kind: BoundKind::Lower,
        method: BoundMethod::Envelope,
        value: result.f_star,
        optimizer: Some(t_star),
        diagnostics: Some(result),
        uncertainty,
    })
}
