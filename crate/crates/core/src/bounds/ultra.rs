use super::{check_coupling, BoundsError};
use crate::scalar::Real;
use crate::special::{airy_first_zero, gamma};

/// Closed-form bounds for `m = 0`, `V(r) = c r^q`, `q >= 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UltraBounds<T> {
    pub lower: T,
    pub upper: T,
    /// The common factor
    /// `C = (cq/2)^{1/(1+q)} (1 + 1/q) (N(N-1))^{(2+q)/(2(1+q))} 2^{3q/(2(1+q))}`.
    pub prefactor: T,
}

impl<T: Real> UltraBounds<T> {
    /// `(upper - lower) / midpoint`.
    pub fn relative_spread(&self) -> T {
        (self.upper - self.lower) / ((self.upper + self.lower) * T::lit(0.5))
    }
}

/// `C (z₀/3)^{3q/(2(1+q))} <= E <= (C/√π) (2 Γ((3+q)/2))^{1/(1+q)}`.
pub fn ultra_bounds<T: Real>(n: usize, c: T, q: T) -> Result<UltraBounds<T>, BoundsError> {
    if n < 2 {
        return Err(BoundsError::InvalidParticleCount(n));
    }
    check_coupling(c)?;
    let two = T::lit(2.0);
    if !(q.is_finite() && q >= two) {
        return Err(BoundsError::Domain(format!(
            "massless closed form needs q >= 2, got q = {q}"
        )));
    }
    let one = T::one();
    let inv = (one + q).recip();
    let pair_count = T::from_count(n * (n - 1));
    let exponent = T::lit(3.0) * q * inv / two;
    let prefactor = (c * q / two).powf(inv)
        * (one + q.recip())
        * pair_count.powf((two + q) * inv / two)
        * two.powf(exponent);
    let z0: T = airy_first_zero();
    let lower = prefactor * (z0 / T::lit(3.0)).powf(exponent);
    let upper = prefactor / T::PI().sqrt()
        * (two * gamma((T::lit(3.0) + q) / two)?).powf(inv);
    Ok(UltraBounds { lower, upper, prefactor })
}
