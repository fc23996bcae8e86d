//! Modified Bessel function K₁, the gamma function, and the first Airy zero.
//!
//! K₁ is evaluated by three routes depending on the argument:
//!
//! * `z <= 2`: the ascending series with the digamma correction terms,
//! * `2 < z <= 50`: Steed's continued fraction (CF2), which yields `e^z K₀`
//!   and `e^z K₁` directly,
//! * `z > 50`: the Hankel asymptotic expansion of `e^z K₁(z)`.
//!
//! The scaled product `e^z K₁(z)` is the primitive; the unscaled value is
//! derived from it only where it cannot underflow.

use thiserror::Error;

use crate::scalar::Real;

/// Magnitude of the first zero of the Airy function, `Ai(-z₀) = 0`.
pub const AIRY_FIRST_ZERO: f64 = 2.338_107_410_459_767;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_LIMIT: f64 = 2.0;
const ASYMPTOTIC_LIMIT: f64 = 50.0;
const MAX_TERMS: usize = 500;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialFunctionError {
    #[error("{function}: argument {arg} outside the domain (must be finite and > 0)")]
    Domain { function: &'static str, arg: f64 },
}

fn check_positive<T: Real>(function: &'static str, z: T) -> Result<(), SpecialFunctionError> {
    if z.is_finite() && z > T::zero() {
        Ok(())
    } else {
        Err(SpecialFunctionError::Domain {
            function,
            arg: z.to_f64_lossy(),
        })
    }
}

/// K₁(z) for real `z > 0`.
///
/// Underflows to zero once `e^{-z}` does (around `z ≈ 705` in `f64`); use
/// [`scaled_exp_k1`] for large arguments.
pub fn bessel_k1<T: Real>(z: T) -> Result<T, SpecialFunctionError> {
    check_positive("bessel_k1", z)?;
    if z <= T::lit(SERIES_LIMIT) {
        Ok(k1_series(z))
    } else {
        Ok(scaled_large(z) * (-z).exp())
    }
}

/// The product `e^z K₁(z)`, finite for all representable `z > 0`.
pub fn scaled_exp_k1<T: Real>(z: T) -> Result<T, SpecialFunctionError> {
    check_positive("scaled_exp_k1", z)?;
    if z <= T::lit(SERIES_LIMIT) {
        Ok(k1_series(z) * z.exp())
    } else {
        Ok(scaled_large(z))
    }
}

fn scaled_large<T: Real>(z: T) -> T {
    if z > T::lit(ASYMPTOTIC_LIMIT) {
        scaled_k1_asymptotic(z)
    } else {
        scaled_k1_steed(z)
    }
}

/// Ascending series, A&S 9.6.11 with n = 1.
fn k1_series<T: Real>(z: T) -> T {
    let half = T::lit(0.5);
    let quarter_z2 = z * z * T::lit(0.25);
    let log_half_z = (z * half).ln();
    let eps = T::epsilon();

    // term_k = (z²/4)^k / (k! (k+1)!)
    let mut term = T::one();
    // ψ(k+1) + ψ(k+2) = -2γ + H_k + H_{k+1}
    let mut harmonic = T::zero();
    let euler = T::lit(EULER_GAMMA);

    let mut i1_sum = T::zero();
    let mut psi_sum = T::zero();
    for k in 0..MAX_TERMS {
        let kp1 = T::from_count(k + 1);
        let psi_pair = -(euler + euler) + harmonic + harmonic + kp1.recip();
        i1_sum = i1_sum + term;
        let contribution = psi_pair * term;
        psi_sum = psi_sum + contribution;
        if term < eps * i1_sum && contribution.abs() <= eps * psi_sum.abs() {
            break;
        }
        harmonic = harmonic + kp1.recip();
        term = term * quarter_z2 / (kp1 * (kp1 + T::one()));
    }
    let i1 = z * half * i1_sum;
    z.recip() + log_half_z * i1 - z * T::lit(0.25) * psi_sum
}

/// Steed's continued fraction for K₀ and K₁ at order fraction μ = 0,
/// returning `e^z K₁(z)`.
fn scaled_k1_steed<T: Real>(z: T) -> T {
    let one = T::one();
    let two = T::lit(2.0);
    let eps = T::epsilon();

    let a1 = T::lit(0.25);
    let mut b = two * (one + z);
    let mut d = b.recip();
    let mut delh = d;
    let mut h = d;
    let mut q1 = T::zero();
    let mut q2 = one;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = one + q * delh;
    for i in 2..MAX_TERMS {
        let fi = T::from_count(i);
        a = a - two * (fi - one);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q = q + c * qnew;
        b = b + two;
        d = (b + a * d).recip();
        delh = (b * d - one) * delh;
        h = h + delh;
        let dels = q * delh;
        s = s + dels;
        if (dels / s).abs() < eps {
            break;
        }
    }
    h = a1 * h;
    let scaled_k0 = (T::PI() / (two * z)).sqrt() / s;
    scaled_k0 * (z + T::lit(0.5) - h) / z
}

/// Hankel expansion `e^z K₁(z) ~ √(π/2z) Σ_k a_k(1) / z^k`.
fn scaled_k1_asymptotic<T: Real>(z: T) -> T {
    let eight_z = T::lit(8.0) * z;
    let four_nu2 = T::lit(4.0);
    let eps = T::epsilon();
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..MAX_TERMS {
        let odd = T::from_count(2 * k - 1);
        let next = term * (four_nu2 - odd * odd) / (T::from_count(k) * eight_z);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum = sum + term;
        if term.abs() < eps * sum.abs() {
            break;
        }
    }
    (T::PI() / (T::lit(2.0) * z)).sqrt() * sum
}

/// Γ(x) for `x > 0` (Lanczos approximation, g = 7).
pub fn gamma<T: Real>(x: T) -> Result<T, SpecialFunctionError> {
    check_positive("gamma", x)?;
    if x < T::lit(0.5) {
        // Γ(x) Γ(1-x) = π / sin(πx); 1 - x lies in (0.5, 1).
        let pi = T::PI();
        return Ok(pi / ((pi * x).sin() * lanczos(T::one() - x)));
    }
    Ok(lanczos(x))
}

fn lanczos<T: Real>(x: T) -> T {
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &p) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + T::lit(p) / (x + T::from_count(i));
    }
    let t = x + T::lit(LANCZOS_G + 0.5);
    // Split t^(x+1/2) to delay overflow near the top of the range.
    let half_power = t.powf((x + T::lit(0.5)) * T::lit(0.5));
    (T::TAU()).sqrt() * acc * half_power * (half_power * (-t).exp())
}

/// First Airy zero magnitude, z₀ with `Ai(-z₀) = 0`.
pub fn airy_first_zero<T: Real>() -> T {
    T::lit(AIRY_FIRST_ZERO)
}
