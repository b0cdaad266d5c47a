use std::f64::consts::{FRAC_PI_4, PI};

use super::bessel::{all01, bessel_j0, bessel_j1};
use super::EULER_GAMMA;
use crate::error::{Error, Result};

/// Below this value of `λ0 y` the tilded functions use their Taylor series in
/// `λ0 y`; above it the Bessel evaluators plus the ODE recurrence.
const SERIES_T: f64 = 4.0;

/// The n-th naive eigenvalue and the data that pins it down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralBasis {
    pub mode_n: usize,
    /// Root of `J0(2√λ) = 0`.
    pub lambda0: f64,
    /// `2√λ0`, the n-th positive zero of J0.
    pub j0_zero: f64,
}

/// n-th positive zero of J0 (n ≥ 1).
///
/// Starts from McMahon's expansion about `β = (n − 1/4)π`, then Newton with
/// `J0' = −J1`, safeguarded by the bracket `[β − π/4, β + π/4]`.
pub fn j0_positive_zero(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Invalid("zero index must be >= 1".into()));
    }
    let beta = (n as f64 - 0.25) * PI;
    let mut lo = beta - FRAC_PI_4;
    let mut hi = beta + FRAC_PI_4;
    let mut z = beta + 1.0 / (8.0 * beta) - 31.0 / (384.0 * beta.powi(3));
    let f_lo = bessel_j0(lo);
    for _ in 0..100 {
        let f = bessel_j0(z);
        if f == 0.0 {
            break;
        }
        if f.signum() == f_lo.signum() {
            lo = z;
        } else {
            hi = z;
        }
        let mut next = z + f / bessel_j1(z);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let done = (next - z).abs() <= 4.0 * f64::EPSILON * z;
        z = next;
        if done {
            break;
        }
    }
    Ok(z)
}

/// Spectral basis for mode n.
pub fn basis(n: usize) -> Result<SpectralBasis> {
    let j0_zero = j0_positive_zero(n)?;
    Ok(SpectralBasis {
        mode_n: n,
        lambda0: 0.25 * j0_zero * j0_zero,
        j0_zero,
    })
}

impl SpectralBasis {
    /// `[J̃, J̃', J̃'', J̃''', J̃'''']` at y.
    pub fn j_derivatives(&self, y: f64) -> [f64; 5] {
        let lam = self.lambda0;
        let t = lam * y;
        let mut d = [0.0; 5];
        if t < SERIES_T {
            // J̃^(k) = (−λ)^k Σ_m (−t)^m / (m! (m+k)!)
            let mut factor = 1.0;
            for (k, slot) in d.iter_mut().enumerate() {
                let mut term = 1.0 / factorial(k);
                let mut sum = term;
                let mut m = 0.0;
                while term.abs() > 1e-18 * sum.abs().max(1e-300) || m < 2.0 {
                    m += 1.0;
                    term *= -t / (m * (m + k as f64));
                    sum += term;
                }
                *slot = factor * sum;
                factor *= -lam;
            }
        } else {
            let s = 2.0 * t.sqrt();
            d[0] = bessel_j0(s);
            d[1] = -lam * bessel_j1(s) / (0.5 * s);
            // y u^(k+2) + (k+1) u^(k+1) + λ u^(k) = 0
            for k in 0..3 {
                d[k + 2] = -((k as f64 + 1.0) * d[k + 1] + lam * d[k]) / y;
            }
        }
        d
    }

    /// `(Ỹ, Ỹ')` at y > 0.
    pub fn y_and_prime(&self, y: f64) -> Result<(f64, f64)> {
        if !(y > 0.0) {
            return Err(Error::Domain(format!(
                "tilde_y is logarithmically singular at y = 0 (got y = {y})"
            )));
        }
        let lam = self.lambda0;
        let s = 2.0 * (lam * y).sqrt();
        let b = all01(s);
        let shift = lam.ln() + 2.0 * EULER_GAMMA;
        let value = PI * b.y0 - shift * b.j0;
        // d/dy Z0(s) = −Z1(s) ds/dy with ds/dy = 2λ/s, for Z = J, Y
        let prime = -(2.0 * lam / s) * (PI * b.y1 - shift * b.j1);
        Ok((value, prime))
    }

    /// `J̃'(1)`.
    pub fn j_prime_at_one(&self) -> f64 {
        self.j_derivatives(1.0)[1]
    }

    /// `Ỹ(1)`.
    pub fn y_at_one(&self) -> f64 {
        self.y_and_prime(1.0).expect("y = 1 is in the domain").0
    }
}

/// `J̃^(order)(y)` for order 0..=4.
pub fn tilde_j(basis: &SpectralBasis, y: f64, order: usize) -> Result<f64> {
    if order > 4 {
        return Err(Error::Invalid(format!(
            "tilde_j derivative order must be 0..=4, got {order}"
        )));
    }
    Ok(basis.j_derivatives(y)[order])
}

/// `Ỹ^(order)(y)` for order 0..=1, y > 0.
pub fn tilde_y(basis: &SpectralBasis, y: f64, order: usize) -> Result<f64> {
    let (value, prime) = basis.y_and_prime(y)?;
    match order {
        0 => Ok(value),
        1 => Ok(prime),
        _ => Err(Error::Invalid(format!(
            "tilde_y derivative order must be 0 or 1, got {order}"
        ))),
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}
