//! Closed-form rows of the series tables, with residuals of the reduced
//! equations they satisfy.
//!
//! Free-end layer (X = y ε^{-1/3}): `U'''' − (X U')' = rhs`.
//! Support layer (Z = (1 − y) ε^{-1/2}): `V'''' − V'' = rhs`.

use crate::error::Result;
use crate::quadrature::integrate;
use crate::specfun::{ai_and_prime, ai_integral, SpectralBasis, AI0, AI_PRIME0};

/// `[f, f', f'', f''', f'''']`.
pub type Jet = [f64; 5];

/// `U'''' − (X U')' = U'''' − U' − X U''`.
pub fn free_end_operator(u: &Jet, x: f64) -> f64 {
    u[4] - u[1] - x * u[2]
}

/// `V'''' − V''`.
pub fn support_operator(v: &Jet) -> f64 {
    v[4] - v[2]
}

/// `U_{1/3} = −λ0 X`; satisfies `U'''' − (X U')' = λ0 U_0 = λ0`.
pub fn u_third(basis: &SpectralBasis, x: f64) -> Jet {
    [-basis.lambda0 * x, -basis.lambda0, 0.0, 0.0, 0.0]
}

/// Clamped `V_{1/2} = J̃'(1)(1 − Z − e^{−Z})`, homogeneous equation,
/// `V(0) = V'(0) = 0`.
pub fn v_half_clamped(basis: &SpectralBasis, z: f64) -> Jet {
    let a = basis.j_prime_at_one();
    let e = (-z).exp();
    [a * (1.0 - z - e), a * (-1.0 + e), -a * e, a * e, -a * e]
}

/// Pinned `V_{1/2} = −J̃'(1) Z`, homogeneous equation, `V(0) = V''(0) = 0`.
pub fn v_half_pinned(basis: &SpectralBasis, z: f64) -> Jet {
    let a = basis.j_prime_at_one();
    [-a * z, -a, 0.0, 0.0, 0.0]
}

/// Pinned `U_{2/3} = (λ0²/4) X² − (λ0²/(2 Ai'(0))) ∫₀^X Ai`; satisfies
/// `U'''' − (X U')' = λ0 U_{1/3} = −λ0² X`, `U(0) = U''(0) = U'''(0) = 0`.
pub fn u_two_thirds_pinned(basis: &SpectralBasis, x: f64) -> Jet {
    let l2 = basis.lambda0 * basis.lambda0;
    let c = l2 / (2.0 * AI_PRIME0);
    let (ai, aip) = ai_and_prime(x);
    [
        0.25 * l2 * x * x - c * ai_integral(x),
        0.5 * l2 * x - c * ai,
        0.5 * l2 - c * aip,
        -c * x * ai,
        -c * (ai + x * aip),
    ]
}

/// `G(X) = −(λ0³/36) X³ + (λ0³/(2 Ai'(0))) ∫₀^X (X − x) Ai(x) dx`, with the
/// integral evaluated by quadrature.
pub fn g_function(basis: &SpectralBasis, x: f64) -> Result<f64> {
    let l3 = basis.lambda0.powi(3);
    let integral = integrate(|t| (x - t) * ai_and_prime(t).0, 0.0, x, 1e-15)?.value;
    Ok(-l3 / 36.0 * x.powi(3) + l3 / (2.0 * AI_PRIME0) * integral)
}

/// `G(0)`, `G''(0)`, `G'''(0)` by central differences (fourth order) of
/// [`g_function`] with step `h`.
pub fn g_derivatives_at_zero(basis: &SpectralBasis, h: f64) -> Result<(f64, f64, f64)> {
    let g = |k: i32| g_function(basis, k as f64 * h);
    let (m3, m2, m1, z, p1, p2, p3) = (g(-3)?, g(-2)?, g(-1)?, g(0)?, g(1)?, g(2)?, g(3)?);
    let second = (-p2 + 16.0 * p1 - 30.0 * z + 16.0 * m1 - m2) / (12.0 * h * h);
    let third = (-p3 + 8.0 * p2 - 13.0 * p1 + 13.0 * m1 - 8.0 * m2 + m3) / (8.0 * h * h * h);
    Ok((z, second, third))
}

/// Exact `G''(0) = (λ0³/2) Ai(0)/Ai'(0)` and `G'''(0) = λ0³/3`.
pub fn g_derivatives_exact(basis: &SpectralBasis) -> (f64, f64) {
    let l3 = basis.lambda0.powi(3);
    (0.5 * l3 * AI0 / AI_PRIME0, l3 / 3.0)
}
