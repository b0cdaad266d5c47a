//! Matched-asymptotics ingredients: bulk corrections `w`, `v`, `r`; the
//! free-end layer function Ψ; the eigenvalue series in powers of `ε^{1/6}`;
//! composite eigenfunctions; and a few large-n and scaling helpers.
//!
//! # The order-1/2 composite at the free end
//!
//! Substituting y = 0 in the order-1/2 composite gives `1 − ε^{1/2} λ0 w(1)
//! e^{−1/√ε}`, i.e. 1 up to an exponentially small term, not 0; the
//! vanishing value and the `O(ε^{1/2})` derivative both hold at y = 1, which
//! is what the tests assert.

mod bulk;
mod chebyshev;
mod composite;
mod layer;
pub mod tables;

pub use bulk::{
    frobenius_coefficients, solve_r, solve_regular, solve_v, solve_w, BulkCorrections, Profile,
    PROFILE_DEGREE,
};
pub use chebyshev::Chebyshev;
pub use composite::{composite_eigenfunction, CompositeEigenfunction, CompositeOrder};
pub use layer::{
    c_infty, c_infty_from, far_field_coefficients, far_field_tail, solve_psi,
    solve_psi_with_terms, LayerProfile, DEFAULT_TERMS, DEFAULT_X_MAX,
};

use crate::eigensolver::BoundaryCondition;
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::specfun::{basis, SpectralBasis};

/// Relative agreement demanded between the computed `λ_{1/2}` quotient and λ0.
pub const HALF_ORDER_CHECK: f64 = 1e-7;

/// Coefficients of `λ(ε) = λ0 + ε^{1/3} λ_{1/3} + ε^{1/2} λ_{1/2} + ε^{2/3} λ_{2/3}
/// + ε^{5/6} λ_{5/6} + ε λ1 + …`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSeries {
    pub bc: BoundaryCondition,
    pub mode_n: usize,
    pub lambda0: f64,
    pub lambda_third: f64,
    pub lambda_half: f64,
    pub lambda_two_thirds: f64,
    pub lambda_five_sixths: f64,
    pub lambda_one: f64,
    /// The eigenfunction carries an `ε log ε` term at order 1.
    pub log_flag: bool,
    /// That term is `log_coefficient · J̃(y) · ε log ε`.
    pub log_coefficient: f64,
}

impl LambdaSeries {
    /// Coefficient function of the `ε log ε` term at y.
    pub fn log_term(&self, basis: &SpectralBasis, y: f64) -> f64 {
        self.log_coefficient * basis.j_derivatives(y)[0]
    }
}

/// Highest power of ε retained by [`lambda_asymptotic_to`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SeriesOrder {
    Zero,
    Third,
    Half,
    TwoThirds,
    FiveSixths,
    One,
}

/// Pinned `λ1 = [v(1) + (λ0³/3) Ỹ(1) + J̃'(1)] / w(1)`.
pub fn lambda1_pinned(c: &BulkCorrections) -> f64 {
    let b = &c.basis;
    let lam = b.lambda0;
    (c.v.at_one[0] + lam.powi(3) / 3.0 * b.y_at_one() + b.j_prime_at_one()) / c.w.at_one[0]
}

/// Clamped `λ1 = [v(1) + λ0² r(1) + (λ0³/3) Ỹ(1) − (3/4) J̃'(1) + λ0 w'(1)] / w(1)`.
pub fn lambda1_clamped(c: &BulkCorrections) -> Result<f64> {
    let r = c
        .r
        .as_ref()
        .ok_or_else(|| Error::Invalid("clamped lambda1 needs the r profile".into()))?;
    let b = &c.basis;
    let lam = b.lambda0;
    let num = c.v.at_one[0] + lam * lam * r.at_one[0] + lam.powi(3) / 3.0 * b.y_at_one()
        - 0.75 * b.j_prime_at_one()
        + lam * c.w.at_one[1];
    Ok(num / c.w.at_one[0])
}

/// Pinned λ1 by the second route:
/// `λ0 ∫₀¹ J̃'''' J̃ / J̃'(1)² + λ0⁴ / (3 J̃'(1)²) − λ0`.
pub fn lambda1_pinned_by_integral(basis: &SpectralBasis) -> Result<f64> {
    let lam = basis.lambda0;
    let jp = basis.j_prime_at_one();
    let integral = integrate(
        |y| {
            let d = basis.j_derivatives(y);
            d[4] * d[0]
        },
        0.0,
        1.0,
        1e-12 * lam.powi(4),
    )?
    .value;
    Ok(lam * integral / (jp * jp) + lam.powi(4) / (3.0 * jp * jp) - lam)
}

/// `−J̃'(1) / w(1)`, which equals λ0.
pub fn lambda_half_quotient(c: &BulkCorrections) -> f64 {
    -c.basis.j_prime_at_one() / c.w.at_one[0]
}

pub fn lambda_series(bc: BoundaryCondition, n: usize) -> Result<LambdaSeries> {
    let b = basis(n)?;
    let c = BulkCorrections::new(&b, bc == BoundaryCondition::Clamped)?;
    lambda_series_from(bc, &c)
}

pub fn lambda_series_from(bc: BoundaryCondition, c: &BulkCorrections) -> Result<LambdaSeries> {
    let lam = c.basis.lambda0;
    let (half, one) = match bc {
        BoundaryCondition::Pinned => (0.0, lambda1_pinned(c)),
        BoundaryCondition::Clamped => {
            let q = lambda_half_quotient(c);
            if !((q / lam - 1.0).abs() <= HALF_ORDER_CHECK) {
                return Err(Error::Invalid(format!(
                    "lambda_1/2 quotient {q} disagrees with lambda0 {lam}"
                )));
            }
            (q, lambda1_clamped(c)?)
        }
    };
    Ok(LambdaSeries {
        bc,
        mode_n: c.basis.mode_n,
        lambda0: lam,
        lambda_third: 0.0,
        lambda_half: half,
        lambda_two_thirds: 0.0,
        lambda_five_sixths: 0.0,
        lambda_one: one,
        log_flag: true,
        log_coefficient: -lam.powi(3) / 9.0,
    })
}

/// The series through order ε.
pub fn lambda_asymptotic(series: &LambdaSeries, epsilon: f64) -> Result<f64> {
    lambda_asymptotic_to(series, epsilon, SeriesOrder::One)
}

pub fn lambda_asymptotic_to(series: &LambdaSeries, epsilon: f64, order: SeriesOrder) -> Result<f64> {
    if !(epsilon >= 0.0) {
        return Err(Error::Domain(format!("epsilon must be >= 0, got {epsilon}")));
    }
    let terms = [
        (SeriesOrder::Third, 1.0 / 3.0, series.lambda_third),
        (SeriesOrder::Half, 0.5, series.lambda_half),
        (SeriesOrder::TwoThirds, 2.0 / 3.0, series.lambda_two_thirds),
        (SeriesOrder::FiveSixths, 5.0 / 6.0, series.lambda_five_sixths),
        (SeriesOrder::One, 1.0, series.lambda_one),
    ];
    Ok(terms
        .iter()
        .filter(|(o, _, _)| *o <= order)
        .fold(series.lambda0, |acc, (_, p, c)| acc + epsilon.powf(*p) * c))
}

/// `(n − 1/4)² π² / 4`, the McMahon leading term for λ0.
pub fn lambda0_large_n(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Invalid("mode number must be >= 1".into()));
    }
    let k = n as f64 - 0.25;
    Ok(k * k * std::f64::consts::PI.powi(2) / 4.0)
}

/// `(n^{-6}, n^{-10})`: ε must be well below these for the series to apply.
pub fn validity_threshold(n: usize) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::Invalid("mode number must be >= 1".into()));
    }
    let n = n as f64;
    Ok((n.powi(-6), n.powi(-10)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nondimensional {
    pub epsilon: f64,
    /// `√(L/g)`, the unit of dimensionless time.
    pub timescale: f64,
}

impl Nondimensional {
    /// Angular frequency of a mode with eigenvalue λ, in 1/time.
    pub fn angular_frequency(&self, lambda: f64) -> f64 {
        lambda.sqrt() / self.timescale
    }
}

/// `ε = E I / (ρ g L³)` for Young's modulus E, second moment I, mass per
/// length ρ, gravity g, and length L.
pub fn nondimensionalize(e: f64, i: f64, rho: f64, g: f64, l: f64) -> Result<Nondimensional> {
    for (name, v) in [("E", e), ("I", i), ("rho", rho), ("g", g), ("L", l)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Domain(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(Nondimensional {
        epsilon: e * i / (rho * g * l.powi(3)),
        timescale: (l / g).sqrt(),
    })
}

/// Second moment of area `∫∫ x² dx dz` of a rectangle of width `b`
/// (bending direction) and depth `d`: `b³ d / 12`.
pub fn rectangle_second_moment(b: f64, d: f64) -> f64 {
    b.powi(3) * d / 12.0
}
