//! Bulk correction profiles: solutions of `(y f')' + λ0 f = g` regular at
//! y = 0 with `f(0) = 0`, by variation of parameters against `J̃`, `Ỹ`
//! (whose Wronskian is `1/y`):
//!
//! `f(y) = c1(y) J̃(y) + c2(y) Ỹ(y)`, `c1 = −∫₀^y Ỹ g`, `c2 = ∫₀^y J̃ g`.

use super::chebyshev::Chebyshev;
use crate::error::Result;
use crate::quadrature::{integrate, integrate_log_singular};
use crate::specfun::SpectralBasis;

/// Chebyshev degree of every profile on `[0, 1]`.
pub const PROFILE_DEGREE: usize = 64;
const QUAD_TOL: f64 = 1e-13;

/// A smooth function on `[0, 1]` with two derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    value: Chebyshev,
    d1: Chebyshev,
    d2: Chebyshev,
    /// `[f, f', f'']` at 0 and at 1.
    pub at_zero: [f64; 3],
    pub at_one: [f64; 3],
}

impl Profile {
    pub fn from_chebyshev(value: Chebyshev) -> Self {
        let d1 = value.derivative();
        let d2 = d1.derivative();
        let ends = |y: f64| [value.eval(y), d1.eval(y), d2.eval(y)];
        Self {
            at_zero: ends(0.0),
            at_one: ends(1.0),
            value,
            d1,
            d2,
        }
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.value.eval(y)
    }

    /// Derivative of order 0..=2.
    pub fn derivative(&self, y: f64, order: usize) -> f64 {
        match order {
            0 => self.value.eval(y),
            1 => self.d1.eval(y),
            2 => self.d2.eval(y),
            _ => panic!("profile derivatives are available up to order 2"),
        }
    }

    /// Size of the trailing Chebyshev coefficients.
    pub fn resolution(&self) -> f64 {
        self.value.tail()
    }
}

/// Solves `(y f')' + λ0 f = g`, `f(0) = 0`. `g` must be smooth on `[0, 1]`.
pub fn solve_regular<G: Fn(f64) -> f64>(basis: &SpectralBasis, g: G) -> Result<Profile> {
    let scale = (0..=16)
        .map(|i| g(i as f64 / 16.0).abs())
        .fold(1.0, f64::max);
    let tol = QUAD_TOL * scale;
    let nodes = Chebyshev::lobatto_points(0.0, 1.0, PROFILE_DEGREE);
    let mut values = Vec::with_capacity(nodes.len());
    for &y in &nodes {
        if y <= 0.0 {
            values.push(0.0);
            continue;
        }
        let c1 = -integrate_log_singular(
            |t| basis.y_and_prime(t).map_or(f64::NAN, |(yt, _)| yt) * g(t),
            y,
            tol,
        )?
        .value;
        let c2 = integrate(|t| basis.j_derivatives(t)[0] * g(t), 0.0, y, tol)?.value;
        let (ty, _) = basis.y_and_prime(y)?;
        values.push(c1 * basis.j_derivatives(y)[0] + c2 * ty);
    }
    Ok(Profile::from_chebyshev(Chebyshev::from_lobatto_values(
        0.0, 1.0, &values,
    )))
}

/// `w`, `v`, and (clamped) `r` for one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct BulkCorrections {
    pub basis: SpectralBasis,
    /// `(y w')' + λ0 w = J̃`.
    pub w: Profile,
    /// `(y v')' + λ0 v = J̃''''`.
    pub v: Profile,
    /// `(y r')' + λ0 r = w`; only needed for clamped λ1.
    pub r: Option<Profile>,
}

pub fn solve_w(basis: &SpectralBasis) -> Result<Profile> {
    solve_regular(basis, |y| basis.j_derivatives(y)[0])
}

pub fn solve_v(basis: &SpectralBasis) -> Result<Profile> {
    solve_regular(basis, |y| basis.j_derivatives(y)[4])
}

pub fn solve_r(basis: &SpectralBasis, w: &Profile) -> Result<Profile> {
    solve_regular(basis, |y| w.eval(y))
}

impl BulkCorrections {
    /// Builds `w`, `v`, and optionally `r`.
    pub fn new(basis: &SpectralBasis, with_r: bool) -> Result<Self> {
        let w = solve_w(basis)?;
        let v = solve_v(basis)?;
        let r = if with_r { Some(solve_r(basis, &w)?) } else { None };
        Ok(Self {
            basis: *basis,
            w,
            v,
            r,
        })
    }

    /// `λ0 w(1) + J̃'(1)`, zero in exact arithmetic.
    pub fn endpoint_defect(&self) -> f64 {
        self.basis.lambda0 * self.w.at_one[0] + self.basis.j_prime_at_one()
    }
}

/// Power-series solution of `(y f')' + λ f = g` with `f(0) = 0`, given the
/// Taylor coefficients of `g`: `(k+1)² a_{k+1} = g_k − λ a_k`.
pub fn frobenius_coefficients(lambda: f64, g: &[f64]) -> Vec<f64> {
    let mut a = vec![0.0; g.len() + 1];
    for k in 0..g.len() {
        let kp = (k + 1) as f64;
        a[k + 1] = (g[k] - lambda * a[k]) / (kp * kp);
    }
    a
}
