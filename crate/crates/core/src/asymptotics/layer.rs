//! The order-one inner function Ψ at the free end: `Ψ''' − X Ψ' = −1`,
//! `Ψ(0) = Ψ''(0) = 0`, `Ψ ~ log X + Ψ∞ + Σ c_k X^{-3k}` as `X → ∞`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::odesolve::{solve_bvp, BvpProblem, BvpSolution};
use crate::specfun::{AI0, AI_PRIME0};

pub const DEFAULT_X_MAX: f64 = 20.0;
pub const DEFAULT_TERMS: usize = 6;
const MIN_X_MAX: f64 = 15.0;
const MESH_INTERVALS: usize = 200;

/// Far-field coefficients `c_1..=c_terms` of `Ψ − log X − Ψ∞ = Σ c_k X^{-3k}`.
///
/// Substituting the series into the ODE gives `3 c_1 + 2 = 0` and
/// `k c_k = (k − 1)(3k − 2)(3k − 1) c_{k−1}`.
pub fn far_field_coefficients(terms: usize) -> Vec<Ratio<i64>> {
    let mut out = Vec::with_capacity(terms);
    let mut c = Ratio::new(-2, 3);
    for k in 1..=terms as i64 {
        if k > 1 {
            c = c * Ratio::from_integer((k - 1) * (3 * k - 2) * (3 * k - 1)) / Ratio::from_integer(k);
        }
        out.push(c);
    }
    out
}

fn as_f64(r: &Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `Σ c_k X^{-3k}` and its X-derivative.
pub fn far_field_tail(x: f64, coeffs: &[Ratio<i64>]) -> (f64, f64) {
    let mut value = 0.0;
    let mut slope = 0.0;
    for (i, c) in coeffs.iter().enumerate() {
        let k = 3.0 * (i + 1) as f64;
        let c = as_f64(c);
        value += c * x.powf(-k);
        slope -= k * c * x.powf(-k - 1.0);
    }
    (value, slope)
}

struct PsiProblem {
    x_max: f64,
    slope_at_end: f64,
}

impl BvpProblem for PsiProblem {
    fn dimension(&self) -> usize {
        3
    }
    fn left_conditions(&self) -> usize {
        2
    }
    fn rhs(&self, x: f64, s: &[f64], _p: f64, ds: &mut [f64]) {
        ds[0] = s[1];
        ds[1] = s[2];
        ds[2] = x * s[1] - 1.0;
    }
    fn rhs_jacobian(&self, x: f64, _s: &[f64], _p: f64, dfdy: &mut [f64], _dfdp: &mut [f64]) {
        dfdy.fill(0.0);
        dfdy[1] = 1.0;
        dfdy[3 + 2] = 1.0;
        dfdy[6 + 1] = x;
    }
    fn bc_left(&self, s: &[f64], _p: f64, res: &mut [f64]) {
        res[0] = s[0];
        res[1] = s[2];
    }
    fn bc_right(&self, s: &[f64], _p: f64, res: &mut [f64]) {
        res[0] = s[1] - self.slope_at_end;
    }
}

/// Ψ on `[0, x_max]` with its far-field constant.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerProfile {
    pub x_max: f64,
    pub psi: BvpSolution,
    pub psi_infty: f64,
    pub terms: usize,
}

impl LayerProfile {
    /// `[Ψ, Ψ', Ψ'']` at X in `[0, x_max]`.
    pub fn eval(&self, x: f64) -> [f64; 3] {
        let s = self.psi.eval(x);
        [s[0], s[1], s[2]]
    }

    /// Ψ''' from the ODE.
    pub fn third_derivative(&self, x: f64) -> f64 {
        x * self.eval(x)[1] - 1.0
    }

    /// Ψ at any X ≥ 0: the BVP solution up to `x_max`, the far-field series
    /// beyond.
    pub fn value(&self, x: f64) -> f64 {
        if x <= self.x_max {
            self.eval(x)[0]
        } else {
            let c = far_field_coefficients(self.terms);
            x.ln() + self.psi_infty + far_field_tail(x, &c).0
        }
    }
}

pub fn solve_psi(x_max: f64, tol: f64) -> Result<LayerProfile> {
    solve_psi_with_terms(x_max, tol, DEFAULT_TERMS)
}

pub fn solve_psi_with_terms(x_max: f64, tol: f64, terms: usize) -> Result<LayerProfile> {
    if !(x_max >= MIN_X_MAX) || !x_max.is_finite() {
        return Err(Error::Invalid(format!(
            "x_max must be a finite value >= {MIN_X_MAX}, got {x_max}"
        )));
    }
    if terms == 0 || terms > 8 {
        return Err(Error::Invalid(format!("far-field terms must be 1..=8, got {terms}")));
    }
    let coeffs = far_field_coefficients(terms);
    let (tail, tail_slope) = far_field_tail(x_max, &coeffs);
    let problem = PsiProblem {
        x_max,
        slope_at_end: 1.0 / x_max + tail_slope,
    };
    let mesh: Vec<f64> = (0..=MESH_INTERVALS)
        .map(|i| x_max * i as f64 / MESH_INTERVALS as f64)
        .collect();
    // Far-field shape as the starting guess: log(1 + X) has the right growth
    // and Ψ(0) = 0.
    let guess = BvpSolution::from_fn(
        mesh,
        |x| vec![(1.0 + x).ln(), 1.0 / (1.0 + x), -1.0 / ((1.0 + x) * (1.0 + x))],
        None,
    );
    let psi = solve_bvp(&problem, &guess, tol)?;
    let end = psi.eval(problem.x_max)[0];
    Ok(LayerProfile {
        x_max,
        psi_infty: end - x_max.ln() - tail,
        psi,
        terms,
    })
}

/// `C∞ = 1/2 − Ai(0) / (6 Ai'(0)²) + Ψ∞ / 3`.
pub fn c_infty(layer: &LayerProfile) -> f64 {
    c_infty_from(layer.psi_infty)
}

pub fn c_infty_from(psi_infty: f64) -> f64 {
    0.5 - AI0 / (6.0 * AI_PRIME0 * AI_PRIME0) + psi_infty / 3.0
}
