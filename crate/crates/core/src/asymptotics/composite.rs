use std::fmt;
use std::str::FromStr;

use super::bulk::BulkCorrections;
use super::layer::{c_infty, LayerProfile};
use crate::eigensolver::BoundaryCondition;
use crate::error::{Error, Result};
use crate::specfun::{ai_and_prime, ai_tail_integral, SpectralBasis, AI_PRIME0};

/// Truncation order of a composite eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompositeOrder {
    /// The naive mode `J̃`.
    Zero,
    Half,
    TwoThirds,
    One,
}

impl fmt::Display for CompositeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Zero => "0",
            Self::Half => "1/2",
            Self::TwoThirds => "2/3",
            Self::One => "1",
        })
    }
}

impl FromStr for CompositeOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Self::Zero),
            "1/2" | "0.5" => Ok(Self::Half),
            "2/3" => Ok(Self::TwoThirds),
            "1" => Ok(Self::One),
            other => Err(Error::Invalid(format!(
                "order must be one of 0, 1/2, 2/3, 1; got {other:?}"
            ))),
        }
    }
}

/// Uniform approximation of the n-th eigenfunction at fixed ε.
///
/// * order 1/2: `J̃ − ε^{1/2} λ0 [w − w(1) e^{−(1−y)/√ε}]` (clamped; the
///   pinned case has no ε^{1/2} term);
/// * order 2/3: adds `−ε^{2/3} λ0²/(6 Ai'(0)) (J̃ − 3 ∫_{y ε^{-1/3}}^∞ Ai)`;
/// * order 1 (pinned only): adds the bulk term
///   `ε [(C∞ − (λ0³/9) log ε) J̃ + (λ0³/3) Ỹ − λ1 w + v]` and the support
///   layer `ε J̃'(1) e^{−(1−y)/√ε}`. This is an outer approximation near the
///   free end: it carries `Ỹ`'s log singularity and is not defined at y = 0.
#[derive(Debug, Clone)]
pub struct CompositeEigenfunction {
    pub order: CompositeOrder,
    pub bc: BoundaryCondition,
    pub epsilon: f64,
    pub basis: SpectralBasis,
    pub corrections: BulkCorrections,
    pub layer: Option<LayerProfile>,
    pub lambda1: Option<f64>,
}

pub fn composite_eigenfunction(
    order: CompositeOrder,
    bc: BoundaryCondition,
    corrections: &BulkCorrections,
    layer: Option<&LayerProfile>,
    lambda1: Option<f64>,
    epsilon: f64,
) -> Result<CompositeEigenfunction> {
    if !(epsilon > 0.0 && epsilon <= 0.1) {
        return Err(Error::Invalid(format!(
            "composite eigenfunctions need 0 < epsilon <= 0.1, got {epsilon}"
        )));
    }
    if order == CompositeOrder::One {
        if bc == BoundaryCondition::Clamped {
            return Err(Error::Invalid(
                "the order-1 composite is available for the pinned case only".into(),
            ));
        }
        if layer.is_none() || lambda1.is_none() {
            return Err(Error::Invalid(
                "the order-1 composite needs the layer profile and lambda1".into(),
            ));
        }
    }
    Ok(CompositeEigenfunction {
        order,
        bc,
        epsilon,
        basis: corrections.basis,
        corrections: corrections.clone(),
        layer: layer.cloned(),
        lambda1,
    })
}

impl CompositeEigenfunction {
    pub fn eval(&self, y: f64) -> f64 {
        self.derivatives(y)[0]
    }

    /// `[𝒰, 𝒰', 𝒰'']` at y.
    pub fn derivatives(&self, y: f64) -> [f64; 3] {
        let b = &self.basis;
        let lam = b.lambda0;
        let eps = self.epsilon;
        let j = b.j_derivatives(y);
        let mut out = [j[0], j[1], j[2]];
        if self.order == CompositeOrder::Zero {
            return out;
        }
        let sq = eps.sqrt();
        let w = &self.corrections.w;
        if self.bc == BoundaryCondition::Clamped {
            let w1 = w.at_one[0];
            let e = (-(1.0 - y) / sq).exp();
            // d/dy e^{−(1−y)/√ε} = e/√ε
            let layer = [w1 * e, w1 * e / sq, w1 * e / eps];
            for k in 0..3 {
                out[k] -= sq * lam * (w.derivative(y, k) - layer[k]);
            }
        }
        if self.order == CompositeOrder::Half {
            return out;
        }
        let third = eps.cbrt();
        let x = y / third;
        let coef = eps.powf(2.0 / 3.0) * lam * lam / (6.0 * AI_PRIME0);
        let (ai, ai_p) = ai_and_prime(x);
        let tail = ai_tail_integral(x);
        let inner = [3.0 * tail, -3.0 * ai / third, -3.0 * ai_p / (third * third)];
        for k in 0..3 {
            out[k] -= coef * (j[k] - inner[k]);
        }
        if self.order == CompositeOrder::TwoThirds {
            return out;
        }
        let layer = self.layer.as_ref().expect("checked at construction");
        let lambda1 = self.lambda1.expect("checked at construction");
        let v = &self.corrections.v;
        let (ty, ty1) = match b.y_and_prime(y) {
            Ok(p) => p,
            Err(_) => return [f64::NAN; 3],
        };
        let ty2 = -(ty1 + lam * ty) / y;
        let tys = [ty, ty1, ty2];
        let cj = c_infty(layer) - lam.powi(3) / 9.0 * eps.ln();
        let jp1 = b.j_prime_at_one();
        let e = (-(1.0 - y) / sq).exp();
        let support = [jp1 * e, jp1 * e / sq, jp1 * e / eps];
        for k in 0..3 {
            let bulk = cj * j[k] + lam.powi(3) / 3.0 * tys[k] - lambda1 * w.derivative(y, k)
                + v.derivative(y, k);
            out[k] += eps * (bulk + support[k]);
        }
        out
    }
}
