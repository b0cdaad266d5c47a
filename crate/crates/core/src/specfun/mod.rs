//! Special functions: Bessel J0/Y0/J1, Airy Ai/Bi, zeros of J0, and the
//! rescaled pair `J̃(y) = J0(2√(λ0 y))`, `Ỹ(y) = π Y0(2√(λ0 y)) − (ln λ0 + 2γ) J̃(y)`.
//!
//! All evaluators are pure functions of their arguments.

mod airy;
mod basis;
mod bessel;

pub use airy::{
    ai_and_prime, ai_integral, ai_tail_integral, airy_ai, airy_ai_prime, airy_bi, airy_bi_prime,
    bi_and_prime, AI0, AI_PRIME0, BI0, BI_PRIME0,
};
pub use basis::{basis, j0_positive_zero, tilde_j, tilde_y, SpectralBasis};
pub use bessel::{
    bessel_j0, bessel_j0_prime, bessel_j1, bessel_j1_prime, bessel_y0, bessel_y0_prime, bessel_y1,
};

/// Euler's constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;
