//! Vibration modes of a hanging rod with weak bending stiffness.
//!
//! The eigenproblem `ε u'''' − (y u')' = λ u` on `0 < y < 1` with free-end
//! conditions `u''(0) = u'''(0) = 0`, `u(1) = 0`, and either `u'(1) = 0`
//! (clamped) or `u''(1) = 0` (pinned), normalised by `u(0) = 1`, is solved two
//! ways: directly by collocation with ε-continuation ([`eigensolver`]), and by
//! matched asymptotic expansions in powers of ε ([`asymptotics`]).

pub mod asymptotics;
pub mod eigensolver;
pub mod error;
pub mod odesolve;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
