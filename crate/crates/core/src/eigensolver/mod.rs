//! Direct numerical eigenpairs of `ε u'''' − (y u')' = λ u` on `[0, 1]`.
//!
//! The state is `(u, u', u'', u''')`, λ is the scalar unknown, and `u(0) = 1`
//! closes the system. The mesh has three regions: an Airy layer of width
//! `~10 ε^{1/3}` at the free end, a bulk region, and a layer of width
//! `~10 ε^{1/2}` at the support.

mod sweep;

pub use sweep::{
    compare_eigenfunction, default_schedule, fit_power_law, fit_slope, start_epsilon, sweep,
    Column, EigenfunctionReport, ErrorRow, ErrorTable, SlopeFit, SweepFailure,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::odesolve::{resample, solve_bvp_with, BvpProblem, BvpSolution, SolverOptions};
use crate::specfun::{basis, SpectralBasis};

pub const EPS_MIN: f64 = 1e-8;
pub const EPS_MAX: f64 = 10.0;
/// Continuation step factor, `10^{-1/2}`.
pub const EPS_STEP: f64 = 0.316_227_766_016_837_94;
const REGION_CAP: f64 = 0.3;
const NODES_PER_REGION: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    Clamped,
    Pinned,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Clamped => "clamped",
            Self::Pinned => "pinned",
        })
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "clamped" => Ok(Self::Clamped),
            "pinned" => Ok(Self::Pinned),
            other => Err(Error::Invalid(format!(
                "boundary condition must be clamped or pinned, got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemConfig {
    pub epsilon: f64,
    pub bc: BoundaryCondition,
    pub mode_n: usize,
}

impl ProblemConfig {
    pub fn new(epsilon: f64, bc: BoundaryCondition, mode_n: usize) -> Result<Self> {
        let cfg = Self { epsilon, bc, mode_n };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= EPS_MIN && self.epsilon <= EPS_MAX) {
            return Err(Error::Invalid(format!(
                "epsilon must lie in [{EPS_MIN:e}, {EPS_MAX}], got {}",
                self.epsilon
            )));
        }
        if self.mode_n == 0 {
            return Err(Error::Invalid("mode number must be >= 1".into()));
        }
        Ok(())
    }

    /// Collocation tolerance: 1e-10 down to ε = 1e-6, 1e-8 below.
    pub fn default_tol(&self) -> f64 {
        if self.epsilon >= 1e-6 {
            1e-10
        } else {
            1e-8
        }
    }

    fn with_epsilon(&self, epsilon: f64) -> Self {
        Self { epsilon, ..*self }
    }
}

/// The eigenproblem as a first-order BVP.
#[derive(Debug, Clone, Copy)]
pub struct EigenProblem {
    pub config: ProblemConfig,
}

impl BvpProblem for EigenProblem {
    fn dimension(&self) -> usize {
        4
    }
    fn has_parameter(&self) -> bool {
        true
    }
    fn left_conditions(&self) -> usize {
        3
    }
    fn rhs(&self, y: f64, s: &[f64], lambda: f64, ds: &mut [f64]) {
        ds[0] = s[1];
        ds[1] = s[2];
        ds[2] = s[3];
        ds[3] = (y * s[2] + s[1] + lambda * s[0]) / self.config.epsilon;
    }
    fn rhs_jacobian(&self, y: f64, s: &[f64], lambda: f64, dfdy: &mut [f64], dfdp: &mut [f64]) {
        let inv = 1.0 / self.config.epsilon;
        dfdy.fill(0.0);
        dfdy[1] = 1.0;
        dfdy[4 + 2] = 1.0;
        dfdy[8 + 3] = 1.0;
        dfdy[12] = lambda * inv;
        dfdy[13] = inv;
        dfdy[14] = y * inv;
        dfdp[..3].fill(0.0);
        dfdp[3] = s[0] * inv;
    }
    fn bc_left(&self, s: &[f64], _lambda: f64, res: &mut [f64]) {
        res[0] = s[2];
        res[1] = s[3];
        res[2] = s[0] - 1.0;
    }
    fn bc_right(&self, s: &[f64], _lambda: f64, res: &mut [f64]) {
        res[0] = s[0];
        res[1] = match self.config.bc {
            BoundaryCondition::Clamped => s[1],
            BoundaryCondition::Pinned => s[2],
        };
    }
    fn preferred_mesh(&self) -> Option<Vec<f64>> {
        Some(initial_mesh(self.config.epsilon))
    }
}

/// Three-region starting mesh; the solver refines it further.
pub fn initial_mesh(epsilon: f64) -> Vec<f64> {
    let left = (10.0 * epsilon.cbrt()).min(REGION_CAP);
    let right = 1.0 - (10.0 * epsilon.sqrt()).min(REGION_CAP);
    let mut mesh = Vec::with_capacity(3 * NODES_PER_REGION + 1);
    let n = NODES_PER_REGION as f64;
    // Quadratic grading toward each end inside the layer regions.
    for i in 0..NODES_PER_REGION {
        let t = i as f64 / n;
        mesh.push(left * t * t);
    }
    for i in 0..NODES_PER_REGION {
        let t = i as f64 / n;
        mesh.push(left + (right - left) * t);
    }
    for i in 0..=NODES_PER_REGION {
        let t = i as f64 / n;
        mesh.push(1.0 - (1.0 - right) * (1.0 - t) * (1.0 - t));
    }
    mesh
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    pub config: ProblemConfig,
    pub lambda: f64,
    /// Mesh, nodal `(u, u', u'', u''')`, and the C¹ interpolant.
    pub solution: BvpSolution,
    pub residual_norm: f64,
}

impl EigenSolution {
    /// `(u, u', u'', u''')` at y.
    pub fn state(&self, y: f64) -> [f64; 4] {
        let s = self.solution.eval(y);
        [s[0], s[1], s[2], s[3]]
    }

    pub fn u(&self, y: f64) -> f64 {
        self.solution.eval(y)[0]
    }

    /// Sign changes of u at the mesh nodes in `[0, 1)`, ignoring values at
    /// rounding level (the end y = 1 is a zero for every mode).
    pub fn interior_zeros(&self) -> usize {
        let mut last = 0.0f64;
        let mut count = 0;
        let n = self.solution.states.len();
        for s in &self.solution.states[..n - 1] {
            let u = s[0];
            if u.abs() <= 1e-9 {
                continue;
            }
            if last != 0.0 && u.signum() != last.signum() {
                count += 1;
            }
            last = u;
        }
        count
    }

    pub fn mesh(&self) -> &[f64] {
        &self.solution.mesh
    }

    /// The five closing conditions, in the order u''(0), u'''(0), u(0) − 1,
    /// u(1), and u'(1) or u''(1).
    pub fn boundary_residuals(&self) -> [f64; 5] {
        let p = EigenProblem { config: self.config };
        let a = &self.solution.states[0];
        let b = self.solution.states.last().expect("nonempty");
        let mut out = [0.0; 5];
        p.bc_left(a, self.lambda, &mut out[..3]);
        p.bc_right(b, self.lambda, &mut out[3..]);
        out
    }
}

/// Naive mode `J̃` with λ = λ0 on the default mesh.
pub fn naive_guess(config: &ProblemConfig) -> Result<BvpSolution> {
    let b = basis(config.mode_n)?;
    Ok(BvpSolution::from_fn(
        initial_mesh(config.epsilon),
        |y| b.j_derivatives(y)[..4].to_vec(),
        Some(b.lambda0),
    ))
}

/// Largest deviation from `expected` still counted as mode n: half the gap
/// to the nearer neighbouring naive eigenvalue.
pub fn mode_window(n: usize) -> Result<f64> {
    let here = basis(n)?.lambda0;
    let above = basis(n + 1)?.lambda0 - here;
    let below = if n > 1 {
        here - basis(n - 1)?.lambda0
    } else {
        f64::INFINITY
    };
    Ok(0.5 * above.min(below))
}

/// Single solve. Without a guess, starts from the naive mode, which works
/// for moderate ε; reach small ε with [`solve_continued`].
pub fn solve(config: &ProblemConfig, guess: Option<&EigenSolution>) -> Result<EigenSolution> {
    solve_with_tol(config, guess, config.default_tol())
}

pub fn solve_with_tol(
    config: &ProblemConfig,
    guess: Option<&EigenSolution>,
    tol: f64,
) -> Result<EigenSolution> {
    solve_expecting(config, guess, None, tol)
}

/// `expected` overrides the eigenvalue the mode-jump check compares with
/// (default: the guess's λ, or λ0 without a guess).
fn solve_expecting(
    config: &ProblemConfig,
    guess: Option<&EigenSolution>,
    expected: Option<f64>,
    tol: f64,
) -> Result<EigenSolution> {
    config.validate()?;
    let problem = EigenProblem { config: *config };
    let mesh = initial_mesh(config.epsilon);
    let lambda0 = basis(config.mode_n)?.lambda0;
    let (seed, seed_lambda) = match guess {
        Some(g) => (resample(&problem, &g.solution, &mesh)?, g.lambda),
        None => (naive_guess(config)?, lambda0),
    };
    let expected = expected.unwrap_or(seed_lambda);
    let solution = solve_bvp_with(&problem, &seed, &SolverOptions::with_tol(tol))?;
    let lambda = solution.scalar_unknown.expect("eigenproblem has a scalar unknown");
    // The spectrum spreads roughly in proportion to λ as ε grows.
    let allowed = mode_window(config.mode_n)? * (expected / lambda0).max(1.0);
    if !((lambda - expected).abs() <= allowed) {
        return Err(Error::ModeJump {
            found: lambda,
            expected,
            allowed,
        });
    }
    let out = EigenSolution {
        config: *config,
        lambda,
        residual_norm: solution.residual_norm,
        solution,
    };
    // The λ window alone can admit a neighbouring mode whose eigenvalue has
    // drifted by about a gap; the zero count pins the mode down.
    let zeros = out.interior_zeros();
    if zeros != config.mode_n - 1 {
        return Err(Error::ModeNodes {
            zeros,
            expected: config.mode_n - 1,
        });
    }
    Ok(out)
}

/// A continuation chain in ε for one (bc, n).
///
/// Each step is seeded from the latest solution; the mode-jump check
/// compares against a power-law extrapolation of the last two eigenvalues.
/// A failed step is retried once through the geometric midpoint.
#[derive(Debug, Clone)]
pub struct Chain {
    previous: Option<EigenSolution>,
    current: EigenSolution,
}

impl Chain {
    /// Starts from the naive mode at `config.epsilon`.
    pub fn start(config: &ProblemConfig) -> Result<Self> {
        Ok(Self {
            previous: None,
            current: solve(config, None)?,
        })
    }

    pub fn from_solution(solution: EigenSolution) -> Self {
        Self {
            previous: None,
            current: solution,
        }
    }

    pub fn current(&self) -> &EigenSolution {
        &self.current
    }

    fn predict(&self, eps: f64) -> Option<f64> {
        let prev = self.previous.as_ref()?;
        let cur = &self.current;
        let span = (cur.config.epsilon / prev.config.epsilon).ln();
        if span == 0.0 || !(prev.lambda > 0.0 && cur.lambda > 0.0) {
            return None;
        }
        let rate = (cur.lambda / prev.lambda).ln() / span;
        Some(cur.lambda * (rate * (eps / cur.config.epsilon).ln()).exp())
    }

    fn attempt(&self, eps: f64) -> Result<EigenSolution> {
        let config = self.current.config.with_epsilon(eps);
        solve_expecting(&config, Some(&self.current), self.predict(eps), config.default_tol())
    }

    fn push(&mut self, next: EigenSolution) {
        self.previous = Some(std::mem::replace(&mut self.current, next));
    }

    /// Advances to `eps`.
    pub fn step_to(&mut self, eps: f64) -> Result<&EigenSolution> {
        match self.attempt(eps) {
            Ok(next) => self.push(next),
            Err(_) => {
                let mid = (eps * self.current.config.epsilon).sqrt();
                let wrap = |e| Error::Continuation {
                    parameter: eps,
                    source: Box::new(e),
                };
                let mut trial = self.clone();
                let m = trial.attempt(mid).map_err(wrap)?;
                trial.push(m);
                let next = trial.attempt(eps).map_err(wrap)?;
                trial.push(next);
                *self = trial;
            }
        }
        Ok(&self.current)
    }
}

/// Solves at `config.epsilon` by continuation from the mode's starting ε
/// (see [`start_epsilon`]).
pub fn solve_continued(config: &ProblemConfig) -> Result<EigenSolution> {
    config.validate()?;
    let mut schedule = default_schedule(start_epsilon(config.mode_n), config.epsilon).into_iter();
    let first = schedule.next().expect("schedule is nonempty");
    let mut chain = Chain::start(&config.with_epsilon(first))?;
    for eps in schedule {
        chain.step_to(eps)?;
    }
    Ok(chain.current)
}

/// `λ0` of the configuration's mode.
pub fn naive_basis(config: &ProblemConfig) -> Result<SpectralBasis> {
    basis(config.mode_n)
}
