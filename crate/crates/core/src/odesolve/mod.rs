//! Two-point boundary value problems for first-order systems `y' = f(x, y, p)`.
//!
//! The discretisation is three-point Lobatto IIIA collocation (fourth order):
//! on each interval the solution is the cubic Hermite interpolant of the nodal
//! states and slopes, and the ODE is enforced at both ends and the midpoint.
//! An optional scalar unknown `p` (an eigenvalue, say) is carried as an extra
//! constant state so the Newton matrix stays banded. Boundary conditions are
//! separated: some rows act on `y(a)`, the rest on `y(b)`.

mod banded;

use banded::BandMatrix;

use crate::error::{Error, Result};

/// Hard cap on mesh intervals during refinement.
pub const MAX_INTERVALS: usize = 20_000;
const MIN_INTERVALS: usize = 8;
const MAX_BACKTRACKS: usize = 8;

/// A first-order BVP with separated boundary conditions.
///
/// With `has_parameter()` the total number of boundary residuals is
/// `dimension() + 1`; otherwise it is `dimension()`. The first
/// `left_conditions()` of them are imposed at `a` by [`bc_left`](Self::bc_left),
/// the remainder at `b` by [`bc_right`](Self::bc_right).
pub trait BvpProblem {
    fn dimension(&self) -> usize;

    fn has_parameter(&self) -> bool {
        false
    }

    fn left_conditions(&self) -> usize;

    fn rhs(&self, x: f64, y: &[f64], p: f64, dy: &mut [f64]);

    /// `∂f/∂y` (row-major, `d × d`) and `∂f/∂p`. Forward differences unless
    /// overridden.
    fn rhs_jacobian(&self, x: f64, y: &[f64], p: f64, dfdy: &mut [f64], dfdp: &mut [f64]) {
        let d = self.dimension();
        let mut base = vec![0.0; d];
        let mut bumped = vec![0.0; d];
        self.rhs(x, y, p, &mut base);
        let mut yy = y.to_vec();
        for j in 0..d {
            let step = f64::EPSILON.sqrt() * y[j].abs().max(1.0);
            yy[j] = y[j] + step;
            self.rhs(x, &yy, p, &mut bumped);
            yy[j] = y[j];
            for i in 0..d {
                dfdy[i * d + j] = (bumped[i] - base[i]) / step;
            }
        }
        if self.has_parameter() {
            let step = f64::EPSILON.sqrt() * p.abs().max(1.0);
            self.rhs(x, y, p + step, &mut bumped);
            for i in 0..d {
                dfdp[i] = (bumped[i] - base[i]) / step;
            }
        }
    }

    fn bc_left(&self, ya: &[f64], p: f64, res: &mut [f64]);

    fn bc_right(&self, yb: &[f64], p: f64, res: &mut [f64]);

    /// Mesh to use when this problem is reached by continuation; `None` keeps
    /// the predecessor's mesh.
    fn preferred_mesh(&self) -> Option<Vec<f64>> {
        None
    }
}

/// Nodal solution, also used as an initial guess.
#[derive(Debug, Clone, PartialEq)]
pub struct BvpSolution {
    pub mesh: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    /// `f(x_i, y_i, p)` at each node; empty for a raw guess, in which case
    /// [`eval`](Self::eval) interpolates linearly.
    pub slopes: Vec<Vec<f64>>,
    pub scalar_unknown: Option<f64>,
    /// Largest per-interval local error estimate: interval length times the
    /// RMS scaled collocation defect.
    pub residual_norm: f64,
}

impl BvpSolution {
    /// Guess built by sampling `state` on `mesh`.
    pub fn from_fn<F: FnMut(f64) -> Vec<f64>>(
        mesh: Vec<f64>,
        mut state: F,
        scalar_unknown: Option<f64>,
    ) -> Self {
        let states = mesh.iter().map(|&x| state(x)).collect();
        Self {
            mesh,
            states,
            slopes: Vec::new(),
            scalar_unknown,
            residual_norm: f64::INFINITY,
        }
    }

    pub fn dimension(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    pub fn intervals(&self) -> usize {
        self.mesh.len().saturating_sub(1)
    }

    fn locate(&self, x: f64) -> usize {
        let n = self.mesh.len();
        match self.mesh.binary_search_by(|m| m.total_cmp(&x)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.clamp(1, n - 1) - 1,
        }
    }

    /// State at `x` (clamped to the mesh ends).
    pub fn eval(&self, x: f64) -> Vec<f64> {
        let i = self.locate(x);
        let (x0, x1) = (self.mesh[i], self.mesh[i + 1]);
        let h = x1 - x0;
        let t = ((x - x0) / h).clamp(0.0, 1.0);
        let (y0, y1) = (&self.states[i], &self.states[i + 1]);
        if self.slopes.is_empty() {
            return y0.iter().zip(y1).map(|(a, b)| a + t * (b - a)).collect();
        }
        let (f0, f1) = (&self.slopes[i], &self.slopes[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        (0..y0.len())
            .map(|k| h00 * y0[k] + h10 * h * f0[k] + h01 * y1[k] + h11 * h * f1[k])
            .collect()
    }

    /// Derivative of the interpolant at `x`.
    pub fn eval_derivative(&self, x: f64) -> Vec<f64> {
        let i = self.locate(x);
        let (x0, x1) = (self.mesh[i], self.mesh[i + 1]);
        let h = x1 - x0;
        let t = ((x - x0) / h).clamp(0.0, 1.0);
        let (y0, y1) = (&self.states[i], &self.states[i + 1]);
        if self.slopes.is_empty() {
            return y0.iter().zip(y1).map(|(a, b)| (b - a) / h).collect();
        }
        let (f0, f1) = (&self.slopes[i], &self.slopes[i + 1]);
        let t2 = t * t;
        let a = (6.0 * t2 - 6.0 * t) / h;
        let b = 3.0 * t2 - 4.0 * t + 1.0;
        let c = 3.0 * t2 - 2.0 * t;
        (0..y0.len())
            .map(|k| a * (y0[k] - y1[k]) + b * f0[k] + c * f1[k])
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_intervals: usize,
    pub max_newton_iterations: usize,
    pub max_refinements: usize,
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_intervals: MAX_INTERVALS,
            max_newton_iterations: 40,
            max_refinements: 60,
        }
    }
}

/// Solve with default options and collocation tolerance `tol`.
pub fn solve_bvp<P: BvpProblem + ?Sized>(
    problem: &P,
    guess: &BvpSolution,
    tol: f64,
) -> Result<BvpSolution> {
    solve_bvp_with(problem, guess, &SolverOptions::with_tol(tol))
}

pub fn solve_bvp_with<P: BvpProblem + ?Sized>(
    problem: &P,
    guess: &BvpSolution,
    opts: &SolverOptions,
) -> Result<BvpSolution> {
    let sys = System::new(problem)?;
    if !(opts.tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if guess.dimension() != sys.d || guess.states.iter().any(|s| s.len() != sys.d) {
        return Err(Error::Invalid(format!(
            "guess has dimension {}, problem has {}",
            guess.dimension(),
            sys.d
        )));
    }
    if guess.intervals() < MIN_INTERVALS {
        return Err(Error::Invalid(format!(
            "mesh needs at least {MIN_INTERVALS} intervals, got {}",
            guess.intervals()
        )));
    }
    if guess.mesh.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Invalid("mesh must be strictly increasing".into()));
    }
    if sys.has_p && guess.scalar_unknown.is_none() {
        return Err(Error::Invalid("problem has a scalar unknown but the guess does not".into()));
    }

    let mut mesh = guess.mesh.clone();
    let mut z = sys.pack(&guess.states, guess.scalar_unknown);
    let mut refinements = 0;
    loop {
        sys.newton(&mesh, &mut z, opts.max_newton_iterations)?;
        let rms = sys.rms_residuals(&mesh, &z);
        let worst = rms.iter().copied().fold(0.0, f64::max);
        if worst <= opts.tol {
            return Ok(sys.unpack(mesh, &z, worst));
        }
        let new_mesh = refine(&mesh, &rms, opts.tol);
        if refinements >= opts.max_refinements || new_mesh.len() - 1 > opts.max_intervals {
            return Err(Error::MeshLimit {
                max_intervals: opts.max_intervals,
                residual: worst,
            });
        }
        let current = sys.unpack(mesh, &z, worst);
        z = sys.resample(&current, &new_mesh);
        mesh = new_mesh;
        refinements += 1;
    }
}

/// Interpolates `solution` onto `mesh` (states, and slopes recomputed for
/// `problem`).
pub fn resample<P: BvpProblem + ?Sized>(
    problem: &P,
    solution: &BvpSolution,
    mesh: &[f64],
) -> Result<BvpSolution> {
    let sys = System::new(problem)?;
    let z = sys.resample(solution, mesh);
    Ok(sys.unpack(mesh.to_vec(), &z, f64::INFINITY))
}

/// Walks `family` along `schedule`, seeding each solve from its predecessor.
///
/// `initial` must already be converged at `schedule[0]` and is returned as the
/// first element. A failed step is retried once through the midpoint of the
/// parameter step.
pub fn continuation<P, F>(
    mut family: F,
    schedule: &[f64],
    initial: BvpSolution,
    opts: &SolverOptions,
) -> Result<Vec<BvpSolution>>
where
    P: BvpProblem,
    F: FnMut(f64) -> P,
{
    if schedule.is_empty() {
        return Err(Error::Invalid("empty continuation schedule".into()));
    }
    let increasing = schedule.windows(2).all(|w| w[1] > w[0]);
    let decreasing = schedule.windows(2).all(|w| w[1] < w[0]);
    if !(increasing || decreasing) {
        return Err(Error::Invalid("continuation schedule must be strictly monotone".into()));
    }
    let step = |family: &mut F, from: &BvpSolution, param: f64| -> Result<BvpSolution> {
        let problem = family(param);
        let seed = match problem.preferred_mesh() {
            Some(mesh) => resample(&problem, from, &mesh)?,
            None => from.clone(),
        };
        solve_bvp_with(&problem, &seed, opts)
    };

    let mut out = Vec::with_capacity(schedule.len());
    out.push(initial);
    for w in schedule.windows(2) {
        let prev = out.last().expect("nonempty");
        let next = match step(&mut family, prev, w[1]) {
            Ok(sol) => sol,
            Err(_) => {
                let mid = 0.5 * (w[0] + w[1]);
                step(&mut family, prev, mid)
                    .and_then(|m| step(&mut family, &m, w[1]))
                    .map_err(|e| Error::Continuation {
                        parameter: w[1],
                        source: Box::new(e),
                    })?
            }
        };
        out.push(next);
    }
    Ok(out)
}

/// Scipy-style refinement: one node where the residual is above `tol`, two
/// where it is a hundredfold above.
fn refine(mesh: &[f64], rms: &[f64], tol: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(mesh.len() * 2);
    for (i, &r) in rms.iter().enumerate() {
        let (a, b) = (mesh[i], mesh[i + 1]);
        out.push(a);
        if r >= 100.0 * tol {
            out.push(a + (b - a) / 3.0);
            out.push(a + 2.0 * (b - a) / 3.0);
        } else if r > tol {
            out.push(0.5 * (a + b));
        }
    }
    out.push(*mesh.last().expect("nonempty mesh"));
    out
}

/// Problem wrapper holding the layout of the Newton unknowns: per node the
/// `d` states followed, when present, by a copy of the parameter.
struct System<'a, P: ?Sized> {
    problem: &'a P,
    d: usize,
    dd: usize,
    has_p: bool,
    ka: usize,
}

struct Interval {
    f0: Vec<f64>,
    fm: Vec<f64>,
    f1: Vec<f64>,
}

impl<'a, P: BvpProblem + ?Sized> System<'a, P> {
    fn new(problem: &'a P) -> Result<Self> {
        let d = problem.dimension();
        let has_p = problem.has_parameter();
        let dd = d + usize::from(has_p);
        let ka = problem.left_conditions();
        if d == 0 || ka > dd {
            return Err(Error::Invalid(format!(
                "{ka} left conditions for {dd} boundary residuals"
            )));
        }
        Ok(Self {
            problem,
            d,
            dd,
            has_p,
            ka,
        })
    }

    fn pack(&self, states: &[Vec<f64>], p: Option<f64>) -> Vec<f64> {
        let mut z = Vec::with_capacity(states.len() * self.dd);
        for s in states {
            z.extend_from_slice(s);
            if self.has_p {
                z.push(p.unwrap_or(0.0));
            }
        }
        z
    }

    fn param(&self, z: &[f64], node: usize) -> f64 {
        if self.has_p {
            z[node * self.dd + self.d]
        } else {
            0.0
        }
    }

    fn state<'z>(&self, z: &'z [f64], node: usize) -> &'z [f64] {
        &z[node * self.dd..node * self.dd + self.d]
    }

    fn unpack(&self, mesh: Vec<f64>, z: &[f64], residual_norm: f64) -> BvpSolution {
        let n = mesh.len();
        let p = self.param(z, 0);
        let states: Vec<Vec<f64>> = (0..n).map(|i| self.state(z, i).to_vec()).collect();
        let slopes = (0..n)
            .map(|i| {
                let mut f = vec![0.0; self.d];
                self.problem.rhs(mesh[i], &states[i], p, &mut f);
                f
            })
            .collect();
        BvpSolution {
            mesh,
            states,
            slopes,
            scalar_unknown: self.has_p.then_some(p),
            residual_norm,
        }
    }

    fn resample(&self, sol: &BvpSolution, mesh: &[f64]) -> Vec<f64> {
        let states: Vec<Vec<f64>> = mesh.iter().map(|&x| sol.eval(x)).collect();
        self.pack(&states, sol.scalar_unknown)
    }

    fn interval(&self, x0: f64, h: f64, y0: &[f64], y1: &[f64], p: f64) -> (Interval, Vec<f64>) {
        let d = self.d;
        let mut f0 = vec![0.0; d];
        let mut f1 = vec![0.0; d];
        let mut fm = vec![0.0; d];
        self.problem.rhs(x0, y0, p, &mut f0);
        self.problem.rhs(x0 + h, y1, p, &mut f1);
        let ym: Vec<f64> = (0..d)
            .map(|k| 0.5 * (y0[k] + y1[k]) - h / 8.0 * (f1[k] - f0[k]))
            .collect();
        self.problem.rhs(x0 + 0.5 * h, &ym, p, &mut fm);
        (Interval { f0, fm, f1 }, ym)
    }

    fn residual(&self, mesh: &[f64], z: &[f64]) -> Vec<f64> {
        let (d, dd, ka) = (self.d, self.dd, self.ka);
        let nodes = mesh.len();
        let mut r = vec![0.0; nodes * dd];
        let last = nodes - 1;
        self.problem.bc_left(self.state(z, 0), self.param(z, 0), &mut r[..ka]);
        for i in 0..last {
            let h = mesh[i + 1] - mesh[i];
            let (y0, y1) = (self.state(z, i), self.state(z, i + 1));
            let p = self.param(z, i);
            let (iv, _) = self.interval(mesh[i], h, y0, y1, p);
            let row = ka + i * dd;
            for k in 0..d {
                r[row + k] = y1[k] - y0[k] - h / 6.0 * (iv.f0[k] + 4.0 * iv.fm[k] + iv.f1[k]);
            }
            if self.has_p {
                r[row + d] = self.param(z, i + 1) - p;
            }
        }
        let row = ka + last * dd;
        self.problem
            .bc_right(self.state(z, last), self.param(z, last), &mut r[row..]);
        r
    }

    fn jacobian(&self, mesh: &[f64], z: &[f64]) -> BandMatrix {
        let (d, dd, ka) = (self.d, self.dd, self.ka);
        let nodes = mesh.len();
        let n = nodes * dd;
        let kl = ka + dd - 1;
        let ku = 2 * dd - 1 - ka;
        let mut m = BandMatrix::zeros(n, kl, ku);

        self.bc_block(&mut m, z, 0, 0, ka, true);
        let mut j0 = vec![0.0; d * d];
        let mut j1 = vec![0.0; d * d];
        let mut jm = vec![0.0; d * d];
        let mut p0 = vec![0.0; d];
        let mut p1 = vec![0.0; d];
        let mut pm = vec![0.0; d];
        for i in 0..nodes - 1 {
            let h = mesh[i + 1] - mesh[i];
            let (x0, xm, x1) = (mesh[i], mesh[i] + 0.5 * h, mesh[i + 1]);
            let (y0, y1) = (self.state(z, i), self.state(z, i + 1));
            let p = self.param(z, i);
            let (_, ym) = self.interval(x0, h, y0, y1, p);
            self.problem.rhs_jacobian(x0, y0, p, &mut j0, &mut p0);
            self.problem.rhs_jacobian(x1, y1, p, &mut j1, &mut p1);
            self.problem.rhs_jacobian(xm, &ym, p, &mut jm, &mut pm);
            let row = ka + i * dd;
            let c0 = i * dd;
            let c1 = (i + 1) * dd;
            for a in 0..d {
                for b in 0..d {
                    // (Jm J0)_{ab} and (Jm J1)_{ab}
                    let mut jmj0 = 0.0;
                    let mut jmj1 = 0.0;
                    for k in 0..d {
                        jmj0 += jm[a * d + k] * j0[k * d + b];
                        jmj1 += jm[a * d + k] * j1[k * d + b];
                    }
                    let eye = if a == b { 1.0 } else { 0.0 };
                    let left = -eye - h / 6.0 * j0[a * d + b] - h / 3.0 * jm[a * d + b]
                        - h * h / 12.0 * jmj0;
                    let right = eye - h / 6.0 * j1[a * d + b] - h / 3.0 * jm[a * d + b]
                        + h * h / 12.0 * jmj1;
                    m.add(row + a, c0 + b, left);
                    m.add(row + a, c1 + b, right);
                }
                if self.has_p {
                    // y_mid depends on p through f0 and f1.
                    let mut jm_dym = 0.0;
                    for k in 0..d {
                        jm_dym += jm[a * d + k] * (-h / 8.0) * (p1[k] - p0[k]);
                    }
                    let dp = -h / 6.0 * (p0[a] + 4.0 * (pm[a] + jm_dym) + p1[a]);
                    m.add(row + a, c0 + d, dp);
                }
            }
            if self.has_p {
                m.add(row + d, c0 + d, -1.0);
                m.add(row + d, c1 + d, 1.0);
            }
        }
        let last = nodes - 1;
        self.bc_block(&mut m, z, last, ka + last * dd, dd - ka, false);
        m
    }

    /// Finite-difference Jacobian of one side's boundary conditions.
    fn bc_block(&self, m: &mut BandMatrix, z: &[f64], node: usize, row: usize, rows: usize, left: bool) {
        if rows == 0 {
            return;
        }
        let dd = self.dd;
        let mut local: Vec<f64> = z[node * dd..(node + 1) * dd].to_vec();
        let eval = |v: &[f64], out: &mut [f64]| {
            let p = if self.has_p { v[self.d] } else { 0.0 };
            if left {
                self.problem.bc_left(&v[..self.d], p, out);
            } else {
                self.problem.bc_right(&v[..self.d], p, out);
            }
        };
        let mut base = vec![0.0; rows];
        let mut bumped = vec![0.0; rows];
        eval(&local, &mut base);
        for c in 0..dd {
            let orig = local[c];
            let step = f64::EPSILON.sqrt() * orig.abs().max(1.0);
            local[c] = orig + step;
            eval(&local, &mut bumped);
            local[c] = orig;
            for r in 0..rows {
                let v = (bumped[r] - base[r]) / step;
                if v != 0.0 {
                    m.add(row + r, node * dd + c, v);
                }
            }
        }
    }

    fn newton(&self, mesh: &[f64], z: &mut Vec<f64>, max_iter: usize) -> Result<()> {
        let norm = |r: &[f64]| r.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut r = self.residual(mesh, z);
        let mut rn = norm(&r);
        let mut history = vec![rn];
        let fail = |history: Vec<f64>, z: &[f64], iterations: usize| Error::NewtonDivergence {
            iterations,
            residual: *history.last().unwrap_or(&f64::NAN),
            history,
            last_iterate: z.to_vec(),
        };
        for it in 1..=max_iter {
            if !rn.is_finite() {
                return Err(fail(history, z, it - 1));
            }
            let mut jac = self.jacobian(mesh, z);
            if jac.factor().is_err() {
                return Err(fail(history, z, it - 1));
            }
            let mut step: Vec<f64> = r.iter().map(|v| -v).collect();
            jac.solve(&mut step);
            let scaled = step
                .iter()
                .zip(z.iter())
                .map(|(s, v)| s.abs() / (1.0 + v.abs()))
                .fold(0.0, f64::max);
            if !scaled.is_finite() {
                return Err(fail(history, z, it));
            }
            if scaled < 1e-8 {
                // Inside the quadratic basin: take the full step without a
                // line search, whose test is meaningless at the rounding floor.
                for (v, s) in z.iter_mut().zip(&step) {
                    *v += s;
                }
                r = self.residual(mesh, z);
                rn = norm(&r);
                history.push(rn);
                if scaled < 1e-11 {
                    return Ok(());
                }
                continue;
            }
            let mut alpha = 1.0;
            let mut accepted = false;
            for _ in 0..=MAX_BACKTRACKS {
                let trial: Vec<f64> = z.iter().zip(&step).map(|(v, s)| v + alpha * s).collect();
                let rt = self.residual(mesh, &trial);
                let rtn = norm(&rt);
                if rtn.is_finite() && rtn <= (1.0 - 1e-4 * alpha) * rn {
                    *z = trial;
                    r = rt;
                    rn = rtn;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            history.push(rn);
            if !accepted {
                return Err(fail(history, z, it));
            }
        }
        Err(fail(history, z, max_iter))
    }

    /// Local error estimate per interval: `h` times the RMS of the scaled
    /// defect `|S' − f(x, S)| / (1 + |f|)`, the RMS taken by five-point
    /// Lobatto quadrature.
    fn rms_residuals(&self, mesh: &[f64], z: &[f64]) -> Vec<f64> {
        let d = self.d;
        let s = 0.5 * (3.0f64 / 7.0).sqrt();
        let mut out = Vec::with_capacity(mesh.len() - 1);
        let mut f = vec![0.0; d];
        for i in 0..mesh.len() - 1 {
            let h = mesh[i + 1] - mesh[i];
            let (y0, y1) = (self.state(z, i), self.state(z, i + 1));
            let p = self.param(z, i);
            let (iv, _) = self.interval(mesh[i], h, y0, y1, p);
            let mut sums = [0.0; 3];
            for (slot, t) in sums.iter_mut().zip([0.5 - s, 0.5, 0.5 + s]) {
                let t2 = t * t;
                let t3 = t2 * t;
                let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
                let h10 = t3 - 2.0 * t2 + t;
                let h01 = -2.0 * t3 + 3.0 * t2;
                let h11 = t3 - t2;
                let da = (6.0 * t2 - 6.0 * t) / h;
                let db = 3.0 * t2 - 4.0 * t + 1.0;
                let dc = 3.0 * t2 - 2.0 * t;
                let yt: Vec<f64> = (0..d)
                    .map(|k| h00 * y0[k] + h10 * h * iv.f0[k] + h01 * y1[k] + h11 * h * iv.f1[k])
                    .collect();
                self.problem.rhs(mesh[i] + t * h, &yt, p, &mut f);
                for k in 0..d {
                    let ds = da * (y0[k] - y1[k]) + db * iv.f0[k] + dc * iv.f1[k];
                    let e = (ds - f[k]) / (1.0 + f[k].abs());
                    *slot += e * e;
                }
            }
            let rms = (0.5 * (49.0 / 90.0 * (sums[0] + sums[2]) + 32.0 / 45.0 * sums[1])).sqrt();
            out.push(h * rms);
        }
        out
    }
}
