use super::{BoundaryCondition, Chain, EigenSolution, ProblemConfig, EPS_STEP};
use crate::asymptotics::{lambda_asymptotic_to, lambda_series, CompositeEigenfunction, SeriesOrder};
use crate::error::{Error, Result};

/// Where a continuation chain for mode n starts from the naive mode:
/// ε = 0.1 for n = 1, else `0.1 n^{-6}`. The naive mode is a usable Newton
/// seed only while ε is inside the asymptotic regime `ε ≪ n^{-6}`.
pub fn start_epsilon(n: usize) -> f64 {
    (0.1 / (n as f64).powi(6)).min(0.1)
}

/// Geometric chain from `from` to `to` in steps of `10^{±1/2}`, both ends
/// included exactly.
pub fn default_schedule(from: f64, to: f64) -> Vec<f64> {
    let mut out = vec![from];
    let mut eps = from;
    if to < from {
        while eps * EPS_STEP > to * (1.0 + 1e-9) {
            eps *= EPS_STEP;
            out.push(eps);
        }
    } else if to > from {
        while eps / EPS_STEP < to * (1.0 - 1e-9) {
            eps /= EPS_STEP;
            out.push(eps);
        }
    }
    if to != from {
        out.push(to);
    }
    out
}

/// One ε of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub epsilon: f64,
    pub lambda_numeric: f64,
    pub lambda_naive: f64,
    /// `|λ − λ0| / λ0`.
    pub relative_error: f64,
    /// `|λ − λ0 − ε^{1/2} λ_{1/2}|` (clamped) or `|λ − λ0 − ε λ1|` (pinned).
    pub two_term_remainder: f64,
}

/// An ε at which the chain could not converge.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub epsilon: f64,
    pub message: String,
}

/// Rows ordered by strictly decreasing ε.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTable {
    pub bc: BoundaryCondition,
    pub mode_n: usize,
    pub rows: Vec<ErrorRow>,
    pub failures: Vec<SweepFailure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    RelativeError,
    Remainder,
}

impl ErrorRow {
    pub fn get(&self, column: Column) -> f64 {
        match column {
            Column::RelativeError => self.relative_error,
            Column::Remainder => self.two_term_remainder,
        }
    }
}

/// `value ≈ prefactor · ε^slope`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub prefactor: f64,
    pub r2: f64,
    pub points: usize,
}

/// Eigenvalues at each ε (strictly decreasing, inside `[EPS_MIN, EPS_MAX]`)
/// by continuation from [`start_epsilon`]: requested values above the start
/// are reached by one upward chain, the rest by one downward chain. A
/// failure is recorded and the chain carries on from its last converged
/// point.
pub fn sweep(bc: BoundaryCondition, n: usize, epsilons: &[f64]) -> Result<ErrorTable> {
    if epsilons.is_empty() {
        return Err(Error::Invalid("sweep needs at least one epsilon".into()));
    }
    if epsilons.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Invalid("sweep epsilons must be strictly decreasing".into()));
    }
    for &e in epsilons {
        ProblemConfig::new(e, bc, n)?;
    }
    let series = lambda_series(bc, n)?;
    let start = start_epsilon(n);
    let anchor = Chain::start(&ProblemConfig::new(start, bc, n)?)?;

    let mut found: Vec<(f64, Result<f64>)> = Vec::with_capacity(epsilons.len());
    let mut up = anchor.clone();
    for &eps in epsilons.iter().rev().filter(|&&e| e >= start) {
        found.push((eps, walk(&mut up, eps)));
    }
    let mut down = anchor;
    for &eps in epsilons.iter().filter(|&&e| e < start) {
        found.push((eps, walk(&mut down, eps)));
    }
    found.sort_by(|a, b| b.0.total_cmp(&a.0));

    let lambda0 = series.lambda0;
    let truncation = match bc {
        BoundaryCondition::Clamped => SeriesOrder::Half,
        BoundaryCondition::Pinned => SeriesOrder::One,
    };
    let mut table = ErrorTable {
        bc,
        mode_n: n,
        rows: Vec::new(),
        failures: Vec::new(),
    };
    for (epsilon, outcome) in found {
        match outcome {
            Ok(lambda) => table.rows.push(ErrorRow {
                epsilon,
                lambda_numeric: lambda,
                lambda_naive: lambda0,
                relative_error: (lambda - lambda0).abs() / lambda0,
                two_term_remainder: (lambda - lambda_asymptotic_to(&series, epsilon, truncation)?)
                    .abs(),
            }),
            Err(e) => table.failures.push(SweepFailure {
                epsilon,
                message: e.to_string(),
            }),
        }
    }
    Ok(table)
}

fn walk(chain: &mut Chain, eps: f64) -> Result<f64> {
    let from = chain.current().config.epsilon;
    for e in default_schedule(from, eps).into_iter().skip(1) {
        chain.step_to(e)?;
    }
    Ok(chain.current().lambda)
}

/// Least-squares line through `(log ε, log value)` for rows with ε in
/// `[lo, hi]` and a positive finite value. Needs at least four points.
pub fn fit_slope(table: &ErrorTable, column: Column, range: (f64, f64)) -> Result<SlopeFit> {
    let (lo, hi) = (range.0.min(range.1), range.0.max(range.1));
    let points: Vec<(f64, f64)> = table
        .rows
        .iter()
        .filter(|r| r.epsilon >= lo * (1.0 - 1e-12) && r.epsilon <= hi * (1.0 + 1e-12))
        .map(|r| (r.epsilon, r.get(column)))
        .collect();
    fit_power_law(&points)
}

/// Power-law fit `y ≈ prefactor · x^slope` on log-log axes.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<SlopeFit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let m = logs.len();
    if m < 4 {
        return Err(Error::Invalid(format!(
            "slope fit needs at least 4 usable points, got {m}"
        )));
    }
    let mf = m as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / mf;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / mf;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Invalid("slope fit needs distinct abscissae".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(SlopeFit {
        slope,
        prefactor: intercept.exp(),
        r2,
        points: m,
    })
}

/// Numeric against composite eigenfunction on the numeric mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenfunctionReport {
    /// `max |u − 𝒰|`, `max |u' − 𝒰'|`, `max |u'' − 𝒰''|`.
    pub sup: [f64; 3],
    /// Where each maximum occurs.
    pub argmax: [f64; 3],
    /// `(y, |u(y) − 𝒰(y)|)` at every mesh node where 𝒰 is defined.
    pub pointwise: Vec<(f64, f64)>,
    /// Mesh nodes skipped because 𝒰 is not finite there.
    pub skipped: usize,
}

pub fn compare_eigenfunction(
    numeric: &EigenSolution,
    composite: &CompositeEigenfunction,
) -> Result<EigenfunctionReport> {
    let cfg = &numeric.config;
    if cfg.bc != composite.bc
        || cfg.mode_n != composite.basis.mode_n
        || cfg.epsilon != composite.epsilon
    {
        return Err(Error::Invalid(format!(
            "numeric solution ({} n={} eps={}) and composite ({} n={} eps={}) differ",
            cfg.bc,
            cfg.mode_n,
            cfg.epsilon,
            composite.bc,
            composite.basis.mode_n,
            composite.epsilon
        )));
    }
    let mut report = EigenfunctionReport {
        sup: [0.0; 3],
        argmax: [0.0; 3],
        pointwise: Vec::with_capacity(numeric.mesh().len()),
        skipped: 0,
    };
    for (&y, s) in numeric.mesh().iter().zip(&numeric.solution.states) {
        let c = composite.derivatives(y);
        if c.iter().any(|v| !v.is_finite()) {
            report.skipped += 1;
            continue;
        }
        for k in 0..3 {
            let d = (s[k] - c[k]).abs();
            if d > report.sup[k] {
                report.sup[k] = d;
                report.argmax[k] = y;
            }
        }
        report.pointwise.push((y, (s[0] - c[0]).abs()));
    }
    Ok(report)
}
