use hangrod::asymptotics::{
    c_infty, composite_eigenfunction, lambda0_large_n, lambda_asymptotic, lambda_series,
    lambda_series_from, nondimensionalize, solve_psi, validity_threshold, BulkCorrections,
    CompositeOrder, DEFAULT_X_MAX,
};
use hangrod::eigensolver::{
    compare_eigenfunction, fit_slope, solve_continued, solve_with_tol, sweep, BoundaryCondition,
    Column, EigenSolution, ProblemConfig, EPS_MAX, EPS_MIN,
};
use hangrod::specfun::basis;

use crate::report::{fmt_num, Cell, Report};
use crate::settings::{EpsRange, Settings};
use crate::CliError;

const PSI_TOL: f64 = 1e-10;
const PSI_ROWS: usize = 200;
const DEFAULT_SWEEP: EpsRange = EpsRange {
    from: 1e-1,
    to: 1e-6,
    steps: 11,
};

fn solver_eps(eps: f64) -> Result<f64, CliError> {
    if !(EPS_MIN..=EPS_MAX).contains(&eps) {
        return Err(CliError::Usage(format!(
            "eps must lie in [{EPS_MIN:e}, {EPS_MAX}], got {eps}"
        )));
    }
    Ok(eps)
}

fn advisory(report: &mut Report, n: usize, eps: f64) {
    let (loose, strict) = validity_threshold(n).expect("n >= 1");
    if eps >= loose {
        report.meta("note", format!("eps = {eps} is not small against n^-6 = {loose:e}; the series does not apply"));
    } else if eps >= strict {
        report.meta("note", format!("eps = {eps} is not small against n^-10 = {strict:e}; expect large higher-order terms"));
    }
}

struct Reference {
    name: String,
    computed: f64,
    reference: f64,
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
}

impl Reference {
    fn passes(&self) -> bool {
        let d = (self.computed - self.reference).abs();
        self.abs_tol.is_none_or(|t| d <= t)
            && self.rel_tol.is_none_or(|t| d <= t * self.reference.abs())
    }
}

/// Returns the report and the names of rows outside their tolerance.
pub fn constants(s: &Settings) -> Result<(Report, Vec<String>), CliError> {
    let mut refs = Vec::new();
    for (n, r) in [(1, 1.4458), (2, 7.6178), (3, 18.721)] {
        refs.push(Reference {
            name: format!("lambda0[{n}]"),
            computed: basis(n)?.lambda0,
            reference: r,
            abs_tol: Some(1e-3),
            rel_tol: None,
        });
    }
    let x_max = s.xmax.unwrap_or(DEFAULT_X_MAX);
    if !(x_max >= 15.0) {
        return Err(CliError::Usage(format!("--xmax must be >= 15, got {x_max}")));
    }
    let layer = solve_psi(x_max, s.tol()?.unwrap_or(PSI_TOL))?;
    refs.push(Reference {
        name: "psi_infty".into(),
        computed: layer.psi_infty,
        reference: 1.3556,
        abs_tol: Some(1e-3),
        rel_tol: None,
    });
    refs.push(Reference {
        name: "c_infty".into(),
        computed: c_infty(&layer),
        reference: 0.06855,
        abs_tol: Some(2e-4),
        rel_tol: None,
    });
    let published = [
        (BoundaryCondition::Pinned, [4.4280, 1887.2, 44403.0]),
        (BoundaryCondition::Clamped, [6.4581, 1900.0, 44435.0]),
    ];
    for (bc, values) in published {
        for (n, r) in (1..=3).zip(values) {
            refs.push(Reference {
                name: format!("lambda1_{bc}[{n}]"),
                computed: lambda_series(bc, n)?.lambda_one,
                reference: r,
                abs_tol: None,
                rel_tol: Some(5e-3),
            });
        }
    }
    let mut report = Report::new(
        "constants",
        s.describe(),
        &["name", "computed", "reference", "abs_dev", "rel_dev", "tolerance", "status"],
    );
    let mut failed = Vec::new();
    for r in &refs {
        let d = (r.computed - r.reference).abs();
        let tol = match (r.abs_tol, r.rel_tol) {
            (Some(a), _) => format!("abs {}", fmt_num(a)),
            (None, Some(t)) => format!("rel {}", fmt_num(t)),
            (None, None) => "none".into(),
        };
        let ok = r.passes();
        if !ok {
            failed.push(r.name.clone());
        }
        report.row(vec![
            r.name.clone().into(),
            r.computed.into(),
            r.reference.into(),
            d.into(),
            (d / r.reference.abs()).into(),
            tol.into(),
            if ok { "ok" } else { "mismatch" }.into(),
        ]);
    }
    report.footer("mismatches", failed.len().to_string());
    Ok((report, failed))
}

fn eigen_solution(s: &Settings, eps: f64) -> Result<EigenSolution, CliError> {
    let cfg = ProblemConfig::new(solver_eps(eps)?, s.bc()?, s.mode()?)?;
    let sol = solve_continued(&cfg)?;
    Ok(match s.tol()? {
        Some(tol) => solve_with_tol(&cfg, Some(&sol), tol)?,
        None => sol,
    })
}

pub fn eigen(s: &Settings) -> Result<Report, CliError> {
    let eps = s.eps()?;
    let sol = eigen_solution(s, eps)?;
    let mut report = Report::new("eigen", s.describe(), &["y", "u", "du", "d2u"]);
    report.meta("lambda", fmt_num(sol.lambda));
    report.meta("lambda0", fmt_num(basis(sol.config.mode_n)?.lambda0));
    report.meta("residual_norm", fmt_num(sol.residual_norm));
    report.meta("intervals", (sol.mesh().len() - 1).to_string());
    advisory(&mut report, sol.config.mode_n, eps);
    for (&y, st) in sol.mesh().iter().zip(&sol.solution.states) {
        report.row(vec![y.into(), st[0].into(), st[1].into(), st[2].into()]);
    }
    Ok(report)
}

pub fn sweep_cmd(s: &Settings) -> Result<Report, CliError> {
    let bc = s.bc()?;
    let n = s.mode()?;
    let range = s.eps_range.unwrap_or(DEFAULT_SWEEP);
    let eps = range.values();
    for &e in &eps {
        solver_eps(e)?;
    }
    let table = sweep(bc, n, &eps)?;
    let mut report = Report::new(
        "sweep",
        format!("{} eps-range={range}", s.describe()),
        &["epsilon", "lambda_numeric", "lambda_naive", "relative_error", "two_term_remainder"],
    );
    for r in &table.rows {
        report.row(vec![
            r.epsilon.into(),
            r.lambda_numeric.into(),
            r.lambda_naive.into(),
            r.relative_error.into(),
            r.two_term_remainder.into(),
        ]);
    }
    for f in &table.failures {
        report.footer("failed", format!("eps={} {}", fmt_num(f.epsilon), f.message));
    }
    let span = (range.from.min(range.to), range.from.max(range.to));
    match fit_slope(&table, Column::RelativeError, span) {
        Ok(f) => {
            report.footer("fitted slope", format!("{:.6}", f.slope));
            report.footer("fitted prefactor", format!("{:.6}", f.prefactor));
            report.footer("fit r2", format!("{:.8}", f.r2));
        }
        Err(e) => report.footer("fitted slope", format!("n/a ({e})")),
    }
    if let Ok(f) = fit_slope(&table, Column::Remainder, span) {
        report.footer("remainder slope", format!("{:.6}", f.slope));
    }
    Ok(report)
}

pub fn composite(s: &Settings) -> Result<Report, CliError> {
    let bc = s.bc()?;
    let n = s.mode()?;
    let eps = s.eps()?;
    if eps > 0.1 {
        return Err(CliError::Usage(format!("composite needs eps <= 0.1, got {eps}")));
    }
    let order = s.order.unwrap_or(CompositeOrder::Half);
    if order == CompositeOrder::One && bc == BoundaryCondition::Clamped {
        return Err(CliError::Usage("--order 1 is available with --bc pinned only".into()));
    }
    let b = basis(n)?;
    let corrections = BulkCorrections::new(&b, bc == BoundaryCondition::Clamped)?;
    let (layer, lambda1) = if order == CompositeOrder::One {
        let layer = solve_psi(s.xmax.unwrap_or(DEFAULT_X_MAX), PSI_TOL)?;
        let l1 = lambda_series_from(bc, &corrections)?.lambda_one;
        (Some(layer), Some(l1))
    } else {
        (None, None)
    };
    let u = composite_eigenfunction(order, bc, &corrections, layer.as_ref(), lambda1, eps)?;
    let sol = eigen_solution(s, eps)?;
    let cmp = compare_eigenfunction(&sol, &u)?;
    let mut report = Report::new("composite", s.describe(), &["y", "composite", "u_num", "diff"]);
    report.meta("order", order.to_string());
    report.meta("lambda", fmt_num(sol.lambda));
    advisory(&mut report, n, eps);
    if cmp.skipped > 0 {
        report.meta("skipped", format!("{} nodes where the composite is undefined", cmp.skipped));
    }
    for (&y, st) in sol.mesh().iter().zip(&sol.solution.states) {
        let c = u.eval(y);
        if c.is_finite() {
            report.row(vec![y.into(), c.into(), st[0].into(), (st[0] - c).into()]);
        }
    }
    for (k, name) in ["sup |u - U|", "sup |u' - U'|", "sup |u'' - U''|"].iter().enumerate() {
        report.footer(name, format!("{} at y={}", fmt_num(cmp.sup[k]), fmt_num(cmp.argmax[k])));
    }
    Ok(report)
}

pub fn psi(s: &Settings) -> Result<Report, CliError> {
    let x_max = s.xmax.unwrap_or(DEFAULT_X_MAX);
    if !(x_max >= 15.0 && x_max.is_finite()) {
        return Err(CliError::Usage(format!("--xmax must be >= 15, got {x_max}")));
    }
    let layer = solve_psi(x_max, s.tol()?.unwrap_or(PSI_TOL))?;
    let mut report = Report::new("psi", s.describe(), &["X", "psi", "psi_minus_log"]);
    report.meta("psi_infty", fmt_num(layer.psi_infty));
    report.meta("c_infty", fmt_num(c_infty(&layer)));
    for k in 1..=PSI_ROWS {
        let x = x_max * k as f64 / PSI_ROWS as f64;
        let p = layer.eval(x)[0];
        report.row(vec![x.into(), p.into(), (p - x.ln()).into()]);
    }
    Ok(report)
}

pub fn coeffs(s: &Settings) -> Result<Report, CliError> {
    let bc = s.bc()?;
    let n = s.mode()?;
    let series = lambda_series(bc, n)?;
    let (loose, strict) = validity_threshold(n)?;
    let mut report = Report::new("coeffs", s.describe(), &["name", "value"]);
    let mut put = |k: &str, v: f64| report.row(vec![Cell::from(k), v.into()]);
    put("lambda0", series.lambda0);
    put("lambda_1/3", series.lambda_third);
    put("lambda_1/2", series.lambda_half);
    put("lambda_2/3", series.lambda_two_thirds);
    put("lambda_5/6", series.lambda_five_sixths);
    put("lambda_1", series.lambda_one);
    put("eps_log_eps_coefficient", series.log_coefficient);
    put("lambda0_large_n", lambda0_large_n(n)?);
    put("eps_loose", loose);
    put("eps_strict", strict);
    if let Some(eps) = s.eps {
        if !(eps >= 0.0) {
            return Err(CliError::Usage(format!("--eps must be >= 0, got {eps}")));
        }
        put("lambda_asymptotic", lambda_asymptotic(&series, eps)?);
    }
    Ok(report)
}

pub fn nondim(s: &Settings) -> Result<Report, CliError> {
    let need = |v: Option<f64>, flag: &str| {
        let v = v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Usage(format!("--{flag} must be positive, got {v}")));
        }
        Ok(v)
    };
    let e = need(s.youngs, "youngs")?;
    let i = need(s.second_moment, "second-moment")?;
    let rho = need(s.density, "density")?;
    let g = need(s.gravity.or(Some(9.81)), "gravity")?;
    let l = need(s.length, "length")?;
    let n = s.mode()?;
    let d = nondimensionalize(e, i, rho, g, l)?;
    let lam0 = basis(n)?.lambda0;
    let mut report = Report::new("nondim", s.describe(), &["name", "value"]);
    report.row(vec!["epsilon".into(), d.epsilon.into()]);
    report.row(vec!["timescale".into(), d.timescale.into()]);
    report.row(vec![format!("lambda0[{n}]").into(), lam0.into()]);
    report.row(vec![format!("omega_naive[{n}]").into(), d.angular_frequency(lam0).into()]);
    Ok(report)
}
