use hangrod::asymptotics::{
    composite_eigenfunction, lambda_series, BulkCorrections, CompositeOrder,
};
use hangrod::eigensolver::BoundaryCondition::{Clamped, Pinned};
use hangrod::eigensolver::*;
use hangrod::odesolve::{continuation, resample, solve_bvp_with, SolverOptions};
use hangrod::specfun::basis;
use hangrod::Error;

fn solved(eps: f64, bc: BoundaryCondition, n: usize) -> EigenSolution {
    solve_continued(&ProblemConfig::new(eps, bc, n).unwrap()).unwrap()
}

fn check_converged(s: &EigenSolution) {
    assert!(s.lambda > 0.0);
    for r in s.boundary_residuals() {
        assert!(r.abs() <= 1e-8, "{:?}", s.boundary_residuals());
    }
    assert!(s.residual_norm <= s.config.default_tol());
    assert_eq!(s.interior_zeros(), s.config.mode_n - 1);
    assert_eq!(s.u(0.0), s.solution.states[0][0]);
}

#[test]
fn clamped_mode_one_near_series() {
    let s = solved(1e-4, Clamped, 1);
    check_converged(&s);
    let series = lambda_series(Clamped, 1).unwrap();
    let two_term = series.lambda0 * (1.0 + 1e-2);
    assert!((s.lambda - two_term).abs() <= 5.0 * series.lambda_one * 1e-4);
    assert!((s.lambda - 1.46025).abs() < 1e-3);
}

#[test]
fn pinned_mode_one_near_series() {
    let s = solved(1e-4, Pinned, 1);
    check_converged(&s);
    let series = lambda_series(Pinned, 1).unwrap();
    let shift = s.lambda - series.lambda0;
    let want = series.lambda_one * 1e-4;
    assert!((shift / want - 1.0).abs() <= 0.15, "{shift} vs {want}");
}

#[test]
fn continuation_limit() {
    for bc in [Clamped, Pinned] {
        let s = solved(1e-8, bc, 1);
        check_converged(&s);
        assert!((s.lambda - 1.4458).abs() < 1e-3, "{bc}: {}", s.lambda);
    }
}

#[test]
fn preconditions() {
    assert!(ProblemConfig::new(0.0, Clamped, 1).is_err());
    assert!(ProblemConfig::new(1e-9, Clamped, 1).is_err());
    assert!(ProblemConfig::new(11.0, Clamped, 1).is_err());
    assert!(ProblemConfig::new(1e-3, Clamped, 0).is_err());
    let bad = ProblemConfig {
        epsilon: -1.0,
        bc: Pinned,
        mode_n: 1,
    };
    assert!(solve(&bad, None).is_err());
}

#[test]
fn direct_solve_at_moderate_epsilon() {
    let cfg = ProblemConfig::new(0.1, Clamped, 1).unwrap();
    let s = solve(&cfg, None).unwrap();
    check_converged(&s);
    let again = solve(&cfg, None).unwrap();
    assert_eq!(s.lambda.to_bits(), again.lambda.to_bits());
    assert_eq!(s.solution, again.solution);
}

#[test]
fn mode_ordering_and_bc_comparison() {
    for bc in [Clamped, Pinned] {
        let mut last = 0.0;
        for n in 1..=3 {
            let s = solved(1e-3, bc, n);
            check_converged(&s);
            assert!(s.lambda > last, "{bc} n={n}");
            last = s.lambda;
        }
    }
    for k in 0..=10 {
        let eps = 10f64.powf(-1.0 - 0.5 * k as f64);
        let c = solved(eps, Clamped, 1);
        let p = solved(eps, Pinned, 1);
        assert!(c.lambda > p.lambda, "eps={eps}");
    }
}

#[test]
fn mesh_independence() {
    for (eps, bc) in [(1e-3, Clamped), (1e-5, Pinned)] {
        let s = solved(eps, bc, 1);
        let problem = EigenProblem { config: s.config };
        let mesh = s.mesh();
        let mut fine = Vec::with_capacity(2 * mesh.len());
        for w in mesh.windows(2) {
            fine.push(w[0]);
            fine.push(0.5 * (w[0] + w[1]));
        }
        fine.push(1.0);
        let tol = s.config.default_tol();
        let seed = resample(&problem, &s.solution, &fine).unwrap();
        let refined = solve_bvp_with(&problem, &seed, &SolverOptions::with_tol(tol)).unwrap();
        let lambda = refined.scalar_unknown.unwrap();
        assert!((lambda - s.lambda).abs() <= 10.0 * tol, "{} vs {}", lambda, s.lambda);
    }
}

#[test]
fn generic_continuation_reaches_small_epsilon() {
    let cfg = ProblemConfig::new(0.1, Clamped, 1).unwrap();
    let first = solve(&cfg, None).unwrap();
    let schedule = default_schedule(0.1, 1e-6);
    assert_eq!(schedule.len(), 11);
    let opts = SolverOptions::with_tol(1e-10);
    let chain = continuation(
        |eps| EigenProblem {
            config: ProblemConfig::new(eps, Clamped, 1).unwrap(),
        },
        &schedule,
        first.solution,
        &opts,
    )
    .unwrap();
    assert_eq!(chain.len(), schedule.len());
    for s in &chain {
        assert!(s.residual_norm <= 1e-10);
    }
    let last = chain.last().unwrap().scalar_unknown.unwrap();
    assert!((last - solved(1e-6, Clamped, 1).lambda).abs() < 1e-9);
}

#[test]
fn chain_steps_both_ways() {
    let cfg = ProblemConfig::new(1e-2, Pinned, 2).unwrap();
    let start = solve_continued(&cfg).unwrap();
    let mut chain = Chain::from_solution(start.clone());
    chain.step_to(10f64.powf(-2.5)).unwrap();
    chain.step_to(1e-3).unwrap();
    chain.step_to(10f64.powf(-2.5)).unwrap();
    let back = chain.step_to(1e-2).unwrap();
    assert!((back.lambda - start.lambda).abs() < 1e-8);
}

#[test]
fn higher_modes() {
    for bc in [Clamped, Pinned] {
        for n in 4..=5 {
            let s = solved(1e-4, bc, n);
            check_converged(&s);
            let lam0 = basis(n).unwrap().lambda0;
            assert!(s.lambda > lam0);
        }
    }
}

#[test]
fn schedules() {
    assert_eq!(start_epsilon(1), 0.1);
    assert!((start_epsilon(2) - 0.1 / 64.0).abs() < 1e-18);
    let down = default_schedule(0.1, 1e-3);
    assert_eq!(down.len(), 5);
    assert_eq!(*down.last().unwrap(), 1e-3);
    let up = default_schedule(1e-3, 0.05);
    assert!(up.windows(2).all(|w| w[1] > w[0]));
    assert_eq!(*up.last().unwrap(), 0.05);
    assert_eq!(default_schedule(0.5, 0.5), vec![0.5]);
}

#[test]
fn sweep_table() {
    let eps: Vec<f64> = (0..7).map(|k| 10f64.powf(-2.0 - 0.5 * k as f64)).collect();
    let table = sweep(Clamped, 1, &eps).unwrap();
    assert!(table.failures.is_empty());
    assert_eq!(table.rows.len(), eps.len());
    assert!(table.rows.windows(2).all(|w| w[1].epsilon < w[0].epsilon));
    for r in &table.rows {
        assert!(r.relative_error >= 0.0 && r.two_term_remainder >= 0.0);
        assert!(r.two_term_remainder < r.relative_error * r.lambda_naive);
    }
    let fit = fit_slope(&table, Column::RelativeError, (1e-5, 1e-2)).unwrap();
    assert!((fit.slope - 0.5).abs() < 0.05, "{fit:?}");
    assert!(sweep(Clamped, 1, &[1e-3, 1e-2]).is_err());
    assert!(sweep(Clamped, 1, &[]).is_err());
    assert!(sweep(Clamped, 1, &[1e-3, 1e-9]).is_err());
}

#[test]
fn sweep_above_start_for_higher_mode() {
    // n = 2 starts at 0.1/64; larger ε is reached upward.
    let table = sweep(Pinned, 2, &[1e-2, 1e-3, 1e-4]).unwrap();
    assert!(table.failures.is_empty(), "{:?}", table.failures);
    assert!(table.rows[0].lambda_numeric > table.rows[1].lambda_numeric);
}

fn synthetic(f: impl Fn(f64) -> f64) -> ErrorTable {
    ErrorTable {
        bc: Pinned,
        mode_n: 1,
        rows: (0..10)
            .map(|k| {
                let e = 10f64.powf(-1.0 - 0.5 * k as f64);
                ErrorRow {
                    epsilon: e,
                    lambda_numeric: 1.0,
                    lambda_naive: 1.0,
                    relative_error: f(e),
                    two_term_remainder: 3.0 * e.powf(4.0 / 3.0),
                }
            })
            .collect(),
        failures: vec![],
    }
}

#[test]
fn slope_fits() {
    let t = synthetic(f64::sqrt);
    let fit = fit_slope(&t, Column::RelativeError, (1e-6, 1e-1)).unwrap();
    assert!((fit.slope - 0.5).abs() < 1e-12);
    assert!((fit.prefactor - 1.0).abs() < 1e-10);
    assert!((fit.r2 - 1.0).abs() < 1e-12);
    assert_eq!(fit.points, 10);
    let fit = fit_slope(&t, Column::Remainder, (1e-5, 1e-2)).unwrap();
    assert!((fit.slope - 4.0 / 3.0).abs() < 1e-12);
    assert!((fit.prefactor - 3.0).abs() < 1e-10);
    assert_eq!(fit.points, 7);
    assert!(fit_slope(&t, Column::Remainder, (1e-3, 1e-2)).is_err());
    let noisy = synthetic(|e| e * (1.0 + 0.3 * (1e3 * e).sin()));
    let fit = fit_slope(&noisy, Column::RelativeError, (1e-6, 1e-1)).unwrap();
    assert!(fit.r2 < 1.0 && fit.r2 > 0.9);
}

#[test]
fn naive_mode_misses_free_end_curvature() {
    let eps = 1e-4;
    let s = solved(eps, Clamped, 1);
    let c = BulkCorrections::new(&basis(1).unwrap(), false).unwrap();
    let naive = composite_eigenfunction(CompositeOrder::Zero, Clamped, &c, None, None, eps).unwrap();
    let report = compare_eigenfunction(&s, &naive).unwrap();
    let lam = c.basis.lambda0;
    assert!(s.state(0.0)[2].abs() < 1e-8);
    assert!(report.sup[2] >= 0.5 * lam * lam - 1e-6);
    assert_eq!(report.skipped, 0);
    assert_eq!(report.pointwise.len(), s.mesh().len());
    let half = composite_eigenfunction(CompositeOrder::Half, Clamped, &c, None, None, eps).unwrap();
    let better = compare_eigenfunction(&s, &half).unwrap();
    assert!(better.sup[0] < report.sup[0]);
    let other = composite_eigenfunction(CompositeOrder::Half, Clamped, &c, None, None, 1e-3).unwrap();
    assert!(matches!(compare_eigenfunction(&s, &other), Err(Error::Invalid(_))));
}

#[test]
fn mode_window_is_half_gap() {
    let l: Vec<f64> = (1..=3).map(|n| basis(n).unwrap().lambda0).collect();
    assert!((mode_window(1).unwrap() - 0.5 * (l[1] - l[0])).abs() < 1e-14);
    assert!((mode_window(2).unwrap() - 0.5 * (l[1] - l[0]).min(l[2] - l[1])).abs() < 1e-14);
}
