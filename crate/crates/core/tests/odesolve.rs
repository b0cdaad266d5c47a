use std::f64::consts::{FRAC_PI_2, PI};

use hangrod::odesolve::{continuation, solve_bvp, solve_bvp_with, BvpProblem, BvpSolution, SolverOptions};
use hangrod::specfun::{airy_ai, AI0};

fn uniform(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// u'' = -k² u with u(0) = 0, u(b) = target.
struct Oscillator {
    k: f64,
    b: f64,
    target: f64,
}

impl BvpProblem for Oscillator {
    fn dimension(&self) -> usize {
        2
    }
    fn left_conditions(&self) -> usize {
        1
    }
    fn rhs(&self, _x: f64, y: &[f64], _p: f64, dy: &mut [f64]) {
        dy[0] = y[1];
        dy[1] = -self.k * self.k * y[0];
    }
    fn bc_left(&self, ya: &[f64], _p: f64, res: &mut [f64]) {
        res[0] = ya[0];
    }
    fn bc_right(&self, yb: &[f64], _p: f64, res: &mut [f64]) {
        res[0] = yb[0] - self.target;
    }
    fn preferred_mesh(&self) -> Option<Vec<f64>> {
        Some(uniform(0.0, self.b, 16))
    }
}

struct AiryBvp;

impl BvpProblem for AiryBvp {
    fn dimension(&self) -> usize {
        2
    }
    fn left_conditions(&self) -> usize {
        1
    }
    fn rhs(&self, x: f64, y: &[f64], _p: f64, dy: &mut [f64]) {
        dy[0] = y[1];
        dy[1] = x * y[0];
    }
    fn bc_left(&self, ya: &[f64], _p: f64, res: &mut [f64]) {
        res[0] = ya[0] - AI0;
    }
    fn bc_right(&self, yb: &[f64], _p: f64, res: &mut [f64]) {
        res[0] = yb[0] - airy_ai(10.0);
    }
}

/// u'' + λu = 0, u(0) = u(1) = 0, u'(0) = 1.
struct Dirichlet;

impl BvpProblem for Dirichlet {
    fn dimension(&self) -> usize {
        2
    }
    fn has_parameter(&self) -> bool {
        true
    }
    fn left_conditions(&self) -> usize {
        2
    }
    fn rhs(&self, _x: f64, y: &[f64], p: f64, dy: &mut [f64]) {
        dy[0] = y[1];
        dy[1] = -p * y[0];
    }
    fn bc_left(&self, ya: &[f64], _p: f64, res: &mut [f64]) {
        res[0] = ya[0];
        res[1] = ya[1] - 1.0;
    }
    fn bc_right(&self, yb: &[f64], _p: f64, res: &mut [f64]) {
        res[0] = yb[0];
    }
}

#[test]
fn sine_to_1e8() {
    let p = Oscillator { k: 1.0, b: FRAC_PI_2, target: 1.0 };
    let guess = BvpSolution::from_fn(uniform(0.0, FRAC_PI_2, 10), |x| vec![x, 1.0], None);
    let sol = solve_bvp(&p, &guess, 1e-8).unwrap();
    assert!(sol.residual_norm <= 1e-8);
    for i in 0..=200 {
        let x = FRAC_PI_2 * i as f64 / 200.0;
        let s = sol.eval(x);
        assert!((s[0] - x.sin()).abs() <= 1e-8, "x={x}: {}", s[0]);
    }
}

#[test]
fn airy_bvp_matches_specfun() {
    let guess = BvpSolution::from_fn(uniform(0.0, 10.0, 20), |x| vec![AI0 * (-x).exp(), -AI0 * (-x).exp()], None);
    let sol = solve_bvp(&AiryBvp, &guess, 1e-8).unwrap();
    for i in 0..=100 {
        let x = 0.1 * i as f64;
        assert!((sol.eval(x)[0] - airy_ai(x)).abs() <= 1e-7, "x={x}");
    }
}

#[test]
fn eigenvalue_as_scalar_unknown() {
    let guess = BvpSolution::from_fn(
        uniform(0.0, 1.0, 10),
        |x| vec![(3.0 * x).sin() / 3.0, (3.0 * x).cos()],
        Some(9.0),
    );
    let sol = solve_bvp(&Dirichlet, &guess, 1e-10).unwrap();
    let lam = sol.scalar_unknown.unwrap();
    assert!((lam - PI * PI).abs() <= 1e-8, "{lam}");
}

#[test]
fn nodal_error_is_fourth_order() {
    let p = Oscillator { k: 3.0, b: 1.0, target: 3.0f64.sin() };
    let exact = |x: f64| (3.0 * x).sin();
    let fixed = SolverOptions {
        tol: 1e300,
        max_refinements: 0,
        ..SolverOptions::default()
    };
    let err = |n: usize| {
        let g = BvpSolution::from_fn(uniform(0.0, 1.0, n), |_| vec![0.0, 0.0], None);
        let sol = solve_bvp_with(&p, &g, &fixed).unwrap();
        assert_eq!(sol.intervals(), n);
        (0..=400)
            .map(|i| {
                let x = i as f64 / 400.0;
                (sol.eval(x)[0] - exact(x)).abs()
            })
            .fold(0.0, f64::max)
    };
    // Halving h: the error ratio tends to 2^4; the h^6 term makes the
    // approach one-sided, so check the observed order and its trend.
    let errs: Vec<f64> = [8, 16, 32, 64].iter().map(|&n| err(n)).collect();
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[0] / w[1]).collect();
    for w in ratios.windows(2) {
        assert!((w[1] - 16.0).abs() < (w[0] - 16.0).abs(), "{ratios:?}");
    }
    let order = ratios.last().unwrap().log2();
    assert!((order - 4.0).abs() < 0.02, "observed order {order}");
}

#[test]
fn bitwise_reproducible() {
    let guess = BvpSolution::from_fn(uniform(0.0, 10.0, 20), |_| vec![0.0, 0.0], None);
    let a = solve_bvp(&AiryBvp, &guess, 1e-9).unwrap();
    let b = solve_bvp(&AiryBvp, &guess, 1e-9).unwrap();
    assert_eq!(a, b);
}

#[test]
fn mismatched_guess_rejected() {
    let guess = BvpSolution::from_fn(uniform(0.0, 1.0, 10), |_| vec![0.0; 3], None);
    assert!(solve_bvp(&AiryBvp, &guess, 1e-8).is_err());
    let no_param = BvpSolution::from_fn(uniform(0.0, 1.0, 10), |_| vec![0.0; 2], None);
    assert!(solve_bvp(&Dirichlet, &no_param, 1e-8).is_err());
}

#[test]
fn continuation_constant_family_is_stationary() {
    let opts = SolverOptions::with_tol(1e-9);
    let family = |_t: f64| Oscillator { k: 1.0, b: 1.0, target: 1.0 };
    let g = BvpSolution::from_fn(uniform(0.0, 1.0, 16), |x| vec![x, 1.0], None);
    let first = solve_bvp_with(&family(0.0), &g, &opts).unwrap();
    let sols = continuation(family, &[0.0, 1.0, 2.0, 3.0], first.clone(), &opts).unwrap();
    assert_eq!(sols.len(), 4);
    for s in &sols {
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            assert!((s.eval(x)[0] - first.eval(x)[0]).abs() < 1e-12);
        }
    }
}

#[test]
fn continuation_round_trip() {
    let opts = SolverOptions::with_tol(1e-10);
    let family = |k: f64| Oscillator { k, b: 1.0, target: 1.0 };
    let g = BvpSolution::from_fn(uniform(0.0, 1.0, 16), |x| vec![x, 1.0], None);
    let start = solve_bvp_with(&family(0.5), &g, &opts).unwrap();
    let out = continuation(family, &[0.5, 1.0, 1.5, 2.0], start.clone(), &opts).unwrap();
    let back = continuation(family, &[2.0, 1.5, 1.0, 0.5], out[3].clone(), &opts).unwrap();
    let end = back.last().unwrap();
    for i in 0..=50 {
        let x = i as f64 / 50.0;
        assert!((end.eval(x)[0] - start.eval(x)[0]).abs() <= 1e-8);
    }
    // Known closed form at the far end: sin(2x)/sin(2).
    assert!((out[3].eval(0.5)[0] - 1.0f64.sin() / 2.0f64.sin()).abs() < 1e-8);
}

#[test]
fn continuation_rejects_non_monotone_schedule() {
    let opts = SolverOptions::with_tol(1e-8);
    let family = |k: f64| Oscillator { k, b: 1.0, target: 1.0 };
    let g = BvpSolution::from_fn(uniform(0.0, 1.0, 16), |x| vec![x, 1.0], None);
    assert!(continuation(family, &[1.0, 2.0, 1.5], g, &opts).is_err());
}

