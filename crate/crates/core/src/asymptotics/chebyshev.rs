use std::f64::consts::PI;

/// Chebyshev interpolant on `[a, b]` through the Chebyshev-Lobatto points.
#[derive(Debug, Clone, PartialEq)]
pub struct Chebyshev {
    a: f64,
    b: f64,
    coeffs: Vec<f64>,
}

impl Chebyshev {
    /// Interpolates `f` at `degree + 1` Lobatto points.
    pub fn fit<F: FnMut(f64) -> f64>(a: f64, b: f64, degree: usize, mut f: F) -> Self {
        let n = degree;
        let values: Vec<f64> = (0..=n)
            .map(|j| {
                let t = (PI * j as f64 / n as f64).cos();
                f(0.5 * (a + b) + 0.5 * (b - a) * t)
            })
            .collect();
        Self::from_lobatto_values(a, b, &values)
    }

    /// Samples must be ordered as `cos(π j / n)`, j = 0..=n (right end first).
    pub fn from_lobatto_values(a: f64, b: f64, values: &[f64]) -> Self {
        let n = values.len() - 1;
        let nf = n as f64;
        let coeffs = (0..=n)
            .map(|k| {
                let mut s = 0.0;
                for (j, v) in values.iter().enumerate() {
                    let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                    s += w * v * (PI * (j * k % (2 * n)) as f64 / nf).cos();
                }
                let scale = if k == 0 || k == n { 1.0 / nf } else { 2.0 / nf };
                scale * s
            })
            .collect();
        Self { a, b, coeffs }
    }

    pub fn lobatto_points(a: f64, b: f64, degree: usize) -> Vec<f64> {
        (0..=degree)
            .map(|j| 0.5 * (a + b) + 0.5 * (b - a) * (PI * j as f64 / degree as f64).cos())
            .collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = (2.0 * x - self.a - self.b) / (self.b - self.a);
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * t * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + self.coeffs[0]
    }

    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        let mut d = vec![0.0; n.max(2)];
        for k in (1..n).rev() {
            let next = if k + 1 < n { d[k + 1] } else { 0.0 };
            d[k - 1] = next + 2.0 * k as f64 * self.coeffs[k];
        }
        d[0] *= 0.5;
        let scale = 2.0 / (self.b - self.a);
        d.truncate(n.saturating_sub(1).max(1));
        for c in &mut d {
            *c *= scale;
        }
        Self {
            a: self.a,
            b: self.b,
            coeffs: d,
        }
    }

    /// Magnitude of the trailing coefficients, a resolution indicator.
    pub fn tail(&self) -> f64 {
        self.coeffs.iter().rev().take(3).map(|c| c.abs()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_exponential_and_derivatives() {
        let c = Chebyshev::fit(0.0, 2.0, 30, f64::exp);
        let d = c.derivative();
        let dd = d.derivative();
        for i in 0..=20 {
            let x = 0.1 * i as f64;
            assert!((c.eval(x) - x.exp()).abs() < 1e-14 * x.exp().max(1.0) * 10.0);
            assert!((d.eval(x) - x.exp()).abs() < 1e-12 * 10.0);
            assert!((dd.eval(x) - x.exp()).abs() < 1e-10 * 10.0);
        }
        assert!(c.tail() < 1e-15);
    }

    #[test]
    fn polynomial_is_exact() {
        let c = Chebyshev::fit(-1.0, 3.0, 8, |x| x * x * x - 2.0 * x);
        assert!((c.eval(2.5) - (15.625 - 5.0)).abs() < 1e-12);
        assert!((c.derivative().eval(0.5) - (0.75 - 2.0)).abs() < 1e-12);
    }
}
