//! Banded LU with partial pivoting.
//!
//! Row `i` stores columns `i - kl ..= i + kl + ku`; the extra `kl` columns on
//! the right hold fill-in created by row interchanges.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
            pivots: Vec::new(),
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.kl + self.ku, "({i},{j}) outside band");
        i * self.width + (j + self.kl - i)
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    /// In-place factorisation.
    pub fn factor(&mut self) -> Result<()> {
        let n = self.n;
        self.pivots = vec![0; n];
        for j in 0..n {
            let last_row = (j + self.kl).min(n - 1);
            let mut p = j;
            let mut best = self.data[self.idx(j, j)].abs();
            for i in j + 1..=last_row {
                let v = self.data[self.idx(i, j)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Error::Singular);
            }
            self.pivots[j] = p;
            let last_col = (j + self.kl + self.ku).min(n - 1);
            if p != j {
                for c in j..=last_col {
                    let a = self.idx(j, c);
                    let b = self.idx(p, c);
                    self.data.swap(a, b);
                }
            }
            let diag = self.data[self.idx(j, j)];
            for i in j + 1..=last_row {
                let ij = self.idx(i, j);
                if self.data[ij] == 0.0 {
                    continue;
                }
                let factor = self.data[ij] / diag;
                self.data[ij] = factor;
                for c in j + 1..=last_col {
                    let jc = self.data[self.idx(j, c)];
                    let ic = self.idx(i, c);
                    self.data[ic] -= factor * jc;
                }
            }
        }
        Ok(())
    }

    /// Solves `A x = b` in place after [`factor`](Self::factor).
    pub fn solve(&self, b: &mut [f64]) {
        let n = self.n;
        for j in 0..n {
            let p = self.pivots[j];
            if p != j {
                b.swap(j, p);
            }
            let last_row = (j + self.kl).min(n - 1);
            for i in j + 1..=last_row {
                b[i] -= self.data[self.idx(i, j)] * b[j];
            }
        }
        #[allow(clippy::needless_range_loop)]
        for j in (0..n).rev() {
            let last_col = (j + self.kl + self.ku).min(n - 1);
            let mut s = b[j];
            for c in j + 1..=last_col {
                s -= self.data[self.idx(j, c)] * b[c];
            }
            b[j] = s / self.data[self.idx(j, j)];
        }
    }
}
