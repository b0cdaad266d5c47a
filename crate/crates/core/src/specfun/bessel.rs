//! Bessel functions of the first and second kind, orders 0 and 1, real argument.
//!
//! Three regimes:
//!
//! * `x <= 4`: Maclaurin series (no significant cancellation there).
//! * `4 < x <= 25`: Miller backward recurrence for `J_k`, normalised with
//!   `J_0 + 2 Σ J_2k = 1`, and the Neumann series for `Y_0`, `Y_1`.
//! * `x > 25`: Hankel asymptotic expansion, truncated at the smallest term.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_4, PI};

use super::EULER_GAMMA;
use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 4.0;
const HANKEL_LIMIT: f64 = 25.0;

/// `(J0, J1, Y0, Y1)` at one argument.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bessel01 {
    pub j0: f64,
    pub j1: f64,
    pub y0: f64,
    pub y1: f64,
}

pub fn bessel_j0(x: f64) -> f64 {
    j01(x.abs()).0
}

pub fn bessel_j1(x: f64) -> f64 {
    let (_, j1) = j01(x.abs());
    if x < 0.0 {
        -j1
    } else {
        j1
    }
}

/// `J0'(x) = -J1(x)`.
pub fn bessel_j0_prime(x: f64) -> f64 {
    -bessel_j1(x)
}

/// `J1'(x) = J0(x) - J1(x)/x`, with the limit 1/2 at the origin.
pub fn bessel_j1_prime(x: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let (j0, j1) = j01(x.abs());
    let j1 = if x < 0.0 { -j1 } else { j1 };
    j0 - j1 / x
}

pub fn bessel_y0(x: f64) -> Result<f64> {
    check_positive(x, "bessel_y0")?;
    Ok(all01(x).y0)
}

pub fn bessel_y1(x: f64) -> Result<f64> {
    check_positive(x, "bessel_y1")?;
    Ok(all01(x).y1)
}

/// `Y0'(x) = -Y1(x)`.
pub fn bessel_y0_prime(x: f64) -> Result<f64> {
    Ok(-bessel_y1(x)?)
}

fn check_positive(x: f64, name: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} requires a positive finite argument (logarithmic singularity at 0), got {x}"
        )))
    }
}

fn j01(x: f64) -> (f64, f64) {
    if x <= SERIES_LIMIT {
        series_j(x)
    } else if x <= HANKEL_LIMIT {
        let j = miller(x, 1);
        (j[0], j[1])
    } else {
        let (j0, _) = hankel(0.0, x);
        let (j1, _) = hankel(1.0, x);
        (j0, j1)
    }
}

/// All four functions at `x > 0`.
pub(crate) fn all01(x: f64) -> Bessel01 {
    debug_assert!(x > 0.0);
    if x <= SERIES_LIMIT {
        let (j0, j1) = series_j(x);
        let (y0, y1) = series_y(x, j0, j1);
        Bessel01 { j0, j1, y0, y1 }
    } else if x <= HANKEL_LIMIT {
        neumann(x)
    } else {
        let (j0, y0) = hankel(0.0, x);
        let (j1, y1) = hankel(1.0, x);
        Bessel01 { j0, j1, y0, y1 }
    }
}

fn series_j(x: f64) -> (f64, f64) {
    let t = 0.25 * x * x;
    let (mut j0, mut j1) = (0.0, 0.0);
    // term0 = (-t)^k / (k!)^2, term1 = (-t)^k / (k! (k+1)!)
    let mut term0 = 1.0;
    let mut term1 = 1.0;
    let mut k = 0.0;
    loop {
        j0 += term0;
        j1 += term1;
        k += 1.0;
        term0 *= -t / (k * k);
        term1 *= -t / (k * (k + 1.0));
        if term0.abs() < 1e-18 && term1.abs() < 1e-18 {
            break;
        }
    }
    (j0, 0.5 * x * j1)
}

fn series_y(x: f64, j0: f64, j1: f64) -> (f64, f64) {
    let t = 0.25 * x * x;
    let log_term = (0.5 * x).ln() + EULER_GAMMA;

    // Y0 = (2/π)[(ln(x/2)+γ) J0 + Σ_{k≥1} (-1)^{k+1} H_k t^k/(k!)^2]
    let mut sum0 = 0.0;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -t / (k * k);
        harmonic += 1.0 / k;
        let contrib = -harmonic * term;
        sum0 += contrib;
        if contrib.abs() < 1e-18 {
            break;
        }
    }
    let y0 = FRAC_2_PI * (log_term * j0 + sum0);

    // Y1 = -2/(πx) + (2/π) ln(x/2) J1 - (x/2π) Σ_{k≥0} (ψ(k+1)+ψ(k+2)) (-t)^k/(k!(k+1)!)
    let mut sum1 = 0.0;
    let mut term = 1.0;
    let mut h_k = 0.0;
    let mut k = 0.0;
    loop {
        let h_k1 = h_k + 1.0 / (k + 1.0);
        let psi_sum = h_k + h_k1 - 2.0 * EULER_GAMMA;
        let contrib = psi_sum * term;
        sum1 += contrib;
        k += 1.0;
        term *= -t / (k * (k + 1.0));
        h_k = h_k1;
        if contrib.abs() < 1e-18 && k > 2.0 {
            break;
        }
    }
    let y1 = -FRAC_2_PI / x + FRAC_2_PI * (0.5 * x).ln() * j1 - x / (2.0 * PI) * sum1;
    (y0, y1)
}

/// `J_0 ..= J_{max_order}` plus the even orders needed for normalisation.
/// Returns the full normalised sequence.
fn miller(x: f64, max_order: usize) -> Vec<f64> {
    let start = 2 * ((x as usize + 40 + max_order) / 2);
    let mut j = vec![0.0; start + 2];
    j[start] = 1e-30;
    for k in (1..=start).rev() {
        j[k - 1] = 2.0 * k as f64 / x * j[k] - j[k + 1];
        if j[k - 1].abs() > 1e250 {
            for v in j.iter_mut().skip(k - 1) {
                *v *= 1e-250;
            }
        }
    }
    let norm = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
    for v in j.iter_mut() {
        *v /= norm;
    }
    j
}

fn neumann(x: f64) -> Bessel01 {
    let j = miller(x, 1);
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    // Y0 = (2/π)(ln(x/2)+γ)J0 - (4/π) Σ_{k≥1} (-1)^k J_{2k}/k
    // Y1 = (2/π)[(ln(x/2)+γ)J1 - J0/x] + (2/π) Σ_{k≥1} (-1)^k (J_{2k-1} - J_{2k+1})/k
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sign * j[2 * k] / k as f64;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        k += 1;
    }
    Bessel01 {
        j0: j[0],
        j1: j[1],
        y0: FRAC_2_PI * (log_term * j[0] - 2.0 * s0),
        y1: FRAC_2_PI * (log_term * j[1] - j[0] / x + s1),
    }
}

/// Hankel expansion; returns `(J_ν, Y_ν)`.
fn hankel(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 0.0;
    let mut q = 0.0;
    // a_k / x^k accumulated incrementally
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        if term.abs() > last || term.abs() < 1e-17 {
            break;
        }
        last = term.abs();
        let signed = match k % 4 {
            0 | 1 => term,
            _ => -term,
        };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        let kk = (k + 1) as f64;
        let odd = 2.0 * kk - 1.0;
        term *= (mu - odd * odd) / (kk * 8.0 * x);
    }
    let chi = x - (0.5 * nu + 0.5) * PI + FRAC_PI_4;
    let amp = (FRAC_2_PI / x).sqrt();
    let (s, c) = chi.sin_cos();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from 30-digit mpmath: (x, J0, J1, Y0, Y1).
    const REF: &[(f64, f64, f64, f64, f64)] = &[
        (0.5, 0.938469807240812904, 0.242268457674873886, -0.444518733506706557, -1.47147239267024307),
        (3.9, -0.401826014887639907, -0.0272440396207798912, 0.0233759081987189638, 0.407820019526537904),
        (4.1, -0.38866967983585372, -0.103273257747338573, -0.056094626606344482, 0.384594034818916592),
        (10.0, -0.245935764451348335, 0.0434727461688614367, 0.0556711672835993914, 0.249015424206953884),
        (24.9, 0.0832459683530154901, -0.134855699531408869, -0.136499183996765235, -0.0860025575955542525),
        (25.1, 0.108275671499949452, -0.114634784134422567, -0.116767707638036947, -0.110622233227830988),
        (40.0, 0.00736689058423728955, 0.126038318037584999, 0.125936417058260929, -0.00579350582154963294),
    ];

    #[test]
    fn matches_reference_across_regimes() {
        for &(x, j0, j1, y0, y1) in REF {
            let got = all01(x);
            for (name, g, w) in [("j0", got.j0, j0), ("j1", got.j1, j1), ("y0", got.y0, y0), ("y1", got.y1, y1)] {
                assert!((g - w).abs() < 1e-13, "{name}({x}): {g} vs {w}");
            }
            assert!((bessel_j0(x) - j0).abs() < 1e-13);
            assert!((bessel_j1(x) - j1).abs() < 1e-13);
        }
    }

    #[test]
    fn j0_at_origin() {
        assert_eq!(bessel_j0(0.0), 1.0);
        assert_eq!(bessel_j1(0.0), 0.0);
    }

    #[test]
    fn y0_domain_error_at_zero() {
        assert!(matches!(bessel_y0(0.0), Err(Error::Domain(_))));
        assert!(bessel_y0(-1.0).is_err());
    }
}
