//! Airy functions Ai, Bi, their derivatives, and the running integral of Ai.
//!
//! Every evaluation is a Taylor step of the Airy equation `y'' = x y` from an
//! anchor where `(y, y')` is known. The Taylor coefficients obey
//! `a_{k+2} = (x0 a_k + a_{k-1}) / ((k+2)(k+1))`, so a step is exact up to
//! rounding once the series has converged.
//!
//! Anchors for Ai:
//! * `x <= 2`: the origin (Maclaurin series).
//! * `2 < x < 12`: a table built by stepping backward from `x = 12`, where the
//!   asymptotic expansion is accurate to rounding. Backward stepping is stable
//!   for the recessive solution.
//! * `x >= 12`: the asymptotic expansion directly.
//!
//! Bi is only ever needed at moderate argument; it is stepped forward from the
//! origin, which is stable because Bi is dominant.

use std::f64::consts::PI;
use std::sync::LazyLock;

/// Ai(0) = 1 / (3^{2/3} Γ(2/3)).
pub const AI0: f64 = 0.355_028_053_887_817_239_3;
/// Ai'(0) = -1 / (3^{1/3} Γ(1/3)).
pub const AI_PRIME0: f64 = -0.258_819_403_792_806_798_4;
/// Bi(0) = √3 Ai(0).
pub const BI0: f64 = 0.614_926_627_446_000_735_2;
/// Bi'(0) = -√3 Ai'(0).
pub const BI_PRIME0: f64 = 0.448_288_357_353_826_357_9;

const TABLE_LOW: f64 = 2.0;
const TABLE_HIGH: f64 = 12.0;
const TABLE_STEP: f64 = 0.5;
const ASYMPTOTIC_TAIL_END: f64 = 24.0;

/// Result of one Taylor step: value, derivative, and ∫ over the step.
#[derive(Debug, Clone, Copy)]
struct Step {
    value: f64,
    derivative: f64,
    integral: f64,
}

fn taylor_step(x0: f64, y0: f64, dy0: f64, h: f64) -> Step {
    // a_{k-1}, a_k, a_{k+1} rolling window; hk = h^k
    let mut a_prev = 0.0; // a_{-1}
    let mut a = [y0, dy0];
    let mut value = y0 + dy0 * h;
    let mut derivative = dy0;
    let mut integral = y0 * h + 0.5 * dy0 * h * h;
    let mut hk = h; // h^{k+1} for k = current index of a[1]
    let scale = y0.abs().max(dy0.abs()).max(f64::MIN_POSITIVE);
    let mut quiet = 0;
    let mut k = 0usize;
    loop {
        // a_{k+2}
        let next = (x0 * a[0] + a_prev) / (((k + 2) * (k + 1)) as f64);
        a_prev = a[0];
        a = [a[1], next];
        let kk = (k + 2) as f64;
        let h_prev = hk; // h^{k+1}
        hk *= h; // h^{k+2}
        value += next * hk;
        derivative += kk * next * h_prev;
        integral += next * hk * h / (kk + 1.0);
        let size = (next * hk).abs() + (kk * next * h_prev).abs();
        if size <= 1e-18 * scale.max(value.abs()) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        k += 1;
        if k > 400 {
            break;
        }
    }
    Step {
        value,
        derivative,
        integral,
    }
}

/// Leading factor and the two correction sums of the asymptotic expansion.
fn asymptotic(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let mut u: f64 = 1.0;
    let mut sum_u = 1.0;
    let mut sum_v = 1.0;
    let mut zpow = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..40 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        zpow *= -zeta;
        let tu = u / zpow;
        if tu.abs() > last || tu.abs() < 1e-18 {
            break;
        }
        last = tu.abs();
        sum_u += tu;
        sum_v += v / zpow;
    }
    let pref = (-zeta).exp() / (2.0 * PI.sqrt());
    let ai = pref / x.powf(0.25) * sum_u;
    let dai = -pref * x.powf(0.25) * sum_v;
    (ai, dai)
}

struct AiTable {
    /// nodes x_j = TABLE_HIGH - j * TABLE_STEP, down to TABLE_LOW
    nodes: Vec<(f64, f64, f64, f64)>, // (x, Ai, Ai', ∫_x^∞ Ai)
    /// ∫_0^{TABLE_LOW} Ai from the Maclaurin series
    head_integral: f64,
}

static TABLE: LazyLock<AiTable> = LazyLock::new(build_table);

fn build_table() -> AiTable {
    let (ai, dai) = asymptotic(TABLE_HIGH);
    let tail = asymptotic_tail(TABLE_HIGH);
    let mut nodes = vec![(TABLE_HIGH, ai, dai, tail)];
    let count = ((TABLE_HIGH - TABLE_LOW) / TABLE_STEP).round() as usize;
    for j in 1..=count {
        let &(x0, y0, dy0, tail0) = nodes.last().expect("non-empty");
        let s = taylor_step(x0, y0, dy0, -TABLE_STEP);
        // integral over [x0 - step, x0] is minus the signed step integral
        let x = TABLE_HIGH - j as f64 * TABLE_STEP;
        nodes.push((x, s.value, s.derivative, tail0 - s.integral));
    }
    let head = taylor_step(0.0, AI0, AI_PRIME0, TABLE_LOW);
    AiTable {
        nodes,
        head_integral: head.integral,
    }
}

/// ∫_x^∞ Ai for x >= TABLE_HIGH, by 20-point Gauss-Legendre panels on the
/// asymptotic form.
fn asymptotic_tail(x: f64) -> f64 {
    let end = x.max(ASYMPTOTIC_TAIL_END) + 4.0;
    let panels = ((end - x) / 0.5).ceil() as usize;
    let h = (end - x) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = x + p as f64 * h;
        let mid = a + 0.5 * h;
        for (node, weight) in GL20 {
            total += weight * 0.5 * h * asymptotic(mid + 0.5 * h * node).0;
        }
    }
    total
}

/// Nearest table node for x in [TABLE_LOW, TABLE_HIGH].
fn table_step(x: f64) -> Step {
    let t = &*TABLE;
    let j = ((TABLE_HIGH - x) / TABLE_STEP).round() as usize;
    let j = j.min(t.nodes.len() - 1);
    let (x0, y0, dy0, _) = t.nodes[j];
    taylor_step(x0, y0, dy0, x - x0)
}

pub fn airy_ai(x: f64) -> f64 {
    ai_and_prime(x).0
}

pub fn airy_ai_prime(x: f64) -> f64 {
    ai_and_prime(x).1
}

/// `(Ai(x), Ai'(x))`.
pub fn ai_and_prime(x: f64) -> (f64, f64) {
    if x <= TABLE_LOW {
        let s = taylor_step(0.0, AI0, AI_PRIME0, x);
        (s.value, s.derivative)
    } else if x < TABLE_HIGH {
        let s = table_step(x);
        (s.value, s.derivative)
    } else {
        asymptotic(x)
    }
}

/// `(Bi(x), Bi'(x))`, stepped forward from the origin in unit steps.
pub fn bi_and_prime(x: f64) -> (f64, f64) {
    let mut x0 = 0.0;
    let (mut y, mut dy) = (BI0, BI_PRIME0);
    while (x - x0).abs() > 1.0 {
        let h = (x - x0).signum();
        let s = taylor_step(x0, y, dy, h);
        x0 += h;
        y = s.value;
        dy = s.derivative;
    }
    let s = taylor_step(x0, y, dy, x - x0);
    (s.value, s.derivative)
}

pub fn airy_bi(x: f64) -> f64 {
    bi_and_prime(x).0
}

pub fn airy_bi_prime(x: f64) -> f64 {
    bi_and_prime(x).1
}

/// `∫_x^∞ Ai(t) dt`.
pub fn ai_tail_integral(x: f64) -> f64 {
    let t = &*TABLE;
    if x >= TABLE_HIGH {
        asymptotic_tail(x)
    } else if x >= TABLE_LOW {
        let j = ((TABLE_HIGH - x) / TABLE_STEP).round() as usize;
        let j = j.min(t.nodes.len() - 1);
        let (x0, y0, dy0, tail0) = t.nodes[j];
        // ∫_x^∞ = ∫_{x0}^∞ + ∫_x^{x0} = tail0 - ∫_{x0}^{x}
        tail0 - taylor_step(x0, y0, dy0, x - x0).integral
    } else {
        let low_tail = t.nodes.last().expect("table").3;
        low_tail + t.head_integral - taylor_step(0.0, AI0, AI_PRIME0, x).integral
    }
}

/// `∫_0^x Ai(t) dt`. `x = f64::INFINITY` gives the full integral.
pub fn ai_integral(x: f64) -> f64 {
    let t = &*TABLE;
    if x <= TABLE_LOW {
        taylor_step(0.0, AI0, AI_PRIME0, x).integral
    } else {
        let low_tail = t.nodes.last().expect("table").3;
        let tail = if x.is_infinite() { 0.0 } else { ai_tail_integral(x) };
        t.head_integral + (low_tail - tail)
    }
}

/// 20-point Gauss-Legendre nodes and weights on [-1, 1].
pub(crate) const GL20: [(f64, f64); 20] = [
    (-0.993_128_599_185_094_9, 0.017_614_007_139_152_12),
    (-0.963_971_927_277_913_8, 0.040_601_429_800_386_94),
    (-0.912_234_428_251_325_9, 0.062_672_048_334_109_06),
    (-0.839_116_971_822_218_8, 0.083_276_741_576_704_75),
    (-0.746_331_906_460_150_8, 0.101_930_119_817_240_4),
    (-0.636_053_680_726_515, 0.118_194_531_961_518_4),
    (-0.510_867_001_950_827_1, 0.131_688_638_449_176_6),
    (-0.373_706_088_715_419_6, 0.142_096_109_318_382_1),
    (-0.227_785_851_141_645_1, 0.149_172_986_472_603_7),
    (-0.076_526_521_133_497_33, 0.152_753_387_130_725_9),
    (0.076_526_521_133_497_33, 0.152_753_387_130_725_9),
    (0.227_785_851_141_645_1, 0.149_172_986_472_603_7),
    (0.373_706_088_715_419_6, 0.142_096_109_318_382_1),
    (0.510_867_001_950_827_1, 0.131_688_638_449_176_6),
    (0.636_053_680_726_515, 0.118_194_531_961_518_4),
    (0.746_331_906_460_150_8, 0.101_930_119_817_240_4),
    (0.839_116_971_822_218_8, 0.083_276_741_576_704_75),
    (0.912_234_428_251_325_9, 0.062_672_048_334_109_06),
    (0.963_971_927_277_913_8, 0.040_601_429_800_386_94),
    (0.993_128_599_185_094_9, 0.017_614_007_139_152_12),
];
