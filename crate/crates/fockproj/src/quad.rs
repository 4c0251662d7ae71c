//! Adaptive Gauss-Kronrod quadrature on finite intervals, plus log-domain
//! helpers for semi-infinite integrals of the form `int exp(g(t)) dt` whose
//! values overflow f64 (the integrands here routinely reach `exp(800)`).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("quadrature did not reach tolerance: estimated rel. error {rel_err:.3e} after {intervals} intervals")]
    Tolerance { rel_err: f64, intervals: usize },
    #[error("invalid integration bounds [{a}, {b}]")]
    Bounds { a: f64, b: f64 },
    #[error("integrand produced a non-finite value at t = {at}")]
    NonFinite { at: f64 },
}

/// 15-point Kronrod nodes on [0, 1] side of the symmetric rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.000_000_000_000_000_0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// 7-point Gauss weights for the odd-index Kronrod nodes.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel, QuadError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    if !fc.is_finite() {
        return Err(QuadError::NonFinite { at: center });
    }
    let mut kronrod = WGK[7] * fc;
    let mut gauss = 0.0;
    let mut abs_sum = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = half * XGK[i];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        if !f1.is_finite() {
            return Err(QuadError::NonFinite { at: center - dx });
        }
        if !f2.is_finite() {
            return Err(QuadError::NonFinite { at: center + dx });
        }
        kronrod += WGK[i] * (f1 + f2);
        abs_sum += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    gauss += WG[3] * fc; // center node belongs to both rules
    let value = kronrod * half;
    let raw_err = ((kronrod - gauss) * half).abs();
    // QUADPACK-style rescale: sharpens the estimate on smooth panels.
    let scale = abs_sum * half.abs();
    let err = if scale > 0.0 && raw_err > 0.0 {
        let r = (200.0 * raw_err / scale).powf(1.5);
        if r < 1.0 {
            scale * r
        } else {
            raw_err
        }
    } else {
        raw_err
    };
    Ok(Panel { a, b, value, err })
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub intervals: usize,
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Subdivides the interval with the largest error estimate until the total
/// estimate satisfies `abs_err <= max(abs_tol, rel_tol * |value|)`.
/// `seed_points` optionally pre-splits the interval (useful when the
/// integrand has a known sharp peak).
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_intervals: usize,
    seed_points: &[f64],
) -> Result<QuadResult, QuadError> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(QuadError::Bounds { a, b });
    }
    let mut panels: Vec<Panel> = Vec::with_capacity(64);
    let mut edges: Vec<f64> = Vec::with_capacity(seed_points.len() + 2);
    edges.push(a);
    for &s in seed_points {
        if s > a && s < b {
            edges.push(s);
        }
    }
    edges.push(b);
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap());
    for w in edges.windows(2) {
        if w[1] > w[0] {
            panels.push(qk15(f, w[0], w[1])?);
        }
    }
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        let target = abs_tol.max(rel_tol * value.abs());
        if err <= target {
            return Ok(QuadResult {
                value,
                abs_err: err,
                intervals: panels.len(),
            });
        }
        if panels.len() >= max_intervals {
            let rel_err = if value != 0.0 { err / value.abs() } else { err };
            return Err(QuadError::Tolerance {
                rel_err,
                intervals: panels.len(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a: wa, b: wb, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (wa + wb);
        panels.push(qk15(f, wa, mid)?);
        panels.push(qk15(f, mid, wb)?);
    }
}

/// Integration result carried in log space: the integral equals
/// `exp(ln_value)` but `ln_value` may exceed the f64 exponent range.
#[derive(Debug, Clone, Copy)]
pub struct LogQuadResult {
    pub ln_value: f64,
    pub rel_err: f64,
}

impl LogQuadResult {
    /// Linear-domain value; `inf` when the log value overflows f64.
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }
}

/// Integrates `exp(f_ln(t))` over `[a, b]` where `f_ln` returns the natural
/// log of a nonnegative integrand (`-inf` where the integrand vanishes).
///
/// The integrand is rescaled by `exp(-ln_peak)` so the working values stay
/// inside f64 range; `ln_peak` should be (near) the maximum of `f_ln`.
pub fn adaptive_ln<F: Fn(f64) -> f64>(
    f_ln: &F,
    a: f64,
    b: f64,
    ln_peak: f64,
    rel_tol: f64,
    max_intervals: usize,
    seed_points: &[f64],
) -> Result<LogQuadResult, QuadError> {
    let g = |t: f64| {
        let v = f_ln(t);
        if v == f64::NEG_INFINITY {
            0.0
        } else {
            (v - ln_peak).exp()
        }
    };
    let r = adaptive(&g, a, b, rel_tol, 1e-290, max_intervals, seed_points)?;
    if r.value <= 0.0 {
        return Ok(LogQuadResult {
            ln_value: f64::NEG_INFINITY,
            rel_err: 0.0,
        });
    }
    Ok(LogQuadResult {
        ln_value: ln_peak + r.value.ln(),
        rel_err: r.abs_err / r.value,
    })
}

/// Locates the maximum of `f_ln` on `[lo, hi]` by a coarse scan followed by
/// ternary refinement. Intended for smooth, unimodal-dominated integrands.
pub fn locate_peak<F: Fn(f64) -> f64>(f_ln: &F, lo: f64, hi: f64, scan: usize) -> (f64, f64) {
    let n = scan.max(8);
    let mut best_t = lo;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=n {
        let t = lo + (hi - lo) * (i as f64) / (n as f64);
        let v = f_ln(t);
        if v > best_v {
            best_v = v;
            best_t = t;
        }
    }
    let step = (hi - lo) / (n as f64);
    let mut a = (best_t - step).max(lo);
    let mut b = (best_t + step).min(hi);
    for _ in 0..60 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if f_ln(m1) < f_ln(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    let t = 0.5 * (a + b);
    (t, f_ln(t))
}

/// Finds `T > t_peak` with `f_ln(T) <= ln_peak - drop`, by doubling then
/// bisection. `f_ln` must eventually decrease past the peak.
pub fn decay_cutoff<F: Fn(f64) -> f64>(f_ln: &F, t_peak: f64, ln_peak: f64, drop: f64) -> f64 {
    let target = ln_peak - drop;
    let mut hi = if t_peak > 0.0 { 2.0 * t_peak } else { 1.0 };
    let mut lo = t_peak;
    for _ in 0..200 {
        if f_ln(hi) <= target {
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f_ln(mid) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
