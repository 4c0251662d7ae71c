//! The reproducing kernel of `H^2_{alpha,m}` by two independent routes:
//!
//! - `kernel_series`: direct summation of
//!   `(m alpha^(n/m) / pi^n) sum_k (alpha^(1/m) <x,y>)^k / k! * Gamma(n+k)/Gamma((n+k)/m)`
//! - `kernel_ml`: `(m alpha^(n/m) / pi^n) E^{(n-1)}_{1/m,1/m}(alpha^(1/m) <x,y>)`
//!
//! plus the growth envelope `(|x||y|)^((m-1)n) exp(alpha |x|^m |y|^m)` with
//! a constant calibrated once per `(m, n, alpha)` on the aligned diagonal.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use super::{FockError, KernelPoint, SpaceParams};
use crate::specfun::{log_gamma_unchecked, mittag_leffler, ml_log_abs, MLParams};

const SERIES_REL_TOL: f64 = 1e-11;
const SERIES_CAP: usize = 100_000;

fn kernel_prefactor_ln(space: &SpaceParams) -> f64 {
    let n = space.n as f64;
    space.m.ln() + (n / space.m) * space.alpha.ln() - n * PI.ln()
}

/// Kernel value by direct summation of the orthonormal-basis series,
/// certified to `1e-11` relative.
pub fn kernel_series(pt: &KernelPoint, space: &SpaceParams) -> Result<Complex64, FockError> {
    pt.check_dim(space.n)?;
    space.require_positive_alpha()?;
    let n = space.n as f64;
    let m = space.m;
    let w = pt.inner() * space.alpha.powf(1.0 / m);
    // t_0 = Gamma(n)/Gamma(n/m)
    let mut term = Complex64::new(
        (log_gamma_unchecked(n) - log_gamma_unchecked(n / m)).exp(),
        0.0,
    );
    let mut sum = term;
    let mut abs_sum = term.norm();
    let mut small_streak = 0usize;
    let mut k = 0usize;
    loop {
        if k >= SERIES_CAP {
            return Err(FockError::SpecFun(crate::specfun::SpecFunError::AccuracyFailure {
                msg: format!(
                    "kernel series needs more than {SERIES_CAP} terms at |<x,y>| = {:.3e}; use the Mittag-Leffler route",
                    pt.inner().norm()
                ),
                series: None,
                asymptotic: None,
            }));
        }
        let kf = k as f64;
        // t_{k+1}/t_k = w (n+k)/(k+1) * Gamma((n+k)/m)/Gamma((n+k+1)/m)
        let gr = (log_gamma_unchecked((n + kf) / m) - log_gamma_unchecked((n + kf + 1.0) / m)).exp();
        term *= w * ((n + kf) / (kf + 1.0)) * gr;
        k += 1;
        let t_abs = term.norm();
        if !t_abs.is_finite() {
            return Err(FockError::SpecFun(crate::specfun::SpecFunError::AccuracyFailure {
                msg: "kernel series term overflow".into(),
                series: None,
                asymptotic: None,
            }));
        }
        sum += term;
        abs_sum += t_abs;
        if t_abs <= 1e-16 * sum.norm().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    let rounding = 32.0 * f64::EPSILON * abs_sum;
    if rounding > SERIES_REL_TOL * sum.norm() {
        return Err(FockError::SpecFun(crate::specfun::SpecFunError::AccuracyFailure {
            msg: format!(
                "kernel series rounding floor {rounding:.3e} exceeds {SERIES_REL_TOL:.0e} relative at |<x,y>| = {:.3e}",
                pt.inner().norm()
            ),
            series: None,
            asymptotic: None,
        }));
    }
    Ok(sum * kernel_prefactor_ln(space).exp())
}

/// Kernel value through the Mittag-Leffler derivative; works for large
/// arguments where the series route declines.
pub fn kernel_ml(pt: &KernelPoint, space: &SpaceParams) -> Result<Complex64, FockError> {
    pt.check_dim(space.n)?;
    space.require_positive_alpha()?;
    let params = MLParams::kernel_family(space.m, space.n)?;
    let w = pt.inner() * space.alpha.powf(1.0 / space.m);
    let e = mittag_leffler(&params, w)?;
    Ok(e.value * kernel_prefactor_ln(space).exp())
}

/// Best-effort `(ln |K|, ln error-bound)`; total on its domain, for use in
/// envelope checks and quadratures where the kernel magnitude overflows.
pub fn kernel_abs_ln(pt: &KernelPoint, space: &SpaceParams) -> Result<(f64, f64), FockError> {
    pt.check_dim(space.n)?;
    space.require_positive_alpha()?;
    let params = MLParams::kernel_family(space.m, space.n)?;
    let w = pt.inner() * space.alpha.powf(1.0 / space.m);
    let (ln_abs, ln_err) = ml_log_abs(&params, w);
    let pre = kernel_prefactor_ln(space);
    Ok((ln_abs + pre, ln_err + pre))
}

type EnvKey = (u64, u32, u64);

fn envelope_cache() -> &'static Mutex<HashMap<EnvKey, f64>> {
    static CACHE: OnceLock<Mutex<HashMap<EnvKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn raw_envelope_ln(prod: f64, space: &SpaceParams) -> f64 {
    let n = space.n as f64;
    (space.m - 1.0) * n * prod.ln() + space.alpha * prod.powf(space.m)
}

/// Envelope constant, calibrated once per `(m, n, alpha)` by sampling
/// `|K| / envelope` on the aligned diagonal `x = y` across the regime
/// `|x||y|` in `[1, 100]`, with 25% headroom.
fn envelope_constant(space: &SpaceParams) -> Result<f64, FockError> {
    let key = (space.m.to_bits(), space.n, space.alpha.to_bits());
    if let Some(&c) = envelope_cache().lock().unwrap().get(&key) {
        return Ok(c);
    }
    let mut worst: f64 = 0.0;
    let mut prod = 1.0f64;
    while prod <= 100.0 {
        let r = prod.sqrt();
        let mut x = vec![Complex64::new(0.0, 0.0); space.n as usize];
        x[0] = Complex64::new(r, 0.0);
        let pt = KernelPoint::new(x.clone(), x)?;
        let (ln_abs, _) = kernel_abs_ln(&pt, space)?;
        let ratio = (ln_abs - raw_envelope_ln(prod, space)).exp();
        worst = worst.max(ratio);
        prod *= 1.3;
    }
    let c = worst * 1.25;
    envelope_cache().lock().unwrap().insert(key, c);
    Ok(c)
}

/// Pointwise growth envelope for `|K(x, y)|`, valid in the regime
/// `|x||y| >= 1`. Overflows to `inf` for very large arguments; see
/// [`kernel_envelope_ln`].
pub fn kernel_envelope(pt: &KernelPoint, space: &SpaceParams) -> Result<f64, FockError> {
    Ok(kernel_envelope_ln(pt, space)?.exp())
}

/// Natural log of the envelope value.
pub fn kernel_envelope_ln(pt: &KernelPoint, space: &SpaceParams) -> Result<f64, FockError> {
    pt.check_dim(space.n)?;
    space.require_positive_alpha()?;
    let prod = pt.norm_x() * pt.norm_y();
    if prod < 1.0 {
        return Err(FockError::Domain(format!(
            "envelope regime requires |x||y| >= 1, got {prod}"
        )));
    }
    Ok(envelope_constant(space)?.ln() + raw_envelope_ln(prod, space))
}
