//! Semi-infinite weighted integrals and sphere averages of the kernel,
//! with their asymptotic growth envelopes. Values are carried in log space:
//! the quantities here reach `exp(800)` on the desk-scale test grids.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{FockError, SpaceParams};
use crate::quad::{adaptive_ln, decay_cutoff, locate_peak};
use crate::specfun::{log_gamma_unchecked, ml_log_abs, MLParams};

/// A log-domain value together with the matching asymptotic envelope.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopedValue {
    pub ln_value: f64,
    /// `ln` of the growth envelope; `None` when the envelope is undefined
    /// for the given inputs (e.g. zero scale parameter).
    pub ln_envelope: Option<f64>,
    pub rel_err: f64,
}

impl EnvelopedValue {
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }

    pub fn envelope(&self) -> Option<f64> {
        self.ln_envelope.map(f64::exp)
    }

    /// `value / envelope`, computed in log space.
    pub fn ratio_to_envelope(&self) -> Option<f64> {
        self.ln_envelope.map(|e| (self.ln_value - e).exp())
    }
}

/// `int_0^inf t^rho exp(B t - A t^2) dt` with the envelope
/// `B^rho exp(B^2 / 4A)`.
///
/// Adaptive quadrature at relative tolerance `1e-9`; the integrand is
/// rescaled by its maximum (closed-form critical point of the exponent) so
/// arbitrarily large `B` stays in range. For `rho < 0` the substitution
/// `t = u^2` removes the endpoint singularity down to `rho > -1/2` and
/// weakens it below.
pub fn radial_moment(rho: f64, a: f64, b: f64) -> Result<EnvelopedValue, FockError> {
    if !(rho > -1.0) {
        return Err(FockError::Domain(format!(
            "radial moment requires rho > -1, got {rho}"
        )));
    }
    if !(a > 0.0) {
        return Err(FockError::Domain(format!(
            "radial moment requires A > 0, got {a}"
        )));
    }
    if !b.is_finite() {
        return Err(FockError::Domain(format!("B must be finite, got {b}")));
    }
    // critical point of rho ln t + B t - A t^2
    let t_crit = if rho >= 0.0 {
        (b + (b * b + 8.0 * a * rho).sqrt()).max(0.0) / (4.0 * a)
    } else {
        (b / (2.0 * a)).max(0.0)
    };
    let result = if rho >= 0.0 {
        let f_ln = move |t: f64| {
            if t <= 0.0 {
                if rho == 0.0 {
                    0.0
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                rho * t.ln() + b * t - a * t * t
            }
        };
        let scan_hi = 2.0 * t_crit + 4.0 / a.sqrt() + 1.0;
        let (tp, lp) = locate_peak(&f_ln, 0.0, scan_hi, 400);
        let hi = decay_cutoff(&f_ln, tp, lp, 69.1);
        adaptive_ln(&f_ln, 0.0, hi, lp, 1e-10, 4000, &[tp])?
    } else {
        // t = u^2: integrand 2 u^(2 rho + 1) exp(B u^2 - A u^4)
        let f_ln = move |u: f64| {
            if u <= 0.0 {
                if 2.0 * rho + 1.0 == 0.0 {
                    (2.0f64).ln()
                } else {
                    f64::NEG_INFINITY
                }
            } else {
                (2.0f64).ln() + (2.0 * rho + 1.0) * u.ln() + b * u * u - a * u.powi(4)
            }
        };
        let scan_hi = (2.0 * t_crit + 4.0 / a.sqrt() + 1.0).sqrt() + 1.0;
        let (up, lp) = locate_peak(&f_ln, 0.0, scan_hi, 400);
        let hi = decay_cutoff(&f_ln, up, lp, 69.1);
        adaptive_ln(&f_ln, 0.0, hi, lp, 1e-10, 4000, &[up])?
    };
    let ln_envelope = if b > 0.0 {
        Some(rho * b.ln() + b * b / (4.0 * a))
    } else {
        None
    };
    Ok(EnvelopedValue {
        ln_value: result.ln_value,
        ln_envelope,
        rel_err: result.rel_err,
    })
}

/// `ln int_{-pi}^{pi} |E^{(d)}_{1/m,1/m}(s e^{i theta})| d theta`.
///
/// The integrand concentrates near `theta = 0` once `s^m` is large; seed
/// points at geometric multiples of the peak width keep the subdivision
/// honest.
pub fn ml_circle_integral_ln(m: f64, d: u32, s: f64, rel_tol: f64) -> Result<f64, FockError> {
    if !(m > 0.0) || !(s >= 0.0) {
        return Err(FockError::Domain(format!(
            "circle integral requires m > 0 and s >= 0, got m = {m}, s = {s}"
        )));
    }
    let params = MLParams::new(1.0 / m, 1.0 / m, d)?;
    if s == 0.0 {
        let (v, _) = ml_log_abs(&params, Complex64::new(0.0, 0.0));
        return Ok((2.0 * PI).ln() + v);
    }
    let f_ln = move |theta: f64| ml_log_abs(&params, Complex64::from_polar(s, theta)).0;
    let ln_peak = f_ln(0.0);
    // half-width where the exponential factor drops by ~e^2
    let width = (2.0f64 / s.powf(m).max(1.0)).sqrt() * 2.0 / m;
    let mut seeds = Vec::new();
    let mut w = width.min(PI / 2.0);
    while w < PI {
        seeds.push(w);
        w *= 2.0;
    }
    if m > 0.5 {
        let sector = PI / (2.0 * m);
        if sector < PI {
            seeds.push(sector);
        }
    }
    let half = adaptive_ln(&f_ln, 0.0, PI, ln_peak, rel_tol, 4000, &seeds)?;
    // |E(conj z)| = |E(z)|: the integrand is even in theta
    Ok(half.ln_value + (2.0f64).ln())
}

/// Sphere average `int_S |K_{beta,m}(r zeta, y)| dsigma(zeta)` (log scale)
/// with the envelope `(r|y|)^(m/2 - n) exp(beta r^m |y|^m)`.
///
/// Rotation invariance reduces to `y = (|y|, 0, ..., 0)`; for `n >= 2` the
/// slice measure gives
/// `(2 pi^(n-1)/Gamma(n-1)) int_0^1 J(s rho) (1-rho^2)^(n-2) rho d rho`
/// over the circle integral `J`.
pub fn kernel_sphere_average(
    r: f64,
    y_norm: f64,
    space: &SpaceParams,
    rel_tol: f64,
) -> Result<EnvelopedValue, FockError> {
    space.require_positive_alpha()?;
    if !(r > 0.0) || !(y_norm >= 0.0) {
        return Err(FockError::Domain(format!(
            "sphere average requires r > 0 and |y| >= 0, got r = {r}, |y| = {y_norm}"
        )));
    }
    let beta = space.alpha;
    let m = space.m;
    let n = space.n;
    let nf = n as f64;
    let prefactor_ln = m.ln() + (nf / m) * beta.ln() - nf * PI.ln();
    if y_norm == 0.0 {
        // constant kernel over the sphere: area * |K(0,0)|
        let k00_ln = prefactor_ln + log_gamma_unchecked(nf) - log_gamma_unchecked(nf / m);
        let area_ln = (2.0f64).ln() + nf * PI.ln() - log_gamma_unchecked(nf);
        return Ok(EnvelopedValue {
            ln_value: area_ln + k00_ln,
            ln_envelope: None,
            rel_err: 0.0,
        });
    }
    let s_max = beta.powf(1.0 / m) * r * y_norm;
    let ln_value = if n == 1 {
        prefactor_ln + ml_circle_integral_ln(m, 0, s_max, rel_tol)?
    } else {
        let slice_ln = (2.0f64).ln() + (nf - 1.0) * PI.ln() - log_gamma_unchecked(nf - 1.0);
        let d = n - 1;
        let f_ln = |rho: f64| -> f64 {
            if rho <= 0.0 || rho >= 1.0 {
                return f64::NEG_INFINITY;
            }
            let circ = match ml_circle_integral_ln(m, d, s_max * rho, rel_tol) {
                Ok(v) => v,
                Err(_) => return f64::NEG_INFINITY,
            };
            circ + (nf - 2.0) * (1.0 - rho * rho).ln() + rho.ln()
        };
        // the exponential factor exp((s rho)^m) peaks at rho = 1; a cheap
        // exponent surrogate locates the peak without nested quadratures
        let surrogate = |rho: f64| {
            if rho <= 0.0 || rho >= 1.0 {
                f64::NEG_INFINITY
            } else {
                (s_max * rho).powf(m) + (nf - 2.0) * (1.0 - rho * rho).ln() + rho.ln()
            }
        };
        let width = 1.0 / (m * s_max.powf(m)).max(4.0);
        let mut seeds = vec![1.0 - width, 1.0 - 2.0 * width, 1.0 - 4.0 * width, 0.5];
        seeds.retain(|&x| x > 0.0 && x < 1.0);
        let (tp, _) = locate_peak(&surrogate, 1e-9, 1.0 - 1e-9, 48);
        let lp = f_ln(tp).max(f_ln(1.0 - 0.5 * width));
        let inner = adaptive_ln(&f_ln, 0.0, 1.0, lp, rel_tol, 2000, &seeds)?;
        prefactor_ln + slice_ln + inner.ln_value
    };
    let prod = r * y_norm;
    let ln_envelope = Some((m / 2.0 - nf) * prod.ln() + beta * r.powf(m) * y_norm.powf(m));
    Ok(EnvelopedValue {
        ln_value,
        ln_envelope,
        rel_err: 0.0,
    })
}

/// `int |K_{beta,m}(x, y)| exp(-C |x|^(2m)) dx` over C^n (log scale), by the
/// radial-spherical factorization, with the envelope
/// `exp(beta^2 |y|^(2m) / 4C)`.
pub fn weighted_kernel_integral(
    y_norm: f64,
    space: &SpaceParams,
    c_weight: f64,
    rel_tol: f64,
) -> Result<EnvelopedValue, FockError> {
    space.require_positive_alpha()?;
    if !(c_weight > 0.0) {
        return Err(FockError::Domain(format!(
            "weight exponent C must be positive, got {c_weight}"
        )));
    }
    let beta = space.alpha;
    let m = space.m;
    let nf = space.n as f64;
    let f_ln = |r: f64| -> f64 {
        if r <= 0.0 {
            return f64::NEG_INFINITY;
        }
        match kernel_sphere_average(r, y_norm, space, rel_tol) {
            Ok(avg) => avg.ln_value + (2.0 * nf - 1.0) * r.ln() - c_weight * r.powf(2.0 * m),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    // exponent beta r^m |y|^m - C r^(2m) peaks at r^m = beta |y|^m / 2C; a
    // closed-form surrogate of the integrand exponent drives peak location
    // and the tail cutoff so the nested quadrature only runs where it counts
    let surrogate = move |r: f64| {
        if r <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let spherical = if y_norm > 0.0 {
            (m / 2.0 - nf) * (r * y_norm).ln() + beta * r.powf(m) * y_norm.powf(m)
        } else {
            0.0
        };
        spherical + (2.0 * nf - 1.0) * r.ln() - c_weight * r.powf(2.0 * m)
    };
    let r_hint = if y_norm > 0.0 {
        (beta * y_norm.powf(m) / (2.0 * c_weight)).powf(1.0 / m)
    } else {
        (nf / (m * c_weight)).powf(1.0 / (2.0 * m))
    };
    let (tp, sp) = locate_peak(&surrogate, 0.0, 3.0 * r_hint + 2.0, 160);
    let hi = decay_cutoff(&surrogate, tp, sp, 79.0);
    let lp = f_ln(tp);
    let outer = adaptive_ln(&f_ln, 0.0, hi, lp, rel_tol, 2000, &[tp])?;
    let ln_envelope = if y_norm > 0.0 {
        Some(beta * beta * y_norm.powf(2.0 * m) / (4.0 * c_weight))
    } else {
        None
    };
    Ok(EnvelopedValue {
        ln_value: outer.ln_value,
        ln_envelope,
        rel_err: outer.rel_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs()
    }

    #[test]
    fn radial_moment_closed_forms() {
        // rho = 0, B = 0: half Gaussian, (1/2) sqrt(pi/A)
        for &a in &[0.5f64, 1.0, 2.0] {
            let v = radial_moment(0.0, a, 0.0).unwrap();
            assert!(rel(v.value(), 0.5 * (PI / a).sqrt()) < 1e-9);
            assert!(v.envelope().is_none());
        }
        // rho = 1, B = 0, A = 1: 1/2
        let v = radial_moment(1.0, 1.0, 0.0).unwrap();
        assert!(rel(v.value(), 0.5) < 1e-9);
    }

    #[test]
    fn radial_moment_laplace_limit() {
        // ratio to B^rho exp(B^2/4A) converges to (2A)^(-rho) sqrt(pi/A);
        // frozen oracle values at rho = 2.5, A = 1: 0.32506, 0.31627, 0.31406
        let frozen = [(10.0, 0.325063475689895289), (20.0, 0.316265068486152919), (40.0, 0.314062840664107406)];
        for (b, want) in frozen {
            let v = radial_moment(2.5, 1.0, b).unwrap();
            let ratio = v.ratio_to_envelope().unwrap();
            assert!(rel(ratio, want) < 1e-7, "B = {b}: {ratio} vs {want}");
        }
        let limit = 2.0f64.powf(-2.5) * PI.sqrt();
        let last = radial_moment(2.5, 1.0, 40.0).unwrap().ratio_to_envelope().unwrap();
        assert!(rel(last, limit) < 0.05);
    }

    #[test]
    fn radial_moment_huge_scale_stays_finite() {
        // B = 40, A = 0.5: value ~ exp(800), far beyond f64
        let v = radial_moment(2.5, 0.5, 40.0).unwrap();
        assert!(v.ln_value > 790.0 && v.ln_value.is_finite());
        assert!(v.ratio_to_envelope().unwrap().is_finite());
    }

    #[test]
    fn radial_moment_negative_rho() {
        // int t^(-1/2) e^(-t^2) dt = Gamma(1/4)/2
        let v = radial_moment(-0.5, 1.0, 0.0).unwrap();
        let want = (log_gamma_unchecked(0.25)).exp() / 2.0;
        assert!(rel(v.value(), want) < 1e-8, "{} vs {want}", v.value());
        assert!(radial_moment(-1.0, 1.0, 0.0).is_err());
        assert!(radial_moment(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn circle_integral_bessel_case() {
        // m=1, d=0: int |e^{s e^{i theta}}| dtheta = 2 pi I_0(s);
        // frozen I_0 oracle values at s = 10, 20, 40
        let frozen = [
            (10.0f64, 17691.6693491604127),
            (20.0, 273684760.984163591),
            (40.0, 93586630135764775.6),
        ];
        for (s, want) in frozen {
            let v = ml_circle_integral_ln(1.0, 0, s, 1e-9).unwrap();
            assert!(rel(v.exp(), want) < 1e-7, "s = {s}");
        }
    }

    #[test]
    fn sphere_average_bessel_asymptote() {
        // m=1, n=1, beta=1: average = 2 pi I_0(r|y|) / pi = 2 I_0(r|y|),
        // and the envelope exponent is (r|y|)^(-1/2) e^{r|y|}; the ratio
        // tends to 2/sqrt(2 pi) = sqrt(2/pi).
        let s = SpaceParams::new(1.0, 1.0, 1).unwrap();
        let v = kernel_sphere_average(4.0, 10.0, &s, 1e-9).unwrap();
        let want = 2.0 * 93586630135764775.6 / (2.0 * PI); // 2 I_0(40)
        assert!(rel(v.value(), want) < 1e-7);
        let ratio = v.ratio_to_envelope().unwrap();
        assert!(rel(ratio, (2.0 / PI).sqrt()) < 0.01, "ratio {ratio}");
    }

    #[test]
    fn sphere_average_ratio_stabilizes_n2() {
        let s = SpaceParams::new(1.0, 1.5, 2).unwrap();
        let mut prev: Option<f64> = None;
        for &prod in &[8.0f64, 16.0, 32.0] {
            let v = kernel_sphere_average(prod.sqrt(), prod.sqrt(), &s, 1e-7).unwrap();
            let ratio = v.ratio_to_envelope().unwrap();
            assert!(ratio.is_finite() && ratio > 0.0);
            if let Some(p) = prev {
                assert!((ratio / p - 1.0).abs() < 0.10, "drift {} at r|y| = {prod}", ratio / p - 1.0);
            }
            prev = Some(ratio);
        }
    }

    #[test]
    fn sphere_average_exponent_strictly_better_than_pointwise() {
        // (m-1)n - (m/2 - n) = m(n - 1/2) > 0 for all m > 0, n >= 1
        for &(m, n) in &[(0.5f64, 1u32), (1.0, 1), (1.5, 2), (3.0, 2)] {
            let gap = (m - 1.0) * n as f64 - (m / 2.0 - n as f64);
            assert!(gap > 0.0);
            assert!((gap - m * (n as f64 - 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn weighted_integral_constant_kernel_at_origin() {
        // y = 0: the kernel is constant in x, so the integral equals
        // K(0,0) * int exp(-C |x|^(2m)) dx.
        let s = SpaceParams::new(1.0, 1.5, 1).unwrap();
        let v = weighted_kernel_integral(0.0, &s, 0.7, 1e-8).unwrap();
        let k00_ln = {
            let nf = 1.0;
            s.m.ln() + (nf / s.m) * s.alpha.ln() - nf * PI.ln() + log_gamma_unchecked(nf)
                - log_gamma_unchecked(nf / s.m)
        };
        let mass_ln = super::super::norms::weight_mass_ln(0.7, 1.5, 1).unwrap();
        assert!((v.ln_value - (k00_ln + mass_ln)).abs() < 1e-6);
    }

    #[test]
    fn weighted_integral_gaussian_cross_check() {
        // m=1, n=1, beta=1, C=1/2: ratio to exp(|y|^2 / 2) stabilizes
        let s = SpaceParams::new(1.0, 1.0, 1).unwrap();
        let mut prev: Option<f64> = None;
        for &yn in &[4.0f64, 6.0, 9.0] {
            let v = weighted_kernel_integral(yn, &s, 0.5, 1e-8).unwrap();
            let ratio = v.ratio_to_envelope().unwrap();
            if let Some(p) = prev {
                assert!((ratio / p - 1.0).abs() < 0.10, "drift at |y| = {yn}");
            }
            prev = Some(ratio);
        }
    }
}
