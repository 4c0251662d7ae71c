//! Projection of radial-monomial functions: for
//! `f(z) = z^nu |z|^a exp(b |z|^m + c |z|^(2m))` the projection with weight
//! coefficient `beta` acts as `P f(w) = c_nu w^nu`, where
//!
//! ```text
//! c_nu = [2 pi^n nu! / Gamma(n+|nu|)] *
//!        int_0^inf r^(2|nu| + 2n - 1 + a) exp(b r^m + (c - beta) r^(2m)) dr
//!        / ||z^nu||^2_{beta,m}
//! ```
//!
//! The radial integral converges iff `c < beta` (strict).

use super::norms::{monomial_norm_sq_ln, sphere_monomial_integral_ln};
use super::{FockError, RadialMonomial, SpaceParams};
use crate::quad::{adaptive_ln, decay_cutoff, locate_peak};

/// Scalar coefficient `c_nu` with `P_{beta,m} f(w) = c_nu w^nu`.
///
/// For the family `f = z^nu exp(lambda |z|^(2m))` (`a = b = 0`, `c = lambda`)
/// the closed form is `(beta / (beta - lambda))^((n+|nu|)/m)`.
pub fn project_radial_monomial(
    f: &RadialMonomial,
    space: &SpaceParams,
) -> Result<f64, FockError> {
    let beta = space.alpha;
    space.require_positive_alpha()?;
    f.nu.check_dim(space.n)?;
    if f.m != space.m {
        return Err(FockError::InvalidParams(format!(
            "test function has weight exponent m = {} but the space has m = {}",
            f.m, space.m
        )));
    }
    if f.c >= beta {
        return Err(FockError::Divergent(format!(
            "projection integral diverges: test-function coefficient c = {} must stay strictly below beta = {beta}",
            f.c
        )));
    }
    let m = space.m;
    let nf = space.n as f64;
    let power = 2.0 * f.nu.order() + 2.0 * nf - 1.0 + f.a;
    let b = f.b;
    let decay = beta - f.c;
    let g_ln = move |r: f64| {
        if r <= 0.0 {
            f64::NEG_INFINITY
        } else {
            power * r.ln() + b * r.powf(m) - decay * r.powf(2.0 * m)
        }
    };
    // exponent peaks where power/r + b m r^(m-1) = 2m decay r^(2m-1)
    let scale = ((power / (2.0 * m * decay)).max(b.abs() / decay)).powf(1.0 / (2.0 * m)).max(1.0);
    let (tp, lp) = locate_peak(&g_ln, 0.0, 4.0 * scale, 400);
    let hi = decay_cutoff(&g_ln, tp, lp, 69.1);
    let radial = adaptive_ln(&g_ln, 0.0, hi, lp, 1e-10, 4000, &[tp])?;
    let ln_c = sphere_monomial_integral_ln(&f.nu, space.n)? + radial.ln_value
        - monomial_norm_sq_ln(&f.nu, space)?;
    Ok(ln_c.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::MultiIndex;

    fn rel(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs()
    }

    fn closed_form(beta: f64, lambda: f64, m: f64, n: u32, order: f64) -> f64 {
        (beta / (beta - lambda)).powf((n as f64 + order) / m)
    }

    #[test]
    fn gaussian_scaled_closed_form() {
        // c_nu = (beta/(beta-lambda))^((n+|nu|)/m)
        let cases = [
            (2.0f64, 1.0f64, 1.0f64, 1u32, vec![1u64]),
            (1.5, 0.6, 1.5, 2, vec![2, 1]),
            (1.0, -0.8, 0.75, 1, vec![3]),
            (3.0, 2.2, 2.5, 2, vec![0, 4]),
        ];
        for (beta, lambda, m, n, nu) in cases {
            let f = RadialMonomial::gaussian_scaled(MultiIndex::integer(&nu), lambda, m).unwrap();
            let space = SpaceParams::new(beta, m, n).unwrap();
            let got = project_radial_monomial(&f, &space).unwrap();
            let want = closed_form(beta, lambda, m, n, f.nu.order());
            assert!(rel(got, want) < 1e-8, "beta={beta} lambda={lambda}: {got} vs {want}");
        }
    }

    #[test]
    fn arithmetic_instance() {
        // n=1, nu=1, m=1, beta=2, lambda=1 -> (2/1)^2 = 4
        let f = RadialMonomial::gaussian_scaled(MultiIndex::integer(&[1]), 1.0, 1.0).unwrap();
        let space = SpaceParams::new(2.0, 1.0, 1).unwrap();
        let got = project_radial_monomial(&f, &space).unwrap();
        assert!(rel(got, 4.0) < 1e-9);
    }

    #[test]
    fn reproducing_property() {
        // lambda = 0: the projection fixes holomorphic monomials
        for &(beta, m, n, k) in &[(1.0f64, 1.0f64, 1u32, 0u64), (2.0, 1.5, 2, 3), (0.7, 0.6, 1, 5)] {
            let f =
                RadialMonomial::gaussian_scaled(MultiIndex::single_axis(k, n), 0.0, m).unwrap();
            let space = SpaceParams::new(beta, m, n).unwrap();
            let got = project_radial_monomial(&f, &space).unwrap();
            assert!((got - 1.0).abs() < 1e-9, "beta={beta} m={m} n={n} k={k}: {got}");
        }
    }

    #[test]
    fn general_radial_factor() {
        // a, b nonzero: cross-check against a second quadrature in the
        // substituted variable u = r^m (an independent parametrization).
        use crate::quad::adaptive;
        let f = RadialMonomial::new(MultiIndex::integer(&[2]), 1.5, 0.8, -0.5, 1.25).unwrap();
        let space = SpaceParams::new(1.3, 1.25, 1).unwrap();
        let got = project_radial_monomial(&f, &space).unwrap();
        let m = 1.25f64;
        let power = 2.0 * 2.0 + 2.0 - 1.0 + 1.5;
        let decay = 1.3 + 0.5;
        let integrand = move |u: f64| {
            // r = u^(1/m), dr = (1/m) u^(1/m - 1) du
            let r = u.powf(1.0 / m);
            r.powf(power) * (0.8 * u - decay * u * u).exp() * (1.0 / m) * u.powf(1.0 / m - 1.0)
        };
        let q = adaptive(&integrand, 1e-12, 30.0, 1e-11, 0.0, 4000, &[]).unwrap();
        let sphere = sphere_monomial_integral_ln(&f.nu, 1).unwrap().exp();
        let norm = monomial_norm_sq_ln(&f.nu, &space).unwrap().exp();
        let want = sphere * q.value / norm;
        assert!(rel(got, want) < 1e-7, "{got} vs {want}");
    }

    #[test]
    fn divergent_when_c_reaches_beta() {
        let f = RadialMonomial::gaussian_scaled(MultiIndex::integer(&[1]), 1.0, 1.0).unwrap();
        let space = SpaceParams::new(1.0, 1.0, 1).unwrap();
        assert!(matches!(
            project_radial_monomial(&f, &space),
            Err(FockError::Divergent(_))
        ));
    }
}
