//! Sphere integrals of monomials and the closed-form monomial norms.
//!
//! With the unnormalized surface measure on the unit sphere of C^n,
//!
//! ```text
//! int_S |zeta^nu|^2 dsigma          = 2 pi^n nu! / Gamma(n + |nu|)
//! ||z^nu||^2_{alpha,m}              = pi^n nu! / (m Gamma(n+|nu|)) * Gamma((n+|nu|)/m) / alpha^((n+|nu|)/m)
//! ||z^nu||^p_{p,alpha,m}            = pi^n/m * (nu p/2)! / Gamma(n + |nu|p/2) * Gamma((|nu|p+2n)/(2m)) / alpha^((|nu|p+2n)/(2m))
//! ```
//!
//! where `(nu p/2)! = prod_j Gamma(nu_j p/2 + 1)`. Everything is computed
//! in log space so sweeps with `|nu|` in the thousands stay finite.

use std::f64::consts::PI;

use super::{FockError, MultiIndex, SpaceParams};
use crate::specfun::log_gamma_unchecked;

/// `int_S |zeta_1|^(2 nu_1) ... |zeta_n|^(2 nu_n) dsigma(zeta)` over the
/// unit sphere of C^n; real nonnegative exponents allowed.
pub fn sphere_monomial_integral(nu: &MultiIndex, n: u32) -> Result<f64, FockError> {
    nu.check_dim(n)?;
    Ok(sphere_monomial_integral_ln(nu, n)?.exp())
}

pub(crate) fn sphere_monomial_integral_ln(nu: &MultiIndex, n: u32) -> Result<f64, FockError> {
    nu.check_dim(n)?;
    let fact_ln: f64 = nu
        .exponents()
        .iter()
        .map(|&e| log_gamma_unchecked(e + 1.0))
        .sum();
    Ok((2.0f64).ln() + (n as f64) * PI.ln() + fact_ln
        - log_gamma_unchecked(n as f64 + nu.order()))
}

/// `||z^nu||^2` in `L^2_{alpha,m}`.
pub fn monomial_norm_sq(nu: &MultiIndex, space: &SpaceParams) -> Result<f64, FockError> {
    Ok(monomial_norm_sq_ln(nu, space)?.exp())
}

/// Natural log of `||z^nu||^2`.
pub fn monomial_norm_sq_ln(nu: &MultiIndex, space: &SpaceParams) -> Result<f64, FockError> {
    nu.check_dim(space.n)?;
    nu.require_integer()?;
    space.require_positive_alpha()?;
    let n = space.n as f64;
    let s = n + nu.order();
    let fact_ln: f64 = nu
        .exponents()
        .iter()
        .map(|&e| log_gamma_unchecked(e + 1.0))
        .sum();
    Ok(n * PI.ln() + fact_ln - space.m.ln() - log_gamma_unchecked(s)
        + log_gamma_unchecked(s / space.m)
        - (s / space.m) * space.alpha.ln())
}

/// `||z^nu||` in `L^p_{alpha,m}`; any `p > 0` is accepted.
pub fn monomial_norm_p(nu: &MultiIndex, p: f64, space: &SpaceParams) -> Result<f64, FockError> {
    Ok(monomial_norm_p_ln(nu, p, space)?.exp())
}

/// Natural log of the `L^p` norm (the 1/p root already applied).
pub fn monomial_norm_p_ln(nu: &MultiIndex, p: f64, space: &SpaceParams) -> Result<f64, FockError> {
    nu.check_dim(space.n)?;
    nu.require_integer()?;
    space.require_positive_alpha()?;
    if !(p > 0.0) || !p.is_finite() {
        return Err(FockError::Domain(format!("exponent p must be positive, got {p}")));
    }
    let n = space.n as f64;
    let half_p_order = nu.order() * p / 2.0;
    let fact_ln: f64 = nu
        .exponents()
        .iter()
        .map(|&e| log_gamma_unchecked(e * p / 2.0 + 1.0))
        .sum();
    let g = (nu.order() * p + 2.0 * n) / (2.0 * space.m);
    let ln_p_th_power = n * PI.ln() - space.m.ln() + fact_ln
        - log_gamma_unchecked(n + half_p_order)
        + log_gamma_unchecked(g)
        - g * space.alpha.ln();
    Ok(ln_p_th_power / p)
}

/// `ln int exp(-c |z|^(2m)) dz` over C^n, the total mass of the weight.
pub fn weight_mass_ln(c: f64, m: f64, n: u32) -> Result<f64, FockError> {
    if !(c > 0.0) {
        return Err(FockError::Domain(format!(
            "weight coefficient must be positive for a finite mass, got {c}"
        )));
    }
    let space = SpaceParams::new(c, m, n)?;
    let zero = MultiIndex::integer(&vec![0; n as usize]);
    monomial_norm_sq_ln(&zero, &space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive;

    fn rel(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs()
    }

    #[test]
    fn sphere_integral_closed_forms() {
        // circumference of the unit circle
        let v = sphere_monomial_integral(&MultiIndex::integer(&[0]), 1).unwrap();
        assert!(rel(v, 2.0 * PI) < 1e-14);
        // area of S^3
        let v = sphere_monomial_integral(&MultiIndex::integer(&[0, 0]), 2).unwrap();
        assert!(rel(v, 2.0 * PI * PI) < 1e-14);
        // nu = (1,1), n = 2: 2 pi^2 / Gamma(4) = pi^2/3
        let v = sphere_monomial_integral(&MultiIndex::integer(&[1, 1]), 2).unwrap();
        assert!(rel(v, PI * PI / 3.0) < 1e-14);
        // real exponents are allowed
        let v = sphere_monomial_integral(&MultiIndex::real_nonneg(&[0.5, 1.25]).unwrap(), 2);
        assert!(v.unwrap() > 0.0);
        // dimension mismatch
        assert!(sphere_monomial_integral(&MultiIndex::integer(&[1]), 2).is_err());
    }

    #[test]
    fn sphere_integral_monte_carlo_oracle() {
        // nu = (1,1), n = 2 against a seeded Monte-Carlo surface integral:
        // E[|zeta_1|^2 |zeta_2|^2] * area(S^3) with zeta uniform on S^3.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let samples = 400_000;
        let mut acc = 0.0;
        for _ in 0..samples {
            let g: [f64; 4] = std::array::from_fn(|_| {
                // Box-Muller
                let u: f64 = rng.gen_range(f64::EPSILON..1.0);
                let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                (-2.0 * u.ln()).sqrt() * v.cos()
            });
            let norm_sq: f64 = g.iter().map(|x| x * x).sum();
            let z1 = (g[0] * g[0] + g[1] * g[1]) / norm_sq;
            let z2 = (g[2] * g[2] + g[3] * g[3]) / norm_sq;
            acc += z1 * z2;
        }
        let mc = acc / samples as f64 * 2.0 * PI * PI;
        let closed = sphere_monomial_integral(&MultiIndex::integer(&[1, 1]), 2).unwrap();
        assert!(rel(mc, closed) < 0.01, "mc = {mc}, closed = {closed}");
    }

    #[test]
    fn norm_sq_closed_forms() {
        // Gaussian integral over C: ||1||^2 = pi at alpha = 1, m = 1
        let space = SpaceParams::new(1.0, 1.0, 1).unwrap();
        let v = monomial_norm_sq(&MultiIndex::integer(&[0]), &space).unwrap();
        assert!(rel(v, PI) < 1e-14);
        // m = 2: (pi/2) Gamma(1/2) = pi sqrt(pi) / 2
        let space = SpaceParams::new(1.0, 2.0, 1).unwrap();
        let v = monomial_norm_sq(&MultiIndex::integer(&[0]), &space).unwrap();
        assert!(rel(v, PI * PI.sqrt() / 2.0) < 1e-14);
        // frozen quadrature oracle: nu=(3), m=1.5, n=1, alpha=2
        let space = SpaceParams::new(2.0, 1.5, 1).unwrap();
        let v = monomial_norm_sq(&MultiIndex::integer(&[3]), &space).unwrap();
        assert!(rel(v, 0.4962790483645902086692) < 1e-13);
    }

    #[test]
    fn norm_sq_matches_live_quadrature() {
        // 2 pi int r^{2 nu + 1} exp(-alpha r^(2m)) dr in dimension 1
        for &(nu, alpha, m) in &[(3u64, 2.0f64, 1.5f64), (1, 0.7, 0.6), (4, 1.3, 2.5)] {
            let space = SpaceParams::new(alpha, m, 1).unwrap();
            let closed = monomial_norm_sq(&MultiIndex::integer(&[nu]), &space).unwrap();
            let f = |r: f64| r.powf(2.0 * nu as f64 + 1.0) * (-alpha * r.powf(2.0 * m)).exp();
            let hi = 40.0f64.powf(1.0 / (2.0 * m)) / alpha.powf(1.0 / (2.0 * m)) + 5.0;
            let q = adaptive(&f, 0.0, hi, 1e-11, 0.0, 2000, &[]).unwrap();
            assert!(rel(closed, 2.0 * PI * q.value) < 1e-9, "nu={nu} alpha={alpha} m={m}");
        }
    }

    #[test]
    fn norm_p_consistency_and_oracle() {
        // p = 2 agrees with the square norm
        let space = SpaceParams::new(1.7, 1.25, 2).unwrap();
        let nu = MultiIndex::integer(&[2, 1]);
        let sq = monomial_norm_sq(&nu, &space).unwrap();
        let p2 = monomial_norm_p(&nu, 2.0, &space).unwrap();
        assert!(rel(p2, sq.sqrt()) < 1e-13);
        // frozen 2-D product-Gaussian oracle: ||z^(1,0)||_4, m=1, n=2, alpha=1
        let space = SpaceParams::new(1.0, 1.0, 2).unwrap();
        let v = monomial_norm_p(&MultiIndex::integer(&[1, 0]), 4.0, &space).unwrap();
        assert!(rel(v, 2.107814730510811817592) < 1e-13);
        // nu = 0: reduces to the weight mass to the power 1/p
        let space = SpaceParams::new(0.9, 1.5, 2).unwrap();
        let mass = weight_mass_ln(0.9, 1.5, 2).unwrap();
        for &p in &[1.0, 2.0, 3.7] {
            let v = monomial_norm_p_ln(&MultiIndex::integer(&[0, 0]), p, &space).unwrap();
            assert!((v - mass / p).abs() < 1e-13);
        }
    }

    #[test]
    fn large_degree_stays_finite() {
        let space = SpaceParams::new(1.0, 1.5, 2).unwrap();
        for &k in &[500u64, 1000, 2000] {
            let v = monomial_norm_p_ln(&MultiIndex::diagonal(k, 2), 3.7, &space).unwrap();
            assert!(v.is_finite());
        }
    }

    #[test]
    fn domain_errors() {
        let space = SpaceParams::new(-1.0, 1.0, 1).unwrap();
        assert!(monomial_norm_sq(&MultiIndex::integer(&[0]), &space).is_err());
        let space = SpaceParams::new(1.0, 1.0, 1).unwrap();
        assert!(monomial_norm_p(&MultiIndex::integer(&[0]), 0.0, &space).is_err());
        let real = MultiIndex::real_nonneg(&[0.5]).unwrap();
        assert!(monomial_norm_sq(&real, &space).is_err());
    }
}
