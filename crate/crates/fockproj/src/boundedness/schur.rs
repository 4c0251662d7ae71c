//! Schur-test feasibility on the sufficiency side, in exact rational
//! arithmetic.
//!
//! With test functions `phi = exp(lambda p' |x|^(2m))`,
//! `psi = exp(nu q |y|^(2m))` and the substitution `nu = (1 - x) gamma / q`,
//! the three Schur conditions reduce to
//!
//! - the compatibility quadratic `(x - 1/p)(x - 1/q) <= (c - 1) x (1 - x)`,
//! - and, for `p != q`, the cross condition `x > 1/(q c)`.
//!
//! Known outcomes: `x = 1/p` works for `p = q` and any `c >= 1`;
//! `x = 1/q` works for `p > q`, `c > 1`; for `p > q`, `c = 1` the
//! compatibility set is exactly `[1/p, 1/q]` while the cross condition
//! demands `x > 1/q`, so there is no common solution.

use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{rat, BoundednessError, Rational};

/// The three Schur-test conditions: the bound on the image of `phi`, the
/// bound on the image of `psi` under the adjoint, and the cross integral
/// condition required when `p != q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SchurConstraint {
    PhiBound,
    PsiBound,
    CrossCondition,
}

/// Outcome of the feasibility search.
#[derive(Debug, Clone)]
pub struct SchurWitness {
    pub feasible: bool,
    /// Witness point of the compatibility quadratic, in `(0, 1)`.
    pub x: Option<Rational>,
    /// Exponent `nu` of `psi`, recovered at the canonical triple
    /// `(alpha, beta, gamma) = ((1 - c/4) p, 1, q)`.
    pub nu: Option<Rational>,
    /// Exponent `lambda` of `phi` (midpoint of its feasible interval) at
    /// the same canonical triple.
    pub lambda: Option<Rational>,
    /// Constraints that hold with equality at the witness.
    pub binding: Vec<SchurConstraint>,
    /// Feasible `x`-interval after intersecting all constraints (f64 view;
    /// `None` when empty).
    pub interval: Option<(f64, f64)>,
}

/// Feasibility of the Schur sufficiency test for `1 < q <= p`, `c >= 1`.
pub fn schur_feasibility(
    p: &Rational,
    q: &Rational,
    c: &Rational,
) -> Result<SchurWitness, BoundednessError> {
    let one = Rational::one();
    if !(*q > one) {
        return Err(BoundednessError::Precondition(format!(
            "the Schur test requires q > 1, got q = {q}"
        )));
    }
    if !(*p >= *q) {
        return Err(BoundednessError::Precondition(format!(
            "the Schur test covers p >= q only, got p = {p} < q = {q}"
        )));
    }
    if !(*c >= one) {
        return Err(BoundednessError::Precondition(format!(
            "feasibility is asked on the bounded side c >= 1, got c = {c}"
        )));
    }

    let feasible = *p == *q || *c > one;
    let x = if *p == *q {
        Some(one.clone() / p)
    } else if *c > one {
        Some(one.clone() / q)
    } else {
        None
    };

    let interval = feasible_interval(p, q, c);

    let (nu, lambda, binding) = match &x {
        Some(xv) => {
            debug_assert!(compat_holds(p, q, c, xv));
            debug_assert!(*p == *q || cross_holds(q, c, xv));
            let nu = &one - xv;
            let (lo, hi) = lambda_interval(p, q, c, xv);
            debug_assert!(lo <= hi);
            let mut binding = Vec::new();
            if lo == hi {
                binding.push(SchurConstraint::PhiBound);
                binding.push(SchurConstraint::PsiBound);
            }
            if *p != *q && xv * q * c == one {
                binding.push(SchurConstraint::CrossCondition);
            }
            (Some(nu), Some((&lo + &hi) / rat(2, 1)), binding)
        }
        None => (None, None, Vec::new()),
    };

    Ok(SchurWitness {
        feasible,
        x,
        nu,
        lambda,
        binding,
        interval,
    })
}

/// The compatibility quadratic `(x - 1/p)(x - 1/q) <= (c-1) x (1-x)`.
fn compat_holds(p: &Rational, q: &Rational, c: &Rational, x: &Rational) -> bool {
    let one = Rational::one();
    let lhs = (x - &one / p) * (x - &one / q);
    let rhs = (c - &one) * x * (&one - x);
    lhs <= rhs
}

/// The cross condition `x > 1/(q c)` required when `p != q`.
fn cross_holds(q: &Rational, c: &Rational, x: &Rational) -> bool {
    x * q * c > Rational::one()
}

/// Feasible interval of `lambda` at the canonical triple
/// `(alpha, beta, gamma) = ((1 - c/4) p, 1, q)` for a given witness `x`:
/// nonempty exactly when the compatibility quadratic holds.
fn lambda_interval(p: &Rational, q: &Rational, c: &Rational, x: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let four = rat(4, 1);
    // lower: beta^2 / (4 (gamma - nu q) p) - (beta - alpha)/p with
    // gamma - nu q = q x and alpha = (1 - c/4) p
    let lo = &one / (&four * p * q * x) - &one / p + &one - c / &four;
    // upper: beta/p' - beta^2 / (4 nu q' p') with nu = 1 - x
    let inv_p_conj = &one - &one / p; // 1/p'
    let inv_q_conj = &one - &one / q; // 1/q'
    let hi = &inv_p_conj - (&inv_q_conj * &inv_p_conj) / (&four * (&one - x));
    (lo, hi)
}

/// Roots of `c x^2 - (1/p + 1/q + c - 1) x + 1/(pq) <= 0` intersected with
/// `(0,1)` and, for `p != q`, with `(1/(qc), 1)`; f64 view.
fn feasible_interval(p: &Rational, q: &Rational, c: &Rational) -> Option<(f64, f64)> {
    let pf = p.to_f64()?;
    let qf = q.to_f64()?;
    let cf = c.to_f64()?;
    let b = 1.0 / pf + 1.0 / qf + cf - 1.0;
    let disc = b * b - 4.0 * cf / (pf * qf);
    if disc < 0.0 {
        return None;
    }
    if *p == *q && *c == Rational::one() {
        // the quadratic degenerates to the single point 1/p
        return Some((1.0 / pf, 1.0 / pf));
    }
    let mut lo = (b - disc.sqrt()) / (2.0 * cf);
    let mut hi = (b + disc.sqrt()) / (2.0 * cf);
    lo = lo.max(f64::MIN_POSITIVE);
    hi = hi.min(1.0);
    if *p != *q {
        lo = lo.max(1.0 / (qf * cf));
    }
    if lo >= hi {
        return None;
    }
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn diagonal_always_feasible() {
        for (p, c) in [(rat(2, 1), rat(1, 1)), (rat(3, 1), rat(5, 4)), (rat(7, 2), rat(3, 1))] {
            let w = schur_feasibility(&p, &p, &c).unwrap();
            assert!(w.feasible);
            assert_eq!(w.x, Some(Rational::one() / &p));
            // the recovered exponents are strictly positive
            assert!(w.nu.unwrap() > rat(0, 1));
            assert!(w.lambda.unwrap() > rat(0, 1));
        }
    }

    #[test]
    fn diagonal_borderline_binds_both_bounds() {
        let w = schur_feasibility(&rat(2, 1), &rat(2, 1), &rat(1, 1)).unwrap();
        assert!(w.feasible);
        assert!(w.binding.contains(&SchurConstraint::PhiBound));
        assert!(w.binding.contains(&SchurConstraint::PsiBound));
        // at the canonical triple: nu = 1 - 1/p, lambda = (3/4)(1 - 1/p)
        assert_eq!(w.nu.unwrap(), rat(1, 2));
        assert_eq!(w.lambda.unwrap(), rat(3, 8));
        // with c > 1 the lambda interval opens up and nothing binds
        let w = schur_feasibility(&rat(2, 1), &rat(2, 1), &rat(2, 1)).unwrap();
        assert!(w.binding.is_empty());
    }

    #[test]
    fn off_diagonal_feasible_iff_c_above_one() {
        let p = rat(3, 1);
        let q = rat(2, 1);
        let w = schur_feasibility(&p, &q, &rat(3, 2)).unwrap();
        assert!(w.feasible);
        assert_eq!(w.x, Some(rat(1, 2)));
        let w = schur_feasibility(&p, &q, &rat(1, 1)).unwrap();
        assert!(!w.feasible);
        assert!(w.x.is_none());
        assert!(w.interval.is_none());
    }

    #[test]
    fn compat_interval_is_exact_at_c_one() {
        // c = 1: the quadratic factors as (x - 1/p)(x - 1/q) <= 0
        let p = rat(4, 1);
        let q = rat(2, 1);
        let one = Rational::one();
        assert!(compat_holds(&p, &q, &one, &rat(1, 4)));
        assert!(compat_holds(&p, &q, &one, &rat(1, 2)));
        assert!(compat_holds(&p, &q, &one, &rat(3, 8)));
        assert!(!compat_holds(&p, &q, &one, &rat(9, 16)));
        assert!(!compat_holds(&p, &q, &one, &rat(1, 5)));
        // and the cross condition excludes the whole interval
        assert!(!cross_holds(&q, &one, &rat(1, 2)));
    }

    #[test]
    fn interval_reporting() {
        let w = schur_feasibility(&rat(3, 1), &rat(2, 1), &rat(3, 2)).unwrap();
        let (lo, hi) = w.interval.unwrap();
        assert!(lo > 1.0 / 3.0 - 1e-12 && hi <= 1.0 + 1e-12 && lo < hi);
        // witness inside the reported interval
        assert!(lo <= 0.5 && 0.5 <= hi);
    }

    #[test]
    fn preconditions_enforced() {
        assert!(schur_feasibility(&rat(2, 1), &rat(1, 1), &rat(2, 1)).is_err());
        assert!(schur_feasibility(&rat(2, 1), &rat(3, 1), &rat(2, 1)).is_err());
        assert!(schur_feasibility(&rat(3, 1), &rat(2, 1), &rat(1, 2)).is_err());
    }
}
