//! Deterministic exact-rational problem grids used by the verification
//! suites and the acceptance tests.

use crate::boundedness::{rat, ProjectionProblem, Rational};
use num_traits::One;

/// Builds a problem with a prescribed critical ratio `c`: the family
/// `beta = 1`, `gamma = q/2`, `alpha = p (1 - c/2)` has
/// `c = 2 (1 - alpha/p)` exactly.
pub fn problem_with_c(
    c: &Rational,
    p: &Rational,
    q: &Rational,
    m: &Rational,
    n: u32,
) -> ProjectionProblem {
    let alpha = p * (Rational::one() - c / rat(2, 1));
    ProjectionProblem::new(
        alpha,
        Rational::one(),
        q / rat(2, 1),
        p.clone(),
        q.clone(),
        m.clone(),
        n,
    )
    .expect("grid parameters are valid by construction")
}

/// The exact-rational classification grid: spans `c < 1` (including
/// `q_max <= 0` and negative `alpha`), the borderline `c = 1` in every
/// `(p vs q, m-region)` combination, and `c > 1`. Deterministic order.
///
/// The `c < 1` section keeps `m <= 3/2` so that the necessity sweeps at
/// `k <= 500` clear the divergence gate: the linear growth rate of the
/// log-ratio curve is `ln(2 - c)/(2m)`, and the quartile gap must exceed 10.
pub fn classification_grid() -> Vec<ProjectionProblem> {
    let mut grid = Vec::new();
    let pq_pairs = [(rat(2, 1), rat(2, 1)), (rat(2, 1), rat(3, 1)), (rat(3, 1), rat(2, 1))];
    let small_m = [rat(1, 2), rat(1, 1), rat(3, 2)];
    let all_m = [
        rat(1, 2),
        rat(1, 1),
        rat(9, 8),
        rat(4, 3),
        rat(3, 2),
        rat(2, 1),
        rat(3, 1),
    ];
    let ns = [1u32, 2, 3];

    // below the critical ratio, including q_max = 0 and q_max < 0 (where
    // alpha/p >= beta) and a negative-alpha family at c = 4 below
    for c in [rat(-1, 2), rat(0, 1), rat(1, 2), rat(2, 3), rat(8, 9)] {
        for m in &small_m {
            for n in ns {
                for (p, q) in &pq_pairs {
                    grid.push(problem_with_c(&c, p, q, m, n));
                }
            }
        }
    }
    // the borderline, over every m-region
    let one = Rational::one();
    for m in &all_m {
        for n in ns {
            for (p, q) in &pq_pairs {
                grid.push(problem_with_c(&one, p, q, m, n));
            }
        }
    }
    // above the critical ratio; c = 4 makes alpha = -p negative
    for c in [rat(9, 8), rat(3, 2), rat(2, 1), rat(4, 1)] {
        for m in &small_m {
            for n in ns {
                for (p, q) in &pq_pairs {
                    grid.push(problem_with_c(&c, p, q, m, n));
                }
            }
        }
    }
    grid
}

/// The subset of the classification grid with `c != 1`, used by the
/// necessity-experiment concordance checks.
pub fn concordance_grid() -> Vec<ProjectionProblem> {
    classification_grid()
        .into_iter()
        .filter(|p| p.c_value() != Rational::one())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spans_all_branches() {
        let grid = classification_grid();
        assert!(grid.len() >= 300, "grid has {} points", grid.len());
        let one = Rational::one();
        let below = grid.iter().filter(|p| p.c_value() < one).count();
        let at = grid.iter().filter(|p| p.c_value() == one).count();
        let above = grid.iter().filter(|p| p.c_value() > one).count();
        assert!(below >= 100 && at >= 60 && above >= 100, "{below}/{at}/{above}");
        // all verdicts and open cases appear
        use crate::boundedness::{Justification, Verdict};
        let verdicts: std::collections::HashSet<_> =
            grid.iter().map(|p| p.classify().verdict).collect();
        assert!(verdicts.contains(&Verdict::Bounded));
        assert!(verdicts.contains(&Verdict::Unbounded));
        assert!(verdicts.contains(&Verdict::Unknown));
        let justs: std::collections::HashSet<_> =
            grid.iter().map(|p| p.classify().justification).collect();
        for j in [
            Justification::Prop7CLt1,
            Justification::Prop9CGt1,
            Justification::Prop16PEqQ,
            Justification::Thm1MLe1PLeQ,
            Justification::Cor11MLt2PGtQ,
            Justification::Cor13MGtThreshPLtQ,
            Justification::OpenCaseA,
            Justification::OpenCaseB,
        ] {
            assert!(justs.contains(&j), "missing branch {j:?}");
        }
        // negative alpha and nonpositive q_max both occur
        assert!(grid.iter().any(|p| p.alpha < rat(0, 1)));
        assert!(grid.iter().any(|p| p.q_max() <= rat(0, 1)));
    }

    #[test]
    fn constructed_c_is_exact() {
        for c in [rat(-1, 2), rat(8, 9), rat(1, 1), rat(4, 1)] {
            let prob = problem_with_c(&c, &rat(7, 2), &rat(5, 3), &rat(11, 7), 2);
            assert_eq!(prob.c_value(), c);
        }
    }
}
