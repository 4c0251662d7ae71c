//! The polynomials `p_k` appearing in the large-argument expansion of the
//! kernel: repeated differentiation of `m z^{m-1} e^{z^m}` gives
//! `d^{k-1}/dz^{k-1} (m z^{m-1} e^{z^m}) = p_k(z^m) z^{-k} e^{z^m}`,
//! with `p_0 = 1` and `p_{k+1}(x) = (m x - k) p_k(x) + m x p_k'(x)`.

use num_complex::Complex64;

/// Coefficients `[c_0, ..., c_k]` of the degree-`k` polynomial `p_k`.
///
/// Leading coefficient is `m^k`; the constant term vanishes for `k >= 1`,
/// and the linear coefficient is the falling product `m (m-1) ... (m-k+1)`.
pub fn p_polynomial(m: f64, k: u32) -> Vec<f64> {
    let mut c = vec![1.0];
    for step in 0..k {
        let kf = step as f64;
        let mut next = vec![0.0; c.len() + 1];
        for (j, slot) in next.iter_mut().enumerate() {
            let mut v = 0.0;
            if j >= 1 {
                v += m * c[j - 1];
            }
            if j < c.len() {
                v += (m * j as f64 - kf) * c[j];
            }
            *slot = v;
        }
        c = next;
    }
    c
}

/// Evaluates `p_k` (by its coefficient list) at a complex point.
pub fn eval_poly(coeffs: &[f64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn base_cases() {
        assert_eq!(p_polynomial(0.7, 0), vec![1.0]);
        // p_1(x) = m x
        let p1 = p_polynomial(0.7, 1);
        assert_eq!(p1.len(), 2);
        assert!(p1[0].abs() < 1e-15);
        assert!((p1[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn m_equal_one_collapses_to_power() {
        // For m = 1 the defining derivative is e^z itself, so p_k(x) = x^k.
        for k in 0..8 {
            let c = p_polynomial(1.0, k);
            for (j, &cj) in c.iter().enumerate() {
                let want = if j == k as usize { 1.0 } else { 0.0 };
                assert!((cj - want).abs() < 1e-12, "k={k}, j={j}: {cj}");
            }
        }
    }

    #[test]
    fn structure_invariants() {
        for &m in &[0.4, 0.5, 0.75, 1.0, 1.5, 2.5] {
            for k in 1..=6u32 {
                let c = p_polynomial(m, k);
                assert_eq!(c.len(), k as usize + 1, "degree");
                assert!((c[k as usize] - m.powi(k as i32)).abs() < 1e-10 * m.powi(k as i32).abs().max(1.0));
                assert!(c[0].abs() < 1e-12, "constant term must vanish");
                // linear coefficient = m (m-1) ... (m-k+1), the Gamma-ratio
                // reading of the falling factorial
                let falling: f64 = (0..k).map(|j| m - j as f64).product();
                assert!((c[1] - falling).abs() < 1e-10 * falling.abs().max(1.0));
            }
        }
    }

    /// Exact-rational recursion oracle, independent of the f64 path.
    fn p_poly_rational(m: &BigRational, k: u32) -> Vec<BigRational> {
        let zero = BigRational::from(BigInt::from(0));
        let mut c = vec![BigRational::from(BigInt::from(1))];
        for step in 0..k {
            let kf = BigRational::from(BigInt::from(step));
            let mut next = vec![zero.clone(); c.len() + 1];
            for j in 0..next.len() {
                let mut v = zero.clone();
                if j >= 1 {
                    v += m * &c[j - 1];
                }
                if j < c.len() {
                    v += (m * BigRational::from(BigInt::from(j)) - &kf) * &c[j];
                }
                next[j] = v;
            }
            c = next;
        }
        c
    }

    #[test]
    fn matches_rational_oracle_for_half() {
        // k = 3, m = 1/2: oracle expansion gives [0, 3/8, -3/8, 1/8]
        let m = BigRational::new(BigInt::from(1), BigInt::from(2));
        let exact = p_poly_rational(&m, 3);
        let approx = p_polynomial(0.5, 3);
        let want = [(0, 1), (3, 8), (-3, 8), (1, 8)];
        for (j, (num, den)) in want.iter().enumerate() {
            let w = BigRational::new(BigInt::from(*num), BigInt::from(*den));
            assert_eq!(exact[j], w, "exact coefficient {j}");
            let wf = *num as f64 / *den as f64;
            assert!((approx[j] - wf).abs() < 1e-15);
        }
        retest_all_orders(&m);
    }

    fn retest_all_orders(m: &BigRational) {
        use num_traits::ToPrimitive;
        let mf = m.to_f64().unwrap();
        for k in 0..=8u32 {
            let exact = p_poly_rational(m, k);
            let approx = p_polynomial(mf, k);
            for (e, a) in exact.iter().zip(approx.iter()) {
                let ef = e.to_f64().unwrap();
                assert!((a - ef).abs() <= 1e-12 * ef.abs().max(1.0));
            }
        }
    }
}
