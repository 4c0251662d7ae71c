//! Least-squares fit of the borderline growth model
//! `L(k) = c_k k + a ln k + b + d/k` over a sweep window.

use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct FitCoefficients {
    /// Coefficient of `k`; cancels exactly on the borderline `c = 1`.
    pub k_coef: f64,
    /// Coefficient of `ln k`: the slope constant `a`.
    pub ln_k_coef: f64,
    pub const_coef: f64,
    /// Coefficient of `1/k`, absorbing the leading transient.
    pub inv_k_coef: f64,
}

/// Fits the four-basis model on `(k, L_k)` pairs. Columns are scaled to
/// unit maximum before the normal equations are solved, so the system stays
/// well conditioned for windows up to k ~ 2000.
pub fn fit_growth_model(ks: &[u64], ls: &[f64]) -> FitCoefficients {
    assert!(ks.len() == ls.len() && ks.len() >= 4, "window too small to fit");
    let n = ks.len();
    let mut basis = vec![[0.0f64; 4]; n];
    for (row, &k) in basis.iter_mut().zip(ks.iter()) {
        let kf = k as f64;
        *row = [kf, kf.ln(), 1.0, 1.0 / kf];
    }
    let mut scale = [0.0f64; 4];
    for row in &basis {
        for (s, v) in scale.iter_mut().zip(row.iter()) {
            *s = s.max(v.abs());
        }
    }
    for s in scale.iter_mut() {
        if *s == 0.0 {
            *s = 1.0;
        }
    }
    // normal equations in the scaled basis
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [0.0f64; 4];
    for (row, &l) in basis.iter().zip(ls.iter()) {
        let scaled: [f64; 4] = std::array::from_fn(|j| row[j] / scale[j]);
        for i in 0..4 {
            atb[i] += scaled[i] * l;
            for j in 0..4 {
                ata[i][j] += scaled[i] * scaled[j];
            }
        }
    }
    let sol = solve4(&mut ata, &mut atb);
    FitCoefficients {
        k_coef: sol[0] / scale[0],
        ln_k_coef: sol[1] / scale[1],
        const_coef: sol[2] / scale[2],
        inv_k_coef: sol[3] / scale[3],
    }
}

fn solve4(a: &mut [[f64; 4]; 4], b: &mut [f64; 4]) -> [f64; 4] {
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        let d = a[col][col];
        assert!(d.abs() > 1e-300, "singular normal equations");
        for row in (col + 1)..4 {
            let f = a[row][col] / d;
            for j in col..4 {
                a[row][j] -= f * a[col][j];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 4];
    for row in (0..4).rev() {
        let mut acc = b[row];
        for j in (row + 1)..4 {
            acc -= a[row][j] * x[j];
        }
        x[row] = acc / a[row][row];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_model() {
        let ks: Vec<u64> = (100..=400).step_by(3).collect();
        let ls: Vec<f64> = ks
            .iter()
            .map(|&k| {
                let kf = k as f64;
                0.002 * kf + 0.125 * kf.ln() - 3.0 + 7.0 / kf
            })
            .collect();
        let fit = fit_growth_model(&ks, &ls);
        assert!((fit.k_coef - 0.002).abs() < 1e-10);
        assert!((fit.ln_k_coef - 0.125).abs() < 1e-7);
        assert!((fit.const_coef + 3.0).abs() < 1e-6);
        assert!((fit.inv_k_coef - 7.0).abs() < 1e-4);
    }

    #[test]
    fn pure_log_growth() {
        let ks: Vec<u64> = (50..=200).collect();
        let ls: Vec<f64> = ks.iter().map(|&k| -0.25 * (k as f64).ln() + 1.5).collect();
        let fit = fit_growth_model(&ks, &ls);
        assert!(fit.k_coef.abs() < 1e-12);
        assert!((fit.ln_k_coef + 0.25).abs() < 1e-8);
    }
}
