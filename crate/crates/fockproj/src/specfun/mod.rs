//! Special-function kernel: log-Gamma, Gamma ratios, Mittag-Leffler
//! functions and their derivatives, and the expansion polynomials `p_k`.
//!
//! Everything here is pure and reentrant. Internal memoization (series
//! coefficient tables, calibrated remainder constants) is synchronized and
//! has no observable effect on results.

mod gamma;
mod ml;
mod ppoly;

pub use gamma::{gamma_pos, gamma_ratio, log_gamma};
pub use ml::{gen_mittag_leffler, mittag_leffler, ml_asymptotic_leading};
pub use ppoly::{eval_poly, p_polynomial};

pub(crate) use gamma::log_gamma_unchecked;
pub(crate) use ml::ml_log_abs;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Parameters of `E^{(deriv_order)}_{a,b}`. In the kernel application
/// `a = b = 1/m` and `deriv_order = n - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub a: f64,
    pub b: f64,
    pub deriv_order: u32,
}

impl MLParams {
    pub fn new(a: f64, b: f64, deriv_order: u32) -> Result<Self, SpecFunError> {
        let p = MLParams { a, b, deriv_order };
        p.validate()?;
        Ok(p)
    }

    /// The `E^{(n-1)}_{1/m,1/m}` family entering the reproducing kernel.
    pub fn kernel_family(m: f64, n: u32) -> Result<Self, SpecFunError> {
        if !(m > 0.0) {
            return Err(SpecFunError::Domain(format!("m must be positive, got {m}")));
        }
        if n == 0 {
            return Err(SpecFunError::Domain("dimension n must be at least 1".into()));
        }
        MLParams::new(1.0 / m, 1.0 / m, n - 1)
    }

    pub fn validate(&self) -> Result<(), SpecFunError> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(SpecFunError::Domain(format!(
                "first parameter must be positive, got {}",
                self.a
            )));
        }
        if !(self.b > 0.0) || !self.b.is_finite() {
            return Err(SpecFunError::Domain(format!(
                "second parameter must be positive, got {}",
                self.b
            )));
        }
        Ok(())
    }
}

/// Parameters of the four-parameter family `E^{gamma_p,delta_p}_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenMLParams {
    pub a: f64,
    pub b: f64,
    pub gamma_p: f64,
    pub delta_p: f64,
}

impl GenMLParams {
    pub fn new(a: f64, b: f64, gamma_p: f64, delta_p: f64) -> Result<Self, SpecFunError> {
        let p = GenMLParams { a, b, gamma_p, delta_p };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SpecFunError> {
        for (name, v) in [
            ("a", self.a),
            ("b", self.b),
            ("gamma", self.gamma_p),
            ("delta", self.delta_p),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(SpecFunError::Domain(format!(
                    "parameter {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    Series,
    AsymptoticPrincipal,
    AsymptoticMultiBranch,
    AlgebraicTail,
}

/// A certified function value. `ln_abs` duplicates `value.norm().ln()` but
/// stays finite when the linear-domain value overflows f64.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_error_est: f64,
    pub regime: Regime,
    pub ln_abs: f64,
}

/// A partial (uncertified) estimate attached to accuracy failures.
#[derive(Debug, Clone, Copy)]
pub struct PartialEstimate {
    pub value: Complex64,
    pub abs_error_est: f64,
}

#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("accuracy failure: {msg}")]
    AccuracyFailure {
        msg: String,
        series: Option<PartialEstimate>,
        asymptotic: Option<PartialEstimate>,
    },
    #[error("out of range: {0}")]
    OutOfRange(String),
}
