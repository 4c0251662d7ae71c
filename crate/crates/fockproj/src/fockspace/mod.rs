//! Fock-space geometry for the weights `exp(-alpha |z|^(2m))` on C^n:
//! monomial norms, sphere integrals, the reproducing kernel (series route
//! and Mittag-Leffler route), projections of radial-monomial functions, and
//! the weighted radial integrals whose envelopes drive the boundedness
//! analysis.
//!
//! Quantities that grow like `exp(beta |y|^(2m))` are exposed in log space;
//! the linear-domain accessors overflow to `inf` gracefully.

mod integrals;
mod kernel;
mod norms;
mod project;

pub use integrals::{
    kernel_sphere_average, ml_circle_integral_ln, radial_moment, weighted_kernel_integral,
    EnvelopedValue,
};
pub use kernel::{
    kernel_abs_ln, kernel_envelope, kernel_envelope_ln, kernel_ml, kernel_series,
};
pub use norms::{
    monomial_norm_p, monomial_norm_p_ln, monomial_norm_sq, monomial_norm_sq_ln,
    sphere_monomial_integral, weight_mass_ln,
};
pub use project::project_radial_monomial;

use num_complex::Complex64;
use thiserror::Error;

use crate::quad::QuadError;
use crate::specfun::SpecFunError;

#[derive(Debug, Error)]
pub enum FockError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// The space `L^p_{alpha,m}(C^n)` data: weight `exp(-alpha |z|^(2m))` in
/// complex dimension `n`. `alpha` may be any real here; operations that
/// need a finite weight mass check `alpha > 0` themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceParams {
    pub alpha: f64,
    pub m: f64,
    pub n: u32,
}

impl SpaceParams {
    pub fn new(alpha: f64, m: f64, n: u32) -> Result<Self, FockError> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(FockError::InvalidParams(format!(
                "weight exponent m must be positive, got {m}"
            )));
        }
        if n == 0 {
            return Err(FockError::InvalidParams("dimension n must be at least 1".into()));
        }
        if !alpha.is_finite() {
            return Err(FockError::InvalidParams(format!("alpha must be finite, got {alpha}")));
        }
        Ok(SpaceParams { alpha, m, n })
    }

    pub(crate) fn require_positive_alpha(&self) -> Result<(), FockError> {
        if self.alpha > 0.0 {
            Ok(())
        } else {
            Err(FockError::Domain(format!(
                "alpha must be positive for norms of nonzero holomorphic functions, got {}",
                self.alpha
            )))
        }
    }
}

/// Integer exponents for monomials; nonnegative reals are allowed for
/// sphere integrals only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMode {
    Integer,
    RealNonneg,
}

/// Multiindex `nu = (nu_1, ..., nu_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiIndex {
    exponents: Vec<f64>,
    mode: IndexMode,
}

impl MultiIndex {
    pub fn integer(exponents: &[u64]) -> Self {
        MultiIndex {
            exponents: exponents.iter().map(|&e| e as f64).collect(),
            mode: IndexMode::Integer,
        }
    }

    /// Single-axis index `(k, 0, ..., 0)` in dimension `n`.
    pub fn single_axis(k: u64, n: u32) -> Self {
        let mut e = vec![0u64; n as usize];
        e[0] = k;
        MultiIndex::integer(&e)
    }

    /// Diagonal index `(k, ..., k)` in dimension `n`.
    pub fn diagonal(k: u64, n: u32) -> Self {
        MultiIndex::integer(&vec![k; n as usize])
    }

    pub fn real_nonneg(exponents: &[f64]) -> Result<Self, FockError> {
        if exponents.iter().any(|&e| !(e >= 0.0) || !e.is_finite()) {
            return Err(FockError::InvalidParams(
                "multiindex entries must be nonnegative and finite".into(),
            ));
        }
        Ok(MultiIndex {
            exponents: exponents.to_vec(),
            mode: IndexMode::RealNonneg,
        })
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn mode(&self) -> IndexMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// `|nu| = nu_1 + ... + nu_n`.
    pub fn order(&self) -> f64 {
        self.exponents.iter().sum()
    }

    pub(crate) fn check_dim(&self, n: u32) -> Result<(), FockError> {
        if self.dim() != n as usize {
            return Err(FockError::DimensionMismatch(format!(
                "multiindex has {} entries but the space dimension is {}",
                self.dim(),
                n
            )));
        }
        Ok(())
    }

    pub(crate) fn require_integer(&self) -> Result<(), FockError> {
        match self.mode {
            IndexMode::Integer => Ok(()),
            IndexMode::RealNonneg => Err(FockError::InvalidParams(
                "operation requires an integer multiindex".into(),
            )),
        }
    }
}

/// A pair of points of C^n with the inner product
/// `<x, y> = sum_j x_j conj(y_j)` (holomorphic in x, anti-holomorphic in y).
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPoint {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
}

impl KernelPoint {
    pub fn new(x: Vec<Complex64>, y: Vec<Complex64>) -> Result<Self, FockError> {
        if x.len() != y.len() || x.is_empty() {
            return Err(FockError::DimensionMismatch(format!(
                "points must have equal positive dimension, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        Ok(KernelPoint { x, y })
    }

    pub fn inner(&self) -> Complex64 {
        self.x.iter().zip(&self.y).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn norm_x(&self) -> f64 {
        self.x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_y(&self) -> f64 {
        self.y.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub(crate) fn check_dim(&self, n: u32) -> Result<(), FockError> {
        if self.x.len() != n as usize {
            return Err(FockError::DimensionMismatch(format!(
                "points have dimension {} but the space dimension is {}",
                self.x.len(),
                n
            )));
        }
        Ok(())
    }
}

/// Radial-monomial test function
/// `f(z) = z^nu |z|^a exp(b |z|^m + c |z|^(2m))`.
///
/// The projection acts on such functions by a scalar multiple of `w^nu`;
/// membership in the domain of the projection integral requires `c` to stay
/// strictly below the weight coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialMonomial {
    pub nu: MultiIndex,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub m: f64,
}

impl RadialMonomial {
    pub fn new(nu: MultiIndex, a: f64, b: f64, c: f64, m: f64) -> Result<Self, FockError> {
        nu.require_integer()?;
        if !(a >= 0.0) {
            return Err(FockError::InvalidParams(format!(
                "radial power a must be nonnegative, got {a}"
            )));
        }
        if !(m > 0.0) {
            return Err(FockError::InvalidParams(format!("m must be positive, got {m}")));
        }
        Ok(RadialMonomial { nu, a, b, c, m })
    }

    /// The borderline-family member `z^nu exp(lambda |z|^(2m))`.
    pub fn gaussian_scaled(nu: MultiIndex, lambda: f64, m: f64) -> Result<Self, FockError> {
        RadialMonomial::new(nu, 0.0, 0.0, lambda, m)
    }
}
