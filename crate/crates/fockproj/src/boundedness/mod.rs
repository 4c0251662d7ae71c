//! The decision core for boundedness of the projection
//! `P_{beta,m}: L^p_{alpha,m} -> L^q_{gamma,m}`.
//!
//! Everything is computed in exact rational arithmetic, because the
//! classification is discontinuous exactly at the borderline `c = 1` of the
//! critical ratio `c = q_max / q`, `q_max = (4 gamma / beta^2)(beta - alpha/p)`.
//! Inputs that arrive as floats are flagged and classified with a documented
//! tolerance band `|c - 1| <= 1e-12` mapped to the borderline branch.
//!
//! The decision tree:
//!
//! - `c > 1`: bounded (sufficiency).
//! - `c < 1`: unbounded (necessity; includes `q_max <= 0`).
//! - `c = 1, p = q`: bounded (diagonal borderline).
//! - `c = 1, p < q`: bounded for `m <= 1`; unbounded for `m > 2n/(2n-1)`;
//!   open in between.
//! - `c = 1, p > q`: unbounded for `m < 2`; open for `m >= 2`.

mod schur;

pub use schur::{schur_feasibility, SchurConstraint, SchurWitness};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error)]
pub enum BoundednessError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a rational from `a/b`, integer, or decimal syntax. Decimal
/// strings (including exponent notation) are exact in base 10 and convert
/// losslessly.
pub fn parse_rational(s: &str) -> Result<Rational, BoundednessError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(BoundednessError::Parse(s.into()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| BoundednessError::Parse(s.into()))?;
        let d: BigInt = den.trim().parse().map_err(|_| BoundednessError::Parse(s.into()))?;
        if d.is_zero() {
            return Err(BoundednessError::Parse(s.into()));
        }
        return Ok(Rational::new(n, d));
    }
    // decimal with optional exponent
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e.parse().map_err(|_| BoundednessError::Parse(s.into()))?;
            (m, exp)
        }
        None => (t, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.contains(['+', '-']) {
        return Err(BoundednessError::Parse(s.into()));
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() || int_part == "-" || int_part == "+" {
            format!("{int_part}0")
        } else {
            int_part.to_string()
        },
        frac_part
    );
    let n: BigInt = digits.parse().map_err(|_| BoundednessError::Parse(s.into()))?;
    let shift = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Rational::new(n, ten.pow(shift as u32))
    } else {
        Rational::from(n * ten.pow((-shift) as u32))
    };
    Ok(value)
}

/// The full boundedness question instance. `alpha` may be negative;
/// `beta, gamma > 0`, `p, q >= 1`, `m > 0`, `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionProblem {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub p: Rational,
    pub q: Rational,
    pub m: Rational,
    pub n: u32,
    /// Set when the inputs were converted from floats rather than given as
    /// exact rationals; enables the borderline tolerance band.
    pub approx_inputs: bool,
}

impl ProjectionProblem {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
        p: Rational,
        q: Rational,
        m: Rational,
        n: u32,
    ) -> Result<Self, BoundednessError> {
        let prob = ProjectionProblem {
            alpha,
            beta,
            gamma,
            p,
            q,
            m,
            n,
            approx_inputs: false,
        };
        prob.validate()?;
        Ok(prob)
    }

    /// Builds a problem from floats; the result carries the
    /// `approx_inputs` flag and the borderline is decided with a
    /// `|c - 1| <= 1e-12` tolerance band.
    #[allow(clippy::too_many_arguments)]
    pub fn from_f64(
        alpha: f64,
        beta: f64,
        gamma: f64,
        p: f64,
        q: f64,
        m: f64,
        n: u32,
    ) -> Result<Self, BoundednessError> {
        let conv = |v: f64, name: &str| {
            Rational::from_f64(v)
                .ok_or_else(|| BoundednessError::InvalidProblem(format!("{name} = {v} is not finite")))
        };
        let mut prob = ProjectionProblem::new(
            conv(alpha, "alpha")?,
            conv(beta, "beta")?,
            conv(gamma, "gamma")?,
            conv(p, "p")?,
            conv(q, "q")?,
            conv(m, "m")?,
            n,
        )?;
        prob.approx_inputs = true;
        Ok(prob)
    }

    fn validate(&self) -> Result<(), BoundednessError> {
        if !self.beta.is_positive() {
            return Err(BoundednessError::InvalidProblem(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if !self.gamma.is_positive() {
            return Err(BoundednessError::InvalidProblem(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        let one = Rational::one();
        if self.p < one || self.q < one {
            return Err(BoundednessError::InvalidProblem(format!(
                "p and q must be at least 1, got p = {}, q = {}",
                self.p, self.q
            )));
        }
        if !self.m.is_positive() {
            return Err(BoundednessError::InvalidProblem(format!(
                "m must be positive, got {}",
                self.m
            )));
        }
        if self.n == 0 {
            return Err(BoundednessError::InvalidProblem("n must be at least 1".into()));
        }
        Ok(())
    }

    /// `q_max = (4 gamma / beta^2)(beta - alpha/p)`; may be nonpositive,
    /// which forces unboundedness for every `q >= 1`.
    pub fn q_max(&self) -> Rational {
        q_max(&self.alpha, &self.beta, &self.gamma, &self.p)
    }

    /// Critical ratio `c = q_max / q`.
    pub fn c_value(&self) -> Rational {
        self.q_max() / &self.q
    }

    /// Minimizer `t_min = (beta^2 / 2 gamma) q - beta + alpha/p` of the
    /// necessity quadratic.
    pub fn t_min(&self) -> Rational {
        &self.beta * &self.beta * &self.q / (rat(2, 1) * &self.gamma) - &self.beta
            + &self.alpha / &self.p
    }

    /// The necessity quadratic `-(beta^2/gamma) q t + (beta - alpha/p + t)^2`.
    ///
    /// Nonnegative for all `t > 0` iff `q <= q_max`; at `t = t_min` it
    /// equals `(beta - alpha/p)^2 - t_min^2`, which vanishes exactly at
    /// `c = 1`.
    pub fn necessity_lhs(&self, t: &Rational) -> Rational {
        let lin = &self.beta - &self.alpha / &self.p + t;
        -(&self.beta * &self.beta / &self.gamma) * &self.q * t + &lin * &lin
    }

    /// Slope constant `a = (m-2) n (q-p) / (2 m p q)` of the borderline
    /// log-growth relation; requires `c = 1` exactly.
    pub fn slope_constant(&self) -> Result<Rational, BoundednessError> {
        if self.c_value() != Rational::one() {
            return Err(BoundednessError::Precondition(format!(
                "slope constant is defined on the borderline c = 1; got c = {}",
                self.c_value()
            )));
        }
        Ok(self.slope_constant_unchecked())
    }

    pub(crate) fn slope_constant_unchecked(&self) -> Rational {
        let n = Rational::from(BigInt::from(self.n));
        (&self.m - rat(2, 1)) * n * (&self.q - &self.p)
            / (rat(2, 1) * &self.m * &self.p * &self.q)
    }

    /// Maps to the canonical triple `alpha' = (1 - c/4) p`, `beta' = 1`,
    /// `gamma' = q`; preserves `c` (hence the classification) exactly, and
    /// leaves `p, q, m, n` unchanged.
    pub fn canonicalize(&self) -> ProjectionProblem {
        let c = self.c_value();
        let alpha = (Rational::one() - c / rat(4, 1)) * &self.p;
        ProjectionProblem {
            alpha,
            beta: Rational::one(),
            gamma: self.q.clone(),
            p: self.p.clone(),
            q: self.q.clone(),
            m: self.m.clone(),
            n: self.n,
            approx_inputs: self.approx_inputs,
        }
    }

    /// Full classification per the decision tree in the module docs.
    pub fn classify(&self) -> Classification {
        let c = self.c_value();
        let q_max = self.q_max();
        let one = Rational::one();
        let mut warnings = Vec::new();
        let c_ord = if self.approx_inputs && c != one {
            let dev = (c.to_f64().unwrap_or(f64::INFINITY) - 1.0).abs();
            if dev <= 1e-12 {
                warnings.push(format!(
                    "inputs are approximate and c is within {dev:.2e} of 1; classified on the borderline branch"
                ));
                Ordering::Equal
            } else {
                c.cmp(&one)
            }
        } else {
            c.cmp(&one)
        };
        let (verdict, justification) = match c_ord {
            Ordering::Greater => (Verdict::Bounded, Justification::Prop9CGt1),
            Ordering::Less => (Verdict::Unbounded, Justification::Prop7CLt1),
            Ordering::Equal => match self.p.cmp(&self.q) {
                Ordering::Equal => (Verdict::Bounded, Justification::Prop16PEqQ),
                Ordering::Greater => {
                    if self.m < rat(2, 1) {
                        (Verdict::Unbounded, Justification::Cor11MLt2PGtQ)
                    } else {
                        (Verdict::Unknown, Justification::OpenCaseB)
                    }
                }
                Ordering::Less => {
                    let threshold = open_case_threshold(self.n);
                    if self.m <= one {
                        (Verdict::Bounded, Justification::Thm1MLe1PLeQ)
                    } else if self.m > threshold {
                        (Verdict::Unbounded, Justification::Cor13MGtThreshPLtQ)
                    } else {
                        (Verdict::Unknown, Justification::OpenCaseA)
                    }
                }
            },
        };
        Classification {
            verdict,
            justification,
            c_value: c,
            q_max_value: q_max,
            warnings,
        }
    }

    /// View of the parameters as f64, for the numerical experiment layer.
    pub fn to_f64(&self) -> ProblemView {
        ProblemView {
            alpha: self.alpha.to_f64().unwrap(),
            beta: self.beta.to_f64().unwrap(),
            gamma: self.gamma.to_f64().unwrap(),
            p: self.p.to_f64().unwrap(),
            q: self.q.to_f64().unwrap(),
            m: self.m.to_f64().unwrap(),
            n: self.n,
        }
    }
}

impl fmt::Display for ProjectionProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(alpha={}, beta={}, gamma={}, p={}, q={}, m={}, n={})",
            self.alpha, self.beta, self.gamma, self.p, self.q, self.m, self.n
        )
    }
}

/// f64 snapshot of the problem parameters.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProblemView {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub p: f64,
    pub q: f64,
    pub m: f64,
    pub n: u32,
}

/// `q_max(alpha, beta, gamma, p) = (4 gamma / beta^2)(beta - alpha/p)`.
pub fn q_max(alpha: &Rational, beta: &Rational, gamma: &Rational, p: &Rational) -> Rational {
    rat(4, 1) * gamma / (beta * beta) * (beta - alpha / p)
}

/// `2n/(2n-1)`, the dimension-dependent threshold of the open region.
pub fn open_case_threshold(n: u32) -> Rational {
    rat(2 * n as i64, 2 * n as i64 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Bounded,
    Unbounded,
    Unknown,
}

/// The governing result behind a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Justification {
    #[serde(rename = "Prop7_cLt1")]
    Prop7CLt1,
    #[serde(rename = "Prop9_cGt1")]
    Prop9CGt1,
    #[serde(rename = "Prop16_pEqQ")]
    Prop16PEqQ,
    #[serde(rename = "Thm1_mLe1_pLeQ")]
    Thm1MLe1PLeQ,
    #[serde(rename = "Cor11_mLt2_pGtQ")]
    Cor11MLt2PGtQ,
    #[serde(rename = "Cor13_mGtThresh_pLtQ")]
    Cor13MGtThreshPLtQ,
    #[serde(rename = "OpenCase_A")]
    OpenCaseA,
    #[serde(rename = "OpenCase_B")]
    OpenCaseB,
}

impl Justification {
    /// Human-readable citation of the governing result.
    pub fn citation(&self) -> &'static str {
        match self {
            Justification::Prop7CLt1 => "Proposition 7 (necessity: unbounded for c < 1)",
            Justification::Prop9CGt1 => "Proposition 9 (sufficiency: bounded for c > 1)",
            Justification::Prop16PEqQ => "Proposition 16 (borderline diagonal: c = 1, p = q)",
            Justification::Thm1MLe1PLeQ => "Theorem 1 (m <= 1: bounded at c = 1, p <= q)",
            Justification::Cor11MLt2PGtQ => "Corollary 11 (c = 1, p > q unbounded for m < 2)",
            Justification::Cor13MGtThreshPLtQ => {
                "Corollary 13 (c = 1, p < q unbounded for m > 2n/(2n-1))"
            }
            Justification::OpenCaseA => "open case (c = 1, p < q, 1 < m <= 2n/(2n-1))",
            Justification::OpenCaseB => "open case (c = 1, p > q, m >= 2)",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub verdict: Verdict,
    pub justification: Justification,
    pub c_value: Rational,
    pub q_max_value: Rational,
    pub warnings: Vec<String>,
}

/// The four mutually exclusive boundedness patterns at fixed `(m, n)`:
/// on the borderline `c = 1` the projection is bounded exactly on the
/// diagonal (`A`), below it (`C`), above it (`B`), or everywhere (`D`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TaxCase {
    A,
    B,
    C,
    D,
}

/// What is known about the borderline pattern for a given `(m, n)`.
/// `D` is never reported as known (it is ruled out).
#[derive(Debug, Clone, Serialize)]
pub struct TaxonomyCase {
    pub known: bool,
    pub case: Option<TaxCase>,
    /// Conjectured candidates when unknown; never asserted.
    pub candidates: Vec<TaxCase>,
}

/// Borderline taxonomy by `(m, n)`: known `B` for `m <= 1`, known `A` for
/// `2n/(2n-1) < m < 2`; conjectured `A` for `1 < m <= 2n/(2n-1)` and `C`
/// for `m >= 2`.
pub fn taxonomy(m: &Rational, n: u32) -> Result<TaxonomyCase, BoundednessError> {
    if !m.is_positive() {
        return Err(BoundednessError::InvalidProblem(format!(
            "m must be positive, got {m}"
        )));
    }
    if n == 0 {
        return Err(BoundednessError::InvalidProblem("n must be at least 1".into()));
    }
    let one = Rational::one();
    let two = rat(2, 1);
    let threshold = open_case_threshold(n);
    let case = if *m <= one {
        TaxonomyCase {
            known: true,
            case: Some(TaxCase::B),
            candidates: vec![],
        }
    } else if *m > threshold && *m < two {
        TaxonomyCase {
            known: true,
            case: Some(TaxCase::A),
            candidates: vec![],
        }
    } else if *m >= two {
        TaxonomyCase {
            known: false,
            case: None,
            candidates: vec![TaxCase::C],
        }
    } else {
        TaxonomyCase {
            known: false,
            case: None,
            candidates: vec![TaxCase::A],
        }
    };
    Ok(case)
}
