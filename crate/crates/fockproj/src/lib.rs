//! Numerics for Fock-type spaces on C^n with generalized Gaussian weights
//! `exp(-alpha |z|^(2m))`, `m > 0`.
//!
//! The crate has four layers:
//!
//! - [`specfun`]: log-Gamma, Gamma ratios, the Mittag-Leffler function
//!   `E_{a,b}` and its derivatives (power series plus large-argument
//!   asymptotics), and the auxiliary polynomials driving the asymptotic
//!   expansion of the kernel.
//! - [`fockspace`]: monomial norms, sphere integrals, the reproducing
//!   kernel `K_{alpha,m}` (two independent evaluation routes), projection
//!   of radial-monomial test functions, and the semi-infinite weighted
//!   integrals whose growth envelopes drive the boundedness analysis.
//! - [`boundedness`]: the exact-rational decision core. Given
//!   `(alpha, beta, gamma, p, q, m, n)` it computes the critical exponent
//!   `q_max`, the ratio `c = q_max / q`, and classifies whether the
//!   projection `P_{beta,m}: L^p_{alpha,m} -> L^q_{gamma,m}` is bounded,
//!   unbounded, or open.
//! - [`experiments`]: desk-scale numerical reproductions of the asymptotic
//!   arguments (monomial growth curves, log-slope fits, envelope
//!   convergence suites) packaged as deterministic verification suites.
//!
//! All floating-point operations are pure and reentrant; internal
//! memoization is synchronized and semantically invisible. Semi-infinite
//! integrals and large-degree norms are handled in log space, so sweeps up
//! to degree ~2000 produce finite reported values.

pub mod boundedness;
pub mod experiments;
pub mod fockspace;
pub mod quad;
pub mod specfun;

pub use boundedness::{Classification, Justification, ProjectionProblem, Verdict};
pub use fockspace::{KernelPoint, MultiIndex, RadialMonomial, SpaceParams};
pub use specfun::{EvalResult, GenMLParams, MLParams, Regime};
