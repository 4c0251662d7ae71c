//! Numerical reproduction of the asymptotic and necessity arguments:
//! monomial growth curves, borderline log-slope fits, the normalized Gamma
//! growth limit, and envelope-convergence suites for the radial moments,
//! kernel sphere averages and the mapping-bound integral.
//!
//! Everything is deterministic: identical configurations produce
//! bit-identical reports, and the suite grids are fixed. Grid points are
//! evaluated through a parallel map with ordered reduction.

mod fit;
mod grids;
mod suites;
mod sweep;

pub use fit::{fit_growth_model, FitCoefficients};
pub use grids::{classification_grid, concordance_grid, problem_with_c};
pub use suites::{
    eq14_suite, eq27_suite, lemma15_suite, lemma8_suite, prop10_suite, prop12_suite, run_suites,
    schur_suite, stirling_suite, Assertion, SuiteId, SuiteOptions, SuiteReport, Table,
};
pub use sweep::{
    eq14_ratio_curve, prop10_slope_experiment, prop12_slope_experiment, stirling_limit_check,
    LambdaRule, NuFamily, SweepConfig, SweepReport,
};

use thiserror::Error;

use crate::boundedness::BoundednessError;
use crate::fockspace::FockError;
use crate::specfun::SpecFunError;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("integrability violated: {0}")]
    Integrability(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cancellation failure: {0}")]
    CancellationFailure(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Boundedness(#[from] BoundednessError),
}
