//! Type-1 and interval type-2 fuzzy inference systems.
//!
//! The crate covers the full path from membership functions to a crisp
//! output:
//!
//! * [`sets`] — two type-1 and three interval type-2 membership families.
//! * [`rules`] — rules, rule firing under product or minimum t-norms, and
//!   whole-system validation.
//! * [`reduce`] — EIASC type reduction with an exhaustive corner-enumeration
//!   oracle, plus Nie-Tan, BMM, and plain weighted-average defuzzification.
//! * [`analysis`] — input-space coverage, continuity prediction, control
//!   surface sampling, and parameter counting.
//! * [`tune`] — RMSE fitness and a seeded two-step particle-swarm pipeline
//!   that tunes a type-1 baseline and then grows footprints of uncertainty
//!   around it.
//!
//! The crate is `no_std`-compatible: disable the default `std` feature and
//! enable `libm` instead. An allocator is required either way.
//!
//! ```
//! use it2fls::{FuzzySet, FuzzySystem, InputDomain, Rule, Consequent};
//! use it2fls::{TNorm, Reducer, SystemKind};
//!
//! let negative = FuzzySet::gaussian_uncertain_std(-1.0, 0.5, 0.7).unwrap();
//! let positive = FuzzySet::gaussian_uncertain_std(1.0, 0.5, 0.7).unwrap();
//! let system = FuzzySystem {
//!     inputs: vec![InputDomain::new("x", -1.0, 1.0)],
//!     rules: vec![
//!         Rule { antecedents: vec![negative], consequent: Consequent::Constant(-1.0) },
//!         Rule { antecedents: vec![positive], consequent: Consequent::Constant(1.0) },
//!     ],
//!     t_norm: TNorm::Product,
//!     reducer: Reducer::EiascCenterOfSets,
//!     kind: SystemKind::It2,
//! };
//! let out = system.evaluate(&[0.25]).unwrap();
//! assert!(out.y_l <= out.y && out.y <= out.y_r);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("it2fls requires either the `std` feature or the `libm` feature");

mod math;

pub mod analysis;
pub mod reduce;
pub mod rules;
pub mod sets;
pub mod tune;

pub use analysis::{
    coverage_report, param_count, surface_sample, surface_slice, AxisCoverage, ContinuityClass,
    CoverageReport, JumpCandidate, ParamCount, SurfaceSample, SystemForm,
};
pub use reduce::{
    bmm, corner_oracle, eiasc, evaluate, nie_tan, t1_weighted_average, ReducedInterval,
    ReductionResult, ORACLE_MAX_RULES,
};
pub use rules::{
    Consequent, FiringInterval, FuzzySystem, InputDomain, Reducer, Rule, SystemKind, TNorm,
    ValidationReport, ValueInterval, Violation, Warning,
};
pub use sets::{
    FuzzySet, GaussianT1, GaussianUncertainMean, GaussianUncertainStd, MembershipInterval,
    SetError, TrapezoidIt2, TrapezoidT1,
};
pub use tune::{
    blur_to_it2, optimize_it2, optimize_t1, rmse, rmse_with_penalty, ConsequentKind, Dataset,
    FitnessReport, OptimizerConfig,
};

use alloc::vec::Vec;
use core::fmt;

/// Errors produced while building or running a fuzzy system.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A membership function was given invalid parameters.
    Set(SetError),
    /// A slice had the wrong length for the operation.
    DimensionMismatch { expected: usize, got: usize },
    /// A value that must be finite was NaN or infinite.
    NonFinite { what: &'static str, index: usize },
    /// A type-1 firing was requested for an interval type-2 antecedent.
    FamilyMismatch,
    /// A firing interval violated `0 <= lower <= upper <= 1`.
    BadFiringInterval,
    /// The system failed structural validation.
    InvalidSystem(Vec<Violation>),
    /// Every rule's upper firing degree is zero: the input lies outside the
    /// footprint of every rule and no output can be produced.
    AllZeroFiring,
    /// Too many rules for exhaustive corner enumeration.
    TooManyRules { count: usize, max: usize },
    /// A request was structurally impossible (bad axis choice, bad
    /// optimizer configuration, mismatched baseline, ...).
    BadRequest(&'static str),
    /// The dataset contains no rows.
    EmptyDataset,
    /// A dataset row had the wrong width or a non-finite value.
    BadDataRow { row: usize },
    /// Only Gaussian antecedents can be blurred by a nonzero delta.
    UnsupportedBlur,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Set(e) => write!(f, "invalid membership function: {e}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} values, got {got}")
            }
            Error::NonFinite { what, index } => write!(f, "{what} {index} is not finite"),
            Error::FamilyMismatch => {
                write!(
                    f,
                    "antecedent family does not match the requested firing mode"
                )
            }
            Error::BadFiringInterval => {
                write!(f, "firing interval must satisfy 0 <= lower <= upper <= 1")
            }
            Error::InvalidSystem(v) => {
                write!(f, "system failed validation with {} violation(s)", v.len())
            }
            Error::AllZeroFiring => write!(f, "no rule fires at this input"),
            Error::TooManyRules { count, max } => {
                write!(f, "{count} rules exceeds the enumeration limit of {max}")
            }
            Error::BadRequest(msg) => write!(f, "{msg}"),
            Error::EmptyDataset => write!(f, "dataset contains no rows"),
            Error::BadDataRow { row } => write!(f, "dataset row {row} is malformed"),
            Error::UnsupportedBlur => {
                write!(
                    f,
                    "only Gaussian antecedents can be blurred by a nonzero delta"
                )
            }
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::Set(e) => Some(e),
            _ => None,
        }
    }
}

impl From<SetError> for Error {
    fn from(e: SetError) -> Self {
        Error::Set(e)
    }
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
