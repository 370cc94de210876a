//! Error type shared across the pipeline.

use std::fmt;

/// Everything that can go wrong outside of ordinary `io`/JSON plumbing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A candidate partition violates monotonicity; carries the violating pair
    /// of index tuples (smaller, larger) with their values.
    NonMonotone {
        lower: Vec<u32>,
        upper: Vec<u32>,
        lower_value: u32,
        upper_value: u32,
    },
    /// A candidate partition has a zero or negative entry at the given tuple.
    NonPositiveEntry { index: Vec<u32> },
    /// An index tuple has the wrong number of coordinates.
    IndexArity { expected: usize, got: usize },
    /// The same index tuple appears twice in a raw support map.
    DuplicateIndex { index: Vec<u32> },
    /// An exact enumeration would exceed the configured budget.
    BudgetExceeded { required: u128, budget: u128 },
    /// No points of the stratum exist over the requested field.
    NoPoints { q: u64 },
    /// Matrices handed to the partition-recovery routine do not commute.
    NotCommuting { r: usize, s: usize },
    /// Series operation on a series whose constant term is not 1.
    NonUnitConstantTerm,
    /// Series operands with different truncation orders were mixed.
    TruncationMismatch { left: usize, right: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonMonotone {
                lower,
                upper,
                lower_value,
                upper_value,
            } => write!(
                f,
                "not monotone: lambda{:?} = {} < {} = lambda{:?} although {:?} <= {:?}",
                lower, lower_value, upper_value, upper, lower, upper
            ),
            Error::NonPositiveEntry { index } => {
                write!(f, "entry at {:?} must be a positive integer", index)
            }
            Error::IndexArity { expected, got } => {
                write!(f, "index tuple has {} coordinates, expected {}", got, expected)
            }
            Error::DuplicateIndex { index } => {
                write!(f, "index tuple {:?} appears more than once", index)
            }
            Error::BudgetExceeded { required, budget } => write!(
                f,
                "enumeration of {} assignments exceeds budget {}",
                required, budget
            ),
            Error::NoPoints { q } => write!(f, "stratum has no points over F_{}", q),
            Error::NotCommuting { r, s } => {
                write!(f, "matrices T_{} and T_{} do not commute", r, s)
            }
            Error::NonUnitConstantTerm => write!(f, "series constant term must be 1"),
            Error::TruncationMismatch { left, right } => write!(
                f,
                "mixed truncation orders {} and {}; re-truncate explicitly",
                left, right
            ),
        }
    }
}

impl std::error::Error for Error {}
