//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GsnError {
    #[error("malformed rational `{0}` (expected e.g. `-3/2` or `7`)")]
    BadRational(String),

    #[error("polynomial degree {found} exceeds requested bound {bound}")]
    DegreeOverflow { found: usize, bound: usize },

    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },

    #[error("{0} requires a strictly positive recursion index")]
    RecurrenceBase(&'static str),

    #[error("parameter `{0}` must be invertible (non-zero)")]
    NotInvertible(&'static str),

    #[error("parameter `{name}` must be a positive integer, got {value}")]
    NotPositiveInteger { name: &'static str, value: String },

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("degree {degree} exceeds the configured guard {guard}")]
    DegreeGuard { degree: usize, guard: usize },

    #[error("non-integer value {value} at (p={p}, k={k}); b-files hold integer sequences")]
    NonIntegerValue { value: String, p: usize, k: usize },
}
