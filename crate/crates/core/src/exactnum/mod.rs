//! Exact arithmetic in cyclotomic fields Q(ζ_M).
//!
//! Every structure constant, involution sign and ad-eigenvalue that occurs in
//! the classical constructions lies in Q(ζ_M) for a suitable M, so a model
//! carries one such field and all linear algebra happens there.

mod cyclotomic;
mod poly;

use thiserror::Error;

pub use cyclotomic::{common_order, format_rational, parse_rational, Cyclotomic, CyclotomicRepr};
pub use poly::{cyclotomic_polynomial, euler_phi};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Largest supported cyclotomic order. Field tables are dense in φ(M), so
/// untrusted input must not pick M freely.
pub const MAX_ORDER: u64 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("cyclotomic order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u64),
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    BadEmbedding { from: u64, to: u64 },
    #[error("malformed rational {0:?}")]
    ParseRational(String),
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
}
