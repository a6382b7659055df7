//! Algebraic list decoders for q-ary Reed-Muller and Product-Reed-Solomon codes.
//!
//! The library is organized around two decoding strategies:
//!
//! - lifting an RM codeword into a Reed-Solomon code over the extension field
//!   GF(q^m) via a basis isomorphism and list decoding it with Guruswami-Sudan
//!   ([`rm_codec::rm_list_decode_pw`]);
//! - decoding the tensor structure of a product code recursively, one axis at
//!   a time, with a nearest-in-list RS decoder per line
//!   ([`prs_codec::prs_decode_recursive`]).
//!
//! [`analysis`] holds the closed-form error-correction radii of both decoders
//! and a rate-region study of where each dominates; [`simulator`] is a seeded
//! channel harness that checks the guarantees empirically.

pub mod analysis;
pub mod galois;
pub mod io;
pub mod linalg;
pub mod polynomial;
pub mod prs_codec;
pub mod rm_codec;
pub mod rs_codec;
pub mod simulator;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u64> },
    #[error("modulus coefficient {0} is not a GF({1}) element")]
    BadModulusCoefficient(u64, u64),
    #[error("modulus is reducible (divisible by {0:?})")]
    ReducibleModulus(Vec<u64>),
    #[error("field order {0} exceeds the supported limit {1}")]
    FieldTooLarge(u64, u64),
    #[error("elements belong to different field contexts")]
    CtxMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {0} is not an element of a field of order {1}")]
    ElemOutOfRange(u64, u64),
    #[error("basis is linearly dependent over the base field (singular matrix)")]
    SingularBasis,
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("degree {got} exceeds maximum {max}")]
    DegreeOverflow { got: usize, max: usize },
    #[error("duplicate x-coordinate in interpolation points")]
    DuplicateX,
    #[error("decoding radius {tau} unachievable for n={n}, w={w}")]
    RadiusUnachievable { tau: usize, n: usize, w: usize },
    #[error("word is not a codeword")]
    NotACodeword,
    #[error("extension map inconsistency: component outside the embedded base field")]
    CorruptExtension,
    #[error("enumeration budget exceeded ({0} points)")]
    BudgetExceeded(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible pattern constraint: {0}")]
    InfeasibleConstraint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Floor of the integer square root.
pub(crate) fn isqrt(n: u64) -> u64 {
    n.isqrt()
}
