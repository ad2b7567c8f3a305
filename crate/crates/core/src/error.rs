use thiserror::Error;

use crate::z2lin::Signature;

/// Errors produced by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension n = {n} is out of range (allowed {min}..={max})")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("{operation} is limited to n <= {max} (got n = {n})")]
    GuardExceeded {
        operation: &'static str,
        n: usize,
        max: usize,
    },

    #[error("signature {0} needs n = p + q >= 3")]
    SignatureTooSmall(Signature),

    #[error("signature {0} has q = 0; the even subalgebra embedding needs q > 0")]
    NoNegativeGenerator(Signature),

    #[error("value {bits:#b} does not fit in {n} coordinates")]
    ValueOutOfRange { bits: u32, n: usize },

    #[error("generator images are linearly dependent over Z2")]
    DependentImages,

    #[error("the supplied twisting does not admit the supplied cubic form as generating function")]
    NotGenerating,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("lemma {lemma} does not apply to signature {signature}")]
    HypothesesNotMet {
        lemma: &'static str,
        signature: Signature,
    },

    #[error("lemma {lemma}: no arrangement of {signature} reaches {target}")]
    LemmaUnreachable {
        lemma: &'static str,
        signature: Signature,
        target: Signature,
    },

    #[error("witness {src} -> {dst} does not transport the cubic forms")]
    InvalidWitness { src: Signature, dst: Signature },

    #[error("sign map fails the homomorphism identity at x = {x:#b}, y = {y:#b}")]
    HomomorphismViolation { x: u32, y: u32 },

    #[error("signatures {src} and {dst} have different dimensions")]
    UnequalDimensions { src: Signature, dst: Signature },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
