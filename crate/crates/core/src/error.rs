use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("covers induce a cycle through {0} and {1}")]
    CycleDetected(usize, usize),
    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("poset has {0} points, at most {max} are supported", max = crate::PointSet::CAPACITY)]
    TooManyPoints(usize),
    #[error("more than {0} downsets")]
    SizeLimitExceeded(usize),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("set is not downward closed")]
    NotDownClosed,
    #[error("downsets belong to different posets")]
    PosetMismatch,
    #[error("partition violates condition {condition}: {witness}")]
    PartitionInvalid { condition: u8, witness: String },
    #[error("not a P-morphism: {0}")]
    InvalidMorphism(String),
    #[error("P-morphism is not surjective")]
    NotSurjective,
    #[error("morphism is not injective")]
    NotInjective,
    #[error("morphisms do not share a codomain")]
    CodomainMismatch,
    #[error("not a valid co-Brouwerian semilattice: {0}")]
    InvalidAlgebra(String),
    #[error("not a CBS morphism: {0}")]
    InvalidCbsMorphism(String),
    #[error("element {0} is not join-irreducible")]
    NotJoinIrreducible(usize),
    #[error("dual morphism does not reproduce the input")]
    RoundTripFailure,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("not primitive ({reason}): {witness}")]
    NotPrimitive { reason: String, witness: String },
    #[error("extension is not minimal")]
    NotMinimal,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("parse error at {position}: expected {expected}")]
    ParseError { position: usize, expected: String },
    #[error("variable x{0} is unbound")]
    UnboundVariable(usize),
    #[error("free algebra on {0} generators is out of reach (at most 2)")]
    ArityTooLarge(usize),
    #[error("iteration cap of {0} reached")]
    IterationCap(usize),
}
