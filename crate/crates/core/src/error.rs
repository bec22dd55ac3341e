//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by root-system construction and character operations.
///
/// `Parse` covers malformed input strings and JSON; everything else is a
/// domain error on well-formed input. The CLI maps the two classes to
/// different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not finite type: {0}")]
    NotFiniteType(String),
    #[error("operands belong to different root systems")]
    MismatchedRootSystems,
    #[error("enumeration cap {cap} exceeded while generating the Weyl group")]
    CapExceeded { cap: usize },
    #[error("{0} is not a positive root of this system")]
    NotPositiveRoot(String),
    #[error("weight is not dominant integral with zero torsion; use simple_character for general weights")]
    NotDominantIntegral,
    #[error("simple character requires KL data; supply a VermaDecomposition instead")]
    SimpleNeedsKlData,
    #[error("not a finite integer combination of Verma characters: denominator does not clear ({0})")]
    DenominatorNotCleared(String),
    #[error("character is infinite dimensional")]
    InfiniteDimensional,
    #[error("not a character: negative coefficient at {0}")]
    NegativeCoefficient(String),
}

impl Error {
    /// True for malformed-input errors, false for domain errors.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
