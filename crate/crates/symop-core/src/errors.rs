//! Error type shared by the whole engine.

use std::fmt;

/// Failure modes of engine operations.
///
/// `TheoremViolation` is special: it flags an instance where a conclusion
/// that is proved in general failed to verify, which indicates a defect in
/// the engine itself rather than in the input. Callers surface it with a
/// dedicated exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    /// Mixing `vect` and `chain` objects in one operation.
    VariantMismatch,
    /// Matrix or degree-range shapes are inconsistent.
    ShapeMismatch(String),
    /// A morphism fails the chain-map identity.
    NotChainMap(String),
    /// A validator rejected its input; the message names the failing cell.
    ValidationFailed(String),
    /// Group generator matrices fail a Coxeter relation.
    CoxeterFailed(String),
    /// A circle-type product over a non-reduced right factor was requested
    /// without acknowledging truncation.
    NonReducedWithoutFlag(String),
    /// A map failed to descend through a quotient or factor through a
    /// subspace that it provably should; indicates inconsistent input data.
    DescentFailed(String),
    /// An exact certificate (universal property, comparison isomorphism)
    /// failed to verify.
    CertificateFailed(String),
    /// Two modules were combined over different operads.
    OperadMismatch,
    /// Malformed or unresolvable input data.
    InputError(String),
    /// A conclusion proved in general failed on a concrete instance;
    /// engine defect.
    TheoremViolation(String),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::VariantMismatch => write!(f, "base variant mismatch (vect vs chain)"),
            EngineError::ShapeMismatch(m) => write!(f, "shape mismatch: {m}"),
            EngineError::NotChainMap(m) => write!(f, "not a chain map: {m}"),
            EngineError::ValidationFailed(m) => write!(f, "validation failed: {m}"),
            EngineError::CoxeterFailed(m) => write!(f, "Coxeter relation failed: {m}"),
            EngineError::NonReducedWithoutFlag(m) => {
                write!(f, "non-reduced input requires explicit truncation acknowledgment: {m}")
            }
            EngineError::DescentFailed(m) => write!(f, "map does not descend: {m}"),
            EngineError::CertificateFailed(m) => write!(f, "certificate failed: {m}"),
            EngineError::OperadMismatch => write!(f, "operad mismatch between modules"),
            EngineError::InputError(m) => write!(f, "input error: {m}"),
            EngineError::TheoremViolation(m) => write!(f, "ENGINE DEFECT, theorem violated on instance: {m}"),
        }
    }
}

impl std::error::Error for EngineError {}

pub type Result<T> = std::result::Result<T, EngineError>;
