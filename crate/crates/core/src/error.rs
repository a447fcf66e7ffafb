//! Error type shared by all ring operations.

use std::fmt;

/// Errors raised by ring, spectrum, matrix and module operations.
///
/// Domain negatives (an element is not clean, an ideal is not principal)
/// are errors here rather than booleans because they carry evidence and
/// map onto distinct process exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    /// Malformed ring spec or element literal.
    Syntax(String),
    /// Structurally valid text describing an invalid ring (n < 2, composite
    /// characteristic where a prime is required, non-monic modulus).
    InvalidSpec(String),
    /// The operation would enumerate an infinite ring.
    InfiniteEnumeration(String),
    /// The ring is finite but larger than the configured enumeration cap.
    EnumerationCapExceeded { order: u64, cap: u64 },
    /// Exhaustive search found no (unit, idempotent) decomposition.
    NotClean { element: String, idempotents_tried: u64 },
    /// A finitely generated ideal with no principal generator.
    NotPrincipal { a: String, b: String },
    /// gh_condition input triple does not generate the unit ideal.
    NotUnimodular(String),
    /// A witness required by a theorem was not found by exhaustive search.
    /// On a clean arithmetic ring this falsifies the theorem; report it.
    WitnessNotFound(String),
    /// Diagonal reduction hit an irreducible submatrix (non-EDR ring).
    DiagonalizationFailed { submatrix: String },
    /// Operation requires a local ring (single primitive idempotent).
    NotLocal { primitive_idempotents: u64 },
    /// The Gelfand retraction is undefined for this ring.
    NotGelfand(String),
    /// The handle passed to mu is not a prime ideal of the ring.
    NotPrime(String),
    /// lemma33 preconditions (Ra ∩ Rb = 0, Pa = Pb = 0) failed.
    HypothesisViolated(String),
    /// Endomorphism solution space exceeds the configured dimension cap.
    DimensionCapExceeded { dimension: u64, cap: u64 },
    /// Idempotent search space too large for the exhaustive mode.
    SearchCapExceeded { span: u64, cap: u64 },
    /// Matrix dimensions exceed the reduction cap.
    MatrixTooLarge { rows: usize, cols: usize, cap: usize },
    /// Unknown verification suite id.
    UnknownSuite(String),
    /// The ring kind does not support this operation.
    Unsupported(String),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::Syntax(m) => write!(f, "syntax error: {m}"),
            RingError::InvalidSpec(m) => write!(f, "invalid ring spec: {m}"),
            RingError::InfiniteEnumeration(m) => {
                write!(f, "infinite enumeration: {m}")
            }
            RingError::EnumerationCapExceeded { order, cap } => {
                write!(f, "enumeration cap exceeded: order {order} > cap {cap}")
            }
            RingError::NotClean { element, idempotents_tried } => write!(
                f,
                "NotClean: {element} admits no unit+idempotent decomposition \
                 ({idempotents_tried} idempotents tried)"
            ),
            RingError::NotPrincipal { a, b } => {
                write!(f, "NotPrincipal: ideal ({a}, {b}) has no single generator")
            }
            RingError::NotUnimodular(m) => write!(f, "NotUnimodular: {m}"),
            RingError::WitnessNotFound(m) => write!(f, "WitnessNotFound: {m}"),
            RingError::DiagonalizationFailed { submatrix } => {
                write!(f, "DiagonalizationFailed: irreducible submatrix {submatrix}")
            }
            RingError::NotLocal { primitive_idempotents } => write!(
                f,
                "NotLocal: ring has {primitive_idempotents} primitive idempotents"
            ),
            RingError::NotGelfand(m) => write!(f, "NotGelfand: {m}"),
            RingError::NotPrime(m) => write!(f, "NotPrime: {m}"),
            RingError::HypothesisViolated(m) => write!(f, "HypothesisViolated: {m}"),
            RingError::DimensionCapExceeded { dimension, cap } => {
                write!(f, "dimension cap exceeded: {dimension} > {cap}")
            }
            RingError::SearchCapExceeded { span, cap } => {
                write!(f, "search cap exceeded: span {span} > {cap}")
            }
            RingError::MatrixTooLarge { rows, cols, cap } => {
                write!(f, "matrix {rows}x{cols} exceeds the {cap}x{cap} cap")
            }
            RingError::UnknownSuite(m) => write!(f, "unknown suite: {m}"),
            RingError::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl std::error::Error for RingError {}

pub type Result<T> = std::result::Result<T, RingError>;
