use thiserror::Error;

/// Errors raised by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("operation not supported over field {0}")]
    FieldUnsupported(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("division by zero")]
    DivisionByZero,

    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NonAssociativeTable(usize, usize, usize),
    #[error("declared unit fails the unit law: {0}")]
    BadUnit(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("algebra is infinite-dimensional")]
    InfiniteDimensional,
    #[error("operation requires a commutative algebra")]
    Noncommutative,
    #[error("operation requires characteristic zero")]
    CharPUnsupported,
    #[error("invalid algebra descriptor: {0}")]
    BadDescriptor(String),

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("derivation does not preserve the ideal: generator {generator} maps to {image}")]
    IdealNotPreserved { generator: String, image: String },
    #[error("Leibniz rule fails on basis pair ({0}, {1})")]
    LeibnizViolation(usize, usize),
    #[error("derivation does not annihilate the unit")]
    UnitNotKilled,
    #[error("derivation tuple does not commute")]
    NonCommutingTuple,
    #[error("P(grad u) needs a commutative algebra")]
    NoncommutativeEvaluation,
    #[error("arity mismatch: polynomial has {expected} variables, tuple has {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("roots do not factor the polynomial: {0}")]
    RootFactorizationMismatch(String),
    #[error("characteristic polynomial does not split; remaining factor {0}")]
    CharPolyDoesNotSplit(String),
    #[error("point is not in the set")]
    PointNotInSet,
    #[error("no extremal element found (internal error)")]
    NoExtremalFound,
    #[error("algebra is not reduced")]
    NotReduced,

    #[error("schema error: {0}")]
    Schema(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
