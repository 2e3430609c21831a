use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unknown point `{point}` in the space over `{object}`")]
    UnknownPoint { object: String, point: String },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("identity morphism `{0}` must be an endomorphism of its object")]
    InvalidIdentity(String),
    #[error("`{0}` and `{1}` are not composable")]
    NotComposable(String, String),
    #[error("`{morphism}` is not an endomorphism of `{object}`")]
    NotEndomorphism { morphism: String, object: String },
    #[error("the underlying category is not a groupoid")]
    NotGroupoid,
    #[error("element lives over `{found}`, expected `{expected}`")]
    WrongObject { expected: String, found: String },
    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),
    #[error("operands belong to different skew category algebras")]
    ContextMismatch,
    #[error("local units are only defined for nonzero elements")]
    ZeroElement,
    #[error("partial system is not closed: {0}")]
    NotClosed(String),
    #[error("product exceeds the truncation degree {bound}")]
    TruncationExceeded { bound: usize },
    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("operation requires a finite field, got {0}")]
    NonFiniteField(String),
    #[error("operation requires field scalars, got {0}")]
    NonField(String),
    #[error("operation is not available for formal coefficients")]
    FormalContext,
    #[error("operation requires the full function ring")]
    NotFullRing,
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("independent computations disagree: {0}")]
    OracleMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
