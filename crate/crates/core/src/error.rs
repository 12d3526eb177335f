use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("letter 0 is not a valid generator reference")]
    ZeroLetter,
    #[error("generator {generator} is outside an alphabet of rank {rank}")]
    GeneratorOutOfRange { generator: u32, rank: u32 },
    #[error("alphabet rank must be at least 1")]
    EmptyAlphabet,
    #[error("invalid length range [{lo}, {hi}]")]
    InvalidLengthRange { lo: i64, hi: i64 },
    #[error("tuple component {0} is the identity word")]
    IdentityComponent(usize),
    #[error("lambda must lie strictly between 0 and 1/2, got {0}")]
    InvalidLambda(f64),
    #[error("word is not an element of the subgroup")]
    NotMember,
    #[error("words are not conjugate")]
    NotConjugate,
    #[error("operation is undefined on the identity element")]
    IdentityInput,
    #[error("commutation graph is complete; the group is abelian")]
    GraphComplete,
    #[error("vertex {vertex} is outside a graph on {count} vertices")]
    VertexOutOfRange { vertex: u32, count: u32 },
    #[error("commutation graph has a loop at vertex {0}")]
    GraphLoop(u32),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subgroup expression refers to generator {index} of a {size}-tuple")]
    ExpressionOutOfRange { index: u32, size: usize },
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("unknown attack `{0}`")]
    UnknownAttack(String),
    #[error("operation requires a free-group platform")]
    NotFreePlatform,
    #[error("operation requires a right-angled Artin group platform")]
    NotRaagPlatform,
    #[error("conjugacy system has no equations")]
    EmptySystem,
}
