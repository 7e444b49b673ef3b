use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix rows have different lengths")]
    RaggedMatrix,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate (determinant zero)")]
    DegenerateForm,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("direct sum of an empty list")]
    EmptyList,
    #[error("quadratic values requested on the discriminant of an odd lattice")]
    OddLatticeQuadratic,
    #[error("finite form is not 2-elementary")]
    NotTwoElementary,
    #[error("finite group of order {size} exceeds the search limit {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("graph of the gluing map is not isotropic")]
    NotIsotropicGraph,
    #[error("orthogonal complement carries a degenerate form")]
    DegenerateComplement,
    #[error("signature subtraction goes negative: host {host:?}, sub {sub:?}")]
    InfeasibleSignature {
        host: (usize, usize),
        sub: (usize, usize),
    },
    #[error("sublattices are not orthogonal complements of full total rank")]
    NotComplementary,
    #[error("isometry has infinite order (cap {0})")]
    InfiniteOrder(u32),
    #[error("matrix does not preserve the gram matrix")]
    NotAnIsometry,
    #[error("action on the discriminant group is neither id nor -id")]
    NontrivialDiscAction,
    #[error("lattice is indefinite")]
    IndefiniteLattice,
    #[error("rank {rank} exceeds the cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },
    #[error("input not in scope: {0}")]
    NotInScope(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("integer overflow in fixed-width enumeration")]
    Overflow,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
