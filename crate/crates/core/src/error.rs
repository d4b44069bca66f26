use thiserror::Error;

use crate::cover::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation images: {0}")]
    InvalidPermutation(String),

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("permutation is not semiregular (cycle lengths differ)")]
    NotSemiregular,

    #[error("permutation does not preserve the block system")]
    BlocksNotPreserved,

    #[error("canonicalization supports degree at most {max}, got {degree}")]
    DegreeTooLargeForCanonicalization { degree: usize, max: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),

    #[error("no image given for generator `{0}`")]
    MissingGenerator(String),

    #[error("cannot parse word `{input}`: {reason}")]
    WordSyntax { input: String, reason: String },

    #[error(
        "exhaustive search over about {estimate:.3e} assignments exceeds the limit {limit:.0e}"
    )]
    SearchSpaceTooLarge { estimate: f64, limit: f64 },

    #[error("integer overflow while reducing the relation matrix")]
    Overflow,

    #[error("invalid singularity type: {0}")]
    InvalidType(String),

    #[error("malformed resolution graph: {0}")]
    MalformedGraph(String),

    #[error("type A0 has no exceptional curve")]
    NoExceptionalCurve,

    #[error("image of the distinguished element is not central")]
    CentralityViolated,

    #[error("cover fails validation: {0}")]
    InvalidCover(ValidationReport),

    #[error("exceptional curve cover has genus {genus}, not rational")]
    NonZeroGenus { genus: usize },

    #[error(
        "triple is not in Bel3: some permutation of (sigma0, sigma1, sigma_inf) is the identity"
    )]
    NotBel3,

    #[error("triple has genus {genus}, expected 0")]
    NotGenusZero { genus: usize },

    #[error("permutations do not generate a transitive group")]
    NotTransitive,
}
