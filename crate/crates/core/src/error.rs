use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("images do not form a permutation of {0} points")]
    NotAPermutation(usize),

    #[error("permutation degree {got} does not match group degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("group of order {order} exceeds the element bound {bound}")]
    TooLarge { order: u128, bound: usize },

    #[error("group order overflows 128 bits")]
    OrderOverflow,

    #[error("element is not a member of the group")]
    NotMember,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("no Dixon prime below {0}")]
    NoDixonPrime(u64),

    #[error("eigenspace splitting failed: {0}")]
    SplitFailed(String),

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("class function is not irreducible")]
    NotIrreducible,

    #[error("subgroup is not central")]
    NotCentral,

    #[error("generator correspondence does not define an isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("word search through a quotient of order {0} exceeds the bound")]
    WordSearchExhausted(usize),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("validation of `{name}` failed: {msg}")]
    Validation { name: String, msg: String },

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
