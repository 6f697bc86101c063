use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid denominator: zero")]
    InvalidDenominator,
    #[error("order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("quadratic form is not well defined: {0}")]
    NotWellDefined(String),
    #[error("unknown constructor {0:?}")]
    UnknownConstructor(String),
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("operation requires a non-degenerate form")]
    Degenerate,
    #[error("pre-metric group is not reductive")]
    NotReductive,
    #[error("reductive 2-group fits none of the three cases: {0}")]
    NoReductiveCase(String),
    #[error("group order {0} is not a power of two")]
    NotTwoGroup(u64),
    #[error("group order {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("form is not anisotropic")]
    NotAnisotropic,
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("cocycle identity fails at ({0}, {1}, {2}, {3})")]
    CocycleIdentity(usize, usize, usize, usize),
    #[error("cochain is not normalized")]
    NotNormalized,
    #[error("restriction of the 3-cocycle to N is not cohomologically trivial")]
    RestrictionNontrivial,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
