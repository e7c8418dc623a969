use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^16")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("no element of order {order} in F_{p}")]
    NoSuchRoot { order: u64, p: u32 },
    #[error("dense matrix of {entries} entries exceeds the budget of {limit}")]
    BudgetExceeded { entries: u128, limit: u128 },
    #[error("consecutive maps do not compose to zero at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("assignment does not extend to a character: {0}")]
    NotAHomomorphism(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("characteristic {p} divides the group order {order}")]
    CharacteristicDividesGroupOrder { p: u32, order: usize },
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("structure check failed: {0}")]
    InvalidStructure(String),
    #[error("group action does not commute with the differential at degree {degree}")]
    ActionNotChainMap { degree: usize },
    #[error("cochain of degree {degree} is not a cocycle")]
    NotACocycle { degree: usize },
    #[error("g1 (element {0}) is not central")]
    G1NotCentral(usize),
    #[error("chi(g1) = {value} is not a primitive {n}-th root of unity")]
    NotPrimitiveRoot { value: u32, n: usize },
    #[error("bad characteristic: {0}")]
    BadCharacteristic(String),
    #[error("chain map check failed: {0}")]
    ChainMapCheckFailed(String),
    #[error("degree {degree} outside the computed range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("ring presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error("isomorphism check failed: {0}")]
    IsoCheckFailed(String),
}
