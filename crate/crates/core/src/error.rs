use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the coefficient prime must differ from the group prime {0}")]
    SamePrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus {0}^{1} does not fit the residue representation")]
    ModulusTooLarge(u64, u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("divisor is not monic")]
    NotMonic,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation needs a field modulus, got {0}^{1}")]
    NotAField(u64, u32),
    #[error("{0} is not a unit")]
    NotUnit(u64),
    #[error("factors are not pairwise coprime")]
    NotCoprime,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("generator matrix does not satisfy sigma^{order} = I")]
    BadOrder { order: u64 },
    #[error("generator matrix is not invertible")]
    NotInvertible,
    #[error("subgroup is not stable under the group action")]
    NotStable,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("subset is not stable under the generator: {0:?} is mapped outside it")]
    NotGStable(String),
    #[error("object of size {size} exceeds the enumeration bound {bound}")]
    SizeBound { size: String, bound: u64 },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
