use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least 1 (got {0})")]
    GenusZero(u32),
    #[error("genus {genus} exceeds the configured maximum {max}")]
    GenusTooLarge { genus: u32, max: u32 },
    #[error("incompatible generator alphabets: {0}")]
    IncompatibleAlphabet(String),
    #[error("polynomial has nonzero constant term; exponential undefined")]
    NonzeroConstantTerm,
    #[error("polynomial constant term must be 1 for the logarithm")]
    ConstantTermNotOne,
    #[error("series with unbounded truncation cannot be summed")]
    Unbounded,
    #[error("unknown series name `{0}`")]
    UnknownSeries(String),
    #[error("power sum p_{index} is not homogeneous of degree {index}")]
    InhomogeneousPowerSum { index: usize },
    #[error("polynomial is not symmetric in the root variables")]
    NotSymmetric,
    #[error("expected a homogeneous polynomial of degree {expected}")]
    WrongDegree { expected: u32 },
    #[error("nonzero remainder in exact division: {0}")]
    NonzeroRemainder(String),
    #[error("square-free monomials fail to form a basis in degree {degree}: {reason}")]
    BasisSelection { degree: u32, reason: String },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("constant term must be invertible")]
    NotInvertible,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
