use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field with {size} elements exceeds the table cap of {cap} elements")]
    FieldTooLarge { size: u128, cap: u64 },

    #[error("invalid divisibility: {0}")]
    InvalidDivisibility(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("degree {to} does not divide {from} (or {from} does not divide the tower degree {m})")]
    DegreeNotDividing { from: u32, to: u32, m: u32 },

    #[error("element does not lie in the subfield of degree {degree}")]
    NotInSubfield { degree: u32 },

    #[error("multiplicative character evaluated at zero")]
    ZeroArgument,

    #[error("no j with {p}^j = -1 (mod {order}), or field size is not p^(2j*gamma)")]
    NotSemiprimitive { order: u64, p: u64 },

    #[error("character order 2 is excluded from the semi-primitive closed form")]
    OrderTwo,

    #[error("quadratic Gauss sum closed form requires odd characteristic")]
    EvenCharacteristic,

    #[error("argument b must be nonzero")]
    ZeroB,

    #[error("sum {re} + {im}i is not integral within tolerance")]
    NotIntegral { re: f64, im: f64 },

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    #[error("defining set is empty (a = 0 requires m2 > 1)")]
    EmptyDefiningSet,

    #[error("defining set is already shortened")]
    AlreadyShortened,

    #[error("argument does not lie in F_(q^m1)")]
    WrongSubfield,

    #[error("hypothesis mismatch: {0}")]
    HypothesisMismatch(String),

    #[error("degenerate case: {0}")]
    DegenerateCase(String),

    #[error("power-moment system has no nonnegative integral solution: {0}")]
    NonIntegralSolution(String),

    #[error("mu is not integral: {0}")]
    NonIntegralMu(String),

    #[error("code is not projective: {0}")]
    NotProjective(String),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
}
