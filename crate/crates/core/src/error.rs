use thiserror::Error;

/// Errors raised by the exact-arithmetic layers and the curve/Brauer calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("zero element has no discrete logarithm")]
    ZeroElement,
    #[error("no primitive {d}-th roots of unity in a field with {q} elements")]
    NoRootsOfUnity { d: u64, q: u128 },
    #[error("resultant of two zero polynomials is undefined")]
    Undefined,
    #[error("enumeration needs {required} steps but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is singular on the curve")]
    SingularPoint,
    #[error("curves share a common component")]
    NotProper,
    #[error("divisor does not sum to the origin")]
    NotPrincipal,
    #[error("divisor has nonzero degree {0}")]
    DegreeNonzero(i64),
    #[error("root of unity is not primitive of order {0}")]
    BadRoot(u64),
    #[error("residue cannot be computed: {0}")]
    Indeterminate(String),
    #[error("Artin-Schreier pole order {0} is divisible by the characteristic")]
    NotReduced(i64),
    #[error("{n} is divisible by the residue characteristic {p}")]
    TameOnly { p: u64, n: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("bad element: {0}")]
    BadElement(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("local invariants do not sum to zero: {0}")]
    ReciprocityViolation(String),
    #[error("no split triple of closed points found with degree <= {0}")]
    SearchExhausted(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
