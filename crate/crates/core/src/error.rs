use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid forest: need 1 <= c <= n, got n={n}, c={c}")]
    InvalidForest { n: usize, c: usize },
    #[error("invalid cycle: need n >= 2, got n={0}")]
    InvalidCycle(usize),
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("coefficient of x^{index} is nonzero, cannot divide by x^{power}")]
    NotDivisibleByXPower { index: usize, power: usize },
    #[error("inclusion-exclusion sum for k={k} is not divisible by k!")]
    InexactFactorialDivision { k: usize },
    #[error("polynomial is not real-rooted: {real} real roots for degree {degree}")]
    NotRealRooted { real: usize, degree: usize },
    #[error("polynomial has a negative coefficient at x^{0}")]
    NegativeCoefficient(usize),
    #[error("graph on {vertices} vertices exceeds the enumeration limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("partition count vector has zero total")]
    ZeroTotal,
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
