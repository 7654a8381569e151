use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u32),
    #[error("no shipped modulus for F_{p}^{k}; extensions are limited to p <= 3, k <= 4")]
    Unsupported { p: u32, k: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("ground field mismatch")]
    FieldMismatch,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exponent {0} is too large for a non-monomial base")]
    ExponentTooLarge(String),
    #[error("substitution is missing an image for variable {0}")]
    MissingImage(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("irrational enclosure exhausted after {digits} digits")]
    PrecisionExhausted { digits: u32 },
    #[error("element does not belong to the group: {0}")]
    NotInGroup(String),
    #[error("group is not p-divisible")]
    NotPDivisible,
    #[error("element is not positive")]
    NotPositive,
    #[error("unknown irrational `{0}`")]
    UnknownIrrational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("valuation of zero is undefined")]
    ZeroInput,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element has nonzero value {0}; residue needs value 0")]
    NonzeroValue(String),
    #[error("residue quotient is not expressible in the residue generators")]
    NotExpressible,
    #[error("descriptor is not monomialized: {0}")]
    NotMonomialized(String),
    #[error("operation needs integer weight coordinates (finitely generated value group)")]
    NonIntegerWeights,
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("perfection level {requested} exceeds the cap {cap}")]
    LevelCap { requested: u32, cap: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("precision exhausted: all coefficients below {cap} vanish")]
    PrecisionExhausted { cap: usize },
    #[error("precision exhausted: no certified term below exponent bound {bound}")]
    HahnBoundExhausted { bound: String },
    #[error("value of zero is undefined")]
    ZeroInput,
    #[error("embedding needs exactly the variables X, Y (got {0})")]
    BadArity(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("element lies outside the valuation ring (value {0} < 0)")]
    OutsideRing(String),
    #[error("splitting needs a polynomial input")]
    NotPolynomial,
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error("basis has {got} elements, expected [K:K^(p^e)] = {expected}")]
    BasisSize { got: usize, expected: String },
    #[error("basis does not span K over K^(p^e): {0}")]
    NotSpanning(String),
    #[error("claim check failed on {input}: {detail}")]
    ClaimFailed { input: String, detail: String },
    #[error("iteration count must be at least 1")]
    ZeroIteration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("ramification-residue bound violated: {lhs} > {rhs}")]
    InequalityViolated { lhs: String, rhs: String },
    #[error("residue fields are incomparable: {0}")]
    IncomparableResidueFields(String),
    #[error("inconsistent descriptor: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Split(#[from] SplitError),
}
