use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a series needs at least one coefficient")]
    EmptySeries,
    #[error("divisor has zero constant term")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("series is not invertible under composition (needs g(0) = 0 and g'(0) != 0)")]
    NotInvertible,
    #[error("rational power needs a base with constant term 1")]
    NonUnitConstant,
    #[error("need truncation order {needed}, have {available}")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("moment sequence must start with m0 = 1")]
    InvalidMoments,
    #[error("non-crossing oracle is capped at n = {cap}, asked for n = {n}")]
    OracleCapExceeded { n: usize, cap: usize },
    #[error("dilation factor must be nonzero")]
    ZeroDilation,
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("S-transform needs a nonzero first moment")]
    ZeroMean,
    #[error("S-transform needs a nonzero constant term")]
    ZeroSTransform,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(&'static str),
    #[error("moment sequence is not centered (m1 != 0)")]
    NotCentered,
    #[error("moment sequence does not have unit variance (m2 != 1)")]
    NotUnitVariance,
    #[error("moment sequence has non-positive variance")]
    NonPositiveVariance,
    #[error("variance function must satisfy V(0) != 0")]
    ZeroVarianceAtOrigin,
    #[error("variance function must satisfy V(0) = 1")]
    NotNormalized,
    #[error("operation needs a second variance function")]
    MissingOperand,
    #[error("variance function from an S-transform needs S(0) = 1")]
    NonUnitS0,
    #[error("sequence too short: need index {needed}, have {available} terms")]
    InsufficientSequence { needed: usize, available: usize },
    #[error("not a moment sequence: norm of degree-{degree} polynomial is negative")]
    NotAMomentSequence { degree: usize },
    #[error("recursion needs a nonzero leading coefficient a0")]
    ZeroLeadCoefficient,
    #[error("need moments through order {needed}, have {available}")]
    InsufficientMoments { needed: usize, available: usize },
    #[error("generating pair is inconsistent: {0}")]
    InconsistentPair(&'static str),
    #[error("closed form disagrees with recurrence at n = {n}")]
    ClosedFormMismatch { n: usize },
    #[error("identity check failed: {0}")]
    IdentityFailed(&'static str),
}
