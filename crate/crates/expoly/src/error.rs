use thiserror::Error;

/// Byte range into a parsed input string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("function is not transcendental (every exponent is zero)")]
    NotTranscendental,
    #[error("antiderivative requires order <= 1, found exponent of degree {0}")]
    OrderTooHigh(usize),
    #[error("operands have different orders: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("exponential polynomial is not simple")]
    NotSimple,
    #[error("the given function is not a solution of the equation")]
    NotASolution,
    #[error("constant term F0 must be a nonzero constant")]
    ConstantTermMissing,
    #[error("coefficient exponent is not on the w-lattice: {0}")]
    LatticeViolation(String),
    #[error("coefficient multiplier is not a plain polynomial: {0}")]
    MultiplierNotPolynomial(String),
    #[error("symbolic result contradicts the numeric spot check: {0}")]
    InternalInconsistency(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("syntax error at {start}..{end}: {message}", start = span.start, end = span.end)]
    Syntax { span: SourceSpan, message: String },
    #[error("sqrt({found}) does not match the context radicand {expected}")]
    RadicandMismatch { found: u64, expected: u64 },
    #[error("corpus format error: {0}")]
    CorpusFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
