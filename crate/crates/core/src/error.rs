use thiserror::Error;

/// Every failure the toolkit reports. Variant names double as the error
/// kind printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("exponent {exp} exceeds the cap of {cap}")]
    ExponentOverflow { exp: u64, cap: u32 },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("arity {arity} exceeds the cap of {cap}")]
    ArityCapExceeded { arity: usize, cap: usize },
    #[error("{vars} variables exceed the cap of {cap}")]
    VariableCapExceeded { vars: usize, cap: usize },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("bad arity {0}")]
    BadArity(usize),
    #[error("exhaustive enumeration refused: {0}")]
    TooLargeForExhaustive(String),
    #[error("variable x{0} does not occur in the polynomial")]
    DegenerateVariable(usize),
    #[error("the zero polynomial cannot be lowered")]
    ZeroPolynomial,
    #[error("the base tuple is not a solution of the source equation")]
    NotASolution,
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("no variable of the lowered system witnesses x{var}^{degree}")]
    NoPowerWitness { var: usize, degree: u32 },
    #[error("the root of the bound is not an exact tower value: {0}")]
    NotExact(String),
    #[error("{0} is not a sum of three integer squares")]
    NotRepresentable(u64),
    #[error("{0} is not in the code class")]
    NotInClass(u64),
    #[error("tuple code overflows 64 bits")]
    EncodingOverflow,
    #[error("tuple is the last one in co-lexicographic order")]
    LastTuple,
    #[error("the system does not encode the equation: {0}")]
    SystemMismatch(String),
    #[error("bound is not materializable: {0}")]
    BoundNotMaterializable(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable name of the error kind, e.g. `NotRepresentable`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "ZeroDenominator",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::ExponentOverflow { .. } => "ExponentOverflow",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::ArityCapExceeded { .. } => "ArityCapExceeded",
            Error::VariableCapExceeded { .. } => "VariableCapExceeded",
            Error::CapExceeded(_) => "CapExceeded",
            Error::BadArity(_) => "BadArity",
            Error::TooLargeForExhaustive(_) => "TooLargeForExhaustive",
            Error::DegenerateVariable(_) => "DegenerateVariable",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NotASolution => "NotASolution",
            Error::DomainViolation(_) => "DomainViolation",
            Error::NoPowerWitness { .. } => "NoPowerWitness",
            Error::NotExact(_) => "NotExact",
            Error::NotRepresentable(_) => "NotRepresentable",
            Error::NotInClass(_) => "NotInClass",
            Error::EncodingOverflow => "EncodingOverflow",
            Error::LastTuple => "LastTuple",
            Error::SystemMismatch(_) => "SystemMismatch",
            Error::BoundNotMaterializable(_) => "BoundNotMaterializable",
            Error::Invalid(_) => "Invalid",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
