use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element does not belong to this group: {0}")]
    MismatchedGroup(String),
    #[error("not a quadratic form: {0}")]
    NotAQuadraticForm(String),
    #[error("bicharacter has radical of order {0}; expected type I or II")]
    NotTypeIorII(usize),
    #[error("inconsistent extension: {0}")]
    InconsistentExtension(String),
    #[error("not a nice map: {0}")]
    NotANiceMap(String),
    #[error("the two forms are equal")]
    FormsEqual,
    #[error("the two forms have different polarizations")]
    DifferentPolarizations,
    #[error("domain too large: {0} elements")]
    DomainTooLarge(usize),
    #[error("invalid bicharacter: {0}")]
    InvalidBicharacter(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("grading check failed: {0}")]
    GradingViolation(String),
    #[error("ambient embedding is not injective")]
    AmbientEmbeddingNotInjective,
    #[error("unknown algebra structure: {0}")]
    UnknownStructure(String),
    #[error("polarization mismatch: {0}")]
    PolarizationMismatch(String),
    #[error("not an involution: {0}")]
    NotAnInvolution(String),
    #[error("not an involution after twist: {0}")]
    NotAnInvolutionAfterTwist(String),
    #[error("wrong component dimension: {0}")]
    WrongComponentDimension(String),
    #[error("incompatible tensor: {0}")]
    IncompatibleTensor(String),
    #[error("signature mismatch: structural {structural}, numeric {numeric}")]
    SignatureMismatch { structural: i64, numeric: i64 },
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("second kind involution impossible: {0}")]
    SecondKindImpossible(String),
    #[error("not applicable to this family: {0}")]
    NotApplicableFamily(String),
    #[error("not distinguished: {0}")]
    NotDistinguished(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
