use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term is {0}, but (1 - f)^-1 needs f(0) = 0")]
    NonzeroConstantTerm(BigInt),

    #[error("denominator has zero constant term")]
    ZeroDenominatorConstant,

    #[error("expansion is not integral at x^{index}: {value} is not divisible by {divisor}")]
    InexactDivision {
        index: usize,
        value: BigInt,
        divisor: BigInt,
    },

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("residue {residue} is out of range for modulus {modulus}")]
    ResidueOutOfRange { modulus: usize, residue: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown weighting `{name}`; registered weightings: {known}")]
    UnknownWeighting { name: String, known: String },

    #[error("words must be nonempty")]
    EmptyWord,

    #[error("{word} is not a member of [{spec}]")]
    NotAMember { word: String, spec: String },

    #[error("{word} has no irreducible prefix with a member remainder in [{spec}]")]
    NoIrreduciblePrefix { word: String, spec: String },

    #[error("{0} is non-overlapping, so it has no double factorization")]
    NonOverlapping(String),

    #[error("weight bound {bound} is below the required minimum {needed}")]
    BoundTooSmall { bound: u64, needed: u64 },

    #[error("freeness tests disagree for [{spec}]: {detail}")]
    CriterionDisagreement { spec: String, detail: String },

    #[error("input outside the domain: {0}")]
    OutOfDomain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("`{spec}` is not closed under concatenation: {left} and {right} are members but their product is not")]
    NotClosed {
        spec: String,
        left: String,
        right: String,
    },

    #[error("unknown identity `{id}`; registered identities: {known}")]
    UnknownIdentity { id: String, known: String },

    #[error("identity `{id}` holds only from n = {valid_from}, but order {order} was requested")]
    BelowValidity {
        id: String,
        order: usize,
        valid_from: usize,
    },

    #[error("unknown oracle sequence `{name}`; registered: {known}")]
    UnknownOracle { name: String, known: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
