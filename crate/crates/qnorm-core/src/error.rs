use thiserror::Error;

/// Errors produced by the library.
///
/// Diagnostic variants carry display-ready words (dotted letter names) so
/// they can be reported without access to the originating alphabet.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter `{0}` in alphabet")]
    DuplicateLetter(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("alphabet has no neutral letter")]
    NoNeutral,
    #[error("declared neutral `{0}` fails the neutrality equations")]
    NeutralNotVerified(String),
    #[error("position {pos} out of range for word of length {len}")]
    OutOfRange { pos: usize, len: usize },
    #[error("factor [{start}, {start}+{len}) out of range for word of length {word_len}")]
    FactorOutOfRange {
        start: usize,
        len: usize,
        word_len: usize,
    },
    #[error("the map is not idempotent on length-two words (witness {witness})")]
    NotIdempotent { witness: String },
    #[error("delta strategy requires the class-(4,3) axioms, which this map fails")]
    AxiomsNotSatisfied,
    #[error("system is not normalising: no normal word is reachable from {witness} (cycle {})", cycle.join(" -> "))]
    NotNormalising { witness: String, cycle: Vec<String> },
    #[error("rewriting from {witness} reaches distinct normal words {first} and {second}")]
    NotConfluent {
        witness: String,
        first: String,
        second: String,
    },
    #[error("{strategy} strategy entered a cycle on {witness}")]
    StrategyCycle { strategy: String, witness: String },
    #[error("step budget {budget} exceeded while normalising {witness}")]
    BudgetExceeded { budget: usize, witness: String },
    #[error("word contains the neutral letter where an e-free word is required: {0}")]
    NotEFree(String),
    #[error("fragment integrity: {0}")]
    FragmentIntegrity(String),
    #[error("precondition not verified: {0}")]
    PreconditionFailed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
